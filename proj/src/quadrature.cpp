#include "bh/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <map>

namespace bh {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0)) throw UsageError("quadrature tolerances must be positive");
    if (max_subdivisions <= 0) throw UsageError("max_subdivisions must be positive");
    if (!(truncation_radius > 0) || !std::isfinite(truncation_radius))
        throw UsageError("truncation_radius must be positive and finite");
}

namespace {

// Boost stores the non-negative half; mirror it.
template <class A, class W>
void mirror(const A& abscissa, const W& weights, std::vector<double>& x, std::vector<double>& w) {
    x.clear();
    w.clear();
    for (std::size_t i = abscissa.size(); i-- > 0;) {
        if (abscissa[i] == 0) continue;
        x.push_back(-abscissa[i]);
        w.push_back(weights[i]);
    }
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        x.push_back(abscissa[i]);
        w.push_back(weights[i]);
    }
}

GKTable make_gk21() {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    GKTable t;
    mirror(gauss_kronrod<double, 21>::abscissa(), gauss_kronrod<double, 21>::weights(), t.x, t.wk);
    std::vector<double> gx, gw;
    mirror(gauss<double, 10>::abscissa(), gauss<double, 10>::weights(), gx, gw);
    t.wg.assign(t.x.size(), 0.0);
    for (std::size_t j = 0; j < gx.size(); ++j)
        for (std::size_t i = 0; i < t.x.size(); ++i)
            if (std::fabs(t.x[i] - gx[j]) < 1e-14) t.wg[i] = gw[j];
    return t;
}

template <unsigned N>
NodeTable make_gl() {
    using boost::math::quadrature::gauss;
    NodeTable t;
    mirror(gauss<double, N>::abscissa(), gauss<double, N>::weights(), t.x, t.w);
    return t;
}

}  // namespace

const GKTable& gk21() {
    static const GKTable t = make_gk21();
    return t;
}

const NodeTable& gauss_legendre(int n) {
    static const NodeTable t4 = make_gl<4>(), t6 = make_gl<6>(), t8 = make_gl<8>(), t10 = make_gl<10>(),
                           t12 = make_gl<12>(), t16 = make_gl<16>(), t20 = make_gl<20>(), t24 = make_gl<24>(),
                           t32 = make_gl<32>();
    switch (n) {
        case 4: return t4;
        case 6: return t6;
        case 8: return t8;
        case 10: return t10;
        case 12: return t12;
        case 16: return t16;
        case 20: return t20;
        case 24: return t24;
        case 32: return t32;
        default: throw UsageError("unsupported Gauss-Legendre order " + std::to_string(n));
    }
}

std::vector<double> clean_breaks(std::vector<double> pts, double lo, double hi) {
    pts.push_back(lo);
    pts.push_back(hi);
    std::vector<double> out;
    out.reserve(pts.size());
    for (double p : pts)
        if (p >= lo && p <= hi && std::isfinite(p)) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void add_geometric_breaks(std::vector<double>& out, double c, double s, double ratio, double lo, double hi) {
    if (!(s > 0)) return;
    out.push_back(c);
    for (double d = s; d < (hi - lo); d *= ratio) {
        if (c - d > lo) out.push_back(c - d);
        if (c + d < hi) out.push_back(c + d);
        if (c - d <= lo && c + d >= hi) break;
    }
}

}  // namespace bh
