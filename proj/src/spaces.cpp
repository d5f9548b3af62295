#include "bh/spaces.hpp"

#include "bh/errors.hpp"
#include "bh/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace bh {

namespace {

// int_{x0}^{x1} |d| for d linear from d0 to d1.
double abs_linear(double h, double d0, double d1) {
    if ((d0 >= 0) == (d1 >= 0)) return 0.5 * h * std::fabs(d0 + d1);
    return 0.5 * h * (d0 * d0 + d1 * d1) / (std::fabs(d0) + std::fabs(d1));
}

// Index stride so that at most max_pairs endpoint pairs remain.
std::size_t pair_stride(std::size_t n, std::size_t max_pairs) {
    std::size_t s = 1;
    for (;;) {
        const std::size_t m = (n - 1) / s + 1 + ((n - 1) % s ? 1 : 0);
        if (m * (m - 1) / 2 <= max_pairs) return s;
        ++s;
    }
}

std::vector<std::size_t> strided(std::size_t n, std::size_t s) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; i += s) idx.push_back(i);
    if (idx.back() != n - 1) idx.push_back(n - 1);
    return idx;
}

// Exact integral of a sampled function over its support (adaptive for splines).
double total_integral(const SampledFunction& f) {
    const auto& g = f.grid();
    const auto& v = f.values();
    double s = g.front() * v.front();  // constant extension below grid[0]
    if (f.mode() == Interp::step) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double hi = i + 1 < g.size() ? g[i + 1] : f.support_bound();
            s += v[i] * std::max(0.0, std::min(hi, f.support_bound()) - g[i]);
        }
        return s;
    }
    if (f.mode() == Interp::linear) {
        for (std::size_t i = 0; i + 1 < g.size(); ++i) s += 0.5 * (g[i + 1] - g[i]) * (v[i] + v[i + 1]);
        return s;
    }
    QuadratureSpec q;
    return s + integrate_scalar([&](double y) { return f(y); }, std::vector<double>(g.begin(), g.end()), q);
}

}  // namespace

IntervalFamily uniform_family(double extent, double step) {
    if (!(extent > 0) || !(step > 0) || step > extent) throw UsageError("interval family: need 0 < step <= extent");
    IntervalFamily fam;
    fam.grid = linspace(0.0, extent, static_cast<std::size_t>(std::llround(extent / step)) + 1);
    return fam;
}

BmoParts bmo_o_parts(std::span<const double> grid, std::span<const double> values, std::size_t max_pairs) {
    if (grid.size() < 2 || grid.size() != values.size()) throw UsageError("bmo: need at least two grid points");
    if (max_pairs == 0) throw UsageError("bmo: empty candidate family");
    std::vector<double> g(grid.begin(), grid.end()), v(values.begin(), values.end());
    if (g.front() < 0) throw DomainError("bmo: grid must lie in [0, inf)");
    if (g.front() > 0) {
        g.insert(g.begin(), 0.0);
        v.insert(v.begin(), v.front());
    }
    const std::size_t n = g.size();
    for (std::size_t i = 1; i < n; ++i)
        if (!(g[i] > g[i - 1])) throw DomainError("bmo: grid must be strictly increasing");

    BmoParts r;
    // prefixes (0, g_i]
    double acc = 0;
    for (std::size_t i = 1; i < n; ++i) {
        acc += abs_linear(g[i] - g[i - 1], v[i - 1], v[i]);
        r.prefix = std::max(r.prefix, acc / g[i]);
    }
    // interval oscillation; the mean uses the cumulative trapezoid sums
    std::vector<double> P(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) P[i] = P[i - 1] + 0.5 * (g[i] - g[i - 1]) * (v[i] + v[i - 1]);
    const std::vector<std::size_t> idx = strided(n, pair_stride(n, max_pairs));
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const std::size_t i = idx[a], j = idx[b];
            const double len = g[j] - g[i];
            const double c = (P[j] - P[i]) / len;
            double s = 0;
            for (std::size_t k = i; k < j; ++k) s += abs_linear(g[k + 1] - g[k], v[k] - c, v[k + 1] - c);
            r.oscillation = std::max(r.oscillation, s / len);
        }
    return r;
}

BmoParts bmo_o_parts(const SampledFunction& f, const IntervalFamily& family) {
    if (family.grid.size() < 2) throw UsageError("bmo: empty candidate family");
    std::vector<double> v(family.grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(family.grid[i]);
    return bmo_o_parts(family.grid, v, family.max_pairs);
}

double bmo_o_norm(const SampledFunction& f, const IntervalFamily& family) { return bmo_o_parts(f, family).norm(); }

double bmo_plambda_norm(double lambda, const SampledFunction& f, const IntervalFamily& family,
                        const QuadratureSpec& q) {
    if (family.grid.size() < 2 || family.plambda_lengths == 0 || family.plambda_points < 2)
        throw UsageError("bmo_plambda: empty candidate family");
    if (f.is_zero()) return 0.0;
    const std::vector<double>& fg = family.grid;
    std::vector<double> g;
    for (std::size_t i : strided(fg.size(), (fg.size() + family.plambda_points - 3) / (family.plambda_points - 1)))
        g.push_back(fg[i]);
    std::vector<double> pos;
    for (double x : g)
        if (x > 0) pos.push_back(x);
    const std::size_t off = g.size() - pos.size();
    std::vector<double> fv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) fv[i] = f(g[i]);

    double hmin = g.back() - g.front();
    for (std::size_t i = 1; i < g.size(); ++i) hmin = std::min(hmin, g[i] - g[i - 1]);
    const double span = g.back() - g.front();
    const std::vector<double> lengths = family.plambda_lengths == 1
                                            ? std::vector<double>{span}
                                            : logspace(std::min(2 * hmin, span), span, family.plambda_lengths);
    double best = 0;
    std::vector<double> d(g.size());
    for (double L : lengths) {
        const SampledFunction u = apply_poisson(lambda, L, f, pos, q);
        for (std::size_t i = 0; i < g.size(); ++i) d[i] = fv[i] - (i < off ? 0.0 : u.values()[i - off]);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double b = g[i] + L;
            if (b > g.back() * (1 + 1e-12)) break;
            double s = 0;
            std::size_t k = i;
            for (; k + 1 < g.size() && g[k + 1] <= b; ++k) s += abs_linear(g[k + 1] - g[k], d[k], d[k + 1]);
            if (k + 1 < g.size() && b > g[k]) {
                const double db = d[k] + (d[k + 1] - d[k]) * (b - g[k]) / (g[k + 1] - g[k]);
                s += abs_linear(b - g[k], d[k], db);
            }
            best = std::max(best, s / L);
        }
    }
    return best;
}

OddExtension::OddExtension(SampledFunction f) : f_(std::move(f)) {
    const auto& g = f_.grid();
    grid_.reserve(2 * g.size() + 1);
    for (auto it = g.rbegin(); it != g.rend(); ++it) grid_.push_back(-*it);
    grid_.push_back(0.0);
    grid_.insert(grid_.end(), g.begin(), g.end());
}

double OddExtension::operator()(double x) const {
    if (x > 0) return f_(x);
    if (x < 0) return -f_(-x);
    return 0.0;
}

double OddExtension::integral(double a, double b) const {
    if (!(b > a)) return 0.0;
    std::vector<double> pts{a};
    for (double x : grid_)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    double s = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        s += 0.5 * (pts[i + 1] - pts[i]) * ((*this)(pts[i]) + (*this)(pts[i + 1]));
    return s;
}

OddExtension odd_extension(const SampledFunction& f) { return OddExtension(f); }

void OddAtom::validate() const {
    if (!(b > a) || a < 0) throw DomainError("odd atom: bad interval");
    const double len = b - a;
    double sup = 0;
    for (double v : payload.values()) sup = std::max(sup, std::fabs(v));
    if (payload.tail()) throw DomainError("odd atom: payload has a tail");
    if (payload.end() > b * (1 + 1e-12) || (payload.mode() != Interp::step && payload.support_bound() > b * (1 + 1e-12)))
        throw DomainError("odd atom: payload leaves the interval");
    if (kind == AtomKind::step) {
        if (a != 0) throw DomainError("odd atom: step atoms live on (0, delta)");
        if (std::fabs(payload(0.5 * b) * b - 1) > 1e-12 || sup * b > 1 + 1e-12)
            throw DomainError("odd atom: step payload must be (1/delta) chi_(0,delta)");
        return;
    }
    if (a > 0 && payload.grid().front() < a && payload.values().front() != 0)
        throw DomainError("odd atom: payload leaves the interval");
    if (sup * len > 1 + 1e-12) throw DomainError("odd atom: size condition fails");
    if (std::fabs(total_integral(payload)) > 1e-10) throw DomainError("odd atom: mean is not zero");
}

OddAtom step_atom(double delta) {
    if (!(delta > 0)) throw DomainError("step atom: delta must be > 0");
    return {AtomKind::step, 0.0, delta, SampledFunction({delta}, {1 / delta}, delta, Interp::step)};
}

OddAtom haar_atom(double a, double b) {
    if (!(b > a) || a < 0) throw DomainError("haar atom: need 0 <= a < b");
    const double c = 1 / (b - a), m = 0.5 * (a + b);
    SampledFunction p = a > 0 ? SampledFunction({0.5 * a, a, m}, {0.0, c, -c}, b, Interp::step)
                              : SampledFunction({0.5 * m, m}, {c, -c}, b, Interp::step);
    return {AtomKind::oscillating, a, b, std::move(p)};
}

DiscreteMeasure theorem_a_measure(double lambda, const SampledFunction& f, std::span<const double> y_edges,
                                  std::span<const double> t_edges, const QuadratureSpec& q) {
    if (y_edges.size() < 2 || t_edges.size() < 2) throw UsageError("theorem_a_measure: need at least one cell");
    for (std::size_t i = 1; i < y_edges.size(); ++i)
        if (!(y_edges[i] > y_edges[i - 1]) || y_edges[0] < 0) throw DomainError("theorem_a_measure: bad y edges");
    for (std::size_t j = 1; j < t_edges.size(); ++j)
        if (!(t_edges[j] > t_edges[j - 1]) || t_edges[0] < 0) throw DomainError("theorem_a_measure: bad t edges");
    DiscreteMeasure mu;
    if (f.is_zero()) return mu;
    std::vector<double> yc(y_edges.size() - 1);
    for (std::size_t i = 0; i < yc.size(); ++i) yc[i] = 0.5 * (y_edges[i] + y_edges[i + 1]);
    for (std::size_t j = 0; j + 1 < t_edges.size(); ++j) {
        const double t = 0.5 * (t_edges[j] + t_edges[j + 1]), dt = t_edges[j + 1] - t_edges[j];
        const SampledFunction d = apply_poisson(lambda, t, f, yc, q, PoissonVariant::dt);
        for (std::size_t i = 0; i < yc.size(); ++i) {
            const double v = t * d.values()[i];
            const double w = v * v * (y_edges[i + 1] - y_edges[i]) * dt / t;
            if (w != 0) mu.add({yc[i], t, w});
        }
    }
    return mu;
}

void write_norm_report(std::ostream& os, const std::vector<NormRow>& rows, const std::string& header_comment) {
    if (!header_comment.empty()) os << "# " << header_comment << '\n';
    os << "function_id,bmo_o,bmo_plambda,sqrt_carleson_mu_f\n";
    char buf[160];
    for (const NormRow& r : rows) {
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g", r.bmo_o, r.bmo_plambda, r.sqrt_carleson_mu_f);
        os << r.function_id << buf << '\n';
    }
}

}  // namespace bh
