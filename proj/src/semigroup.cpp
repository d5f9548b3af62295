#include "bh/semigroup.hpp"

#include "bh/errors.hpp"
#include "bh/integrate_sampled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

namespace bh {

namespace {

constexpr double kPi = std::numbers::pi;

std::string at(const char* what, double x, double t) {
    return std::string(what) + " at x=" + std::to_string(x) + " t=" + std::to_string(t);
}

// int_R^inf K(y) c y^p dy via y = R/s, s in (0, 1].
template <std::size_t D, class K>
Vec<D> tail_quadrature(K&& kern, double R, const PowerTail& tail, const QuadratureSpec& q) {
    auto g = [&](double s) {
        const double y = R / s;
        Vec<D> k = kern(y);
        const double w = tail.coefficient * std::pow(y, tail.exponent) * R / (s * s);
        for (auto& c : k) c *= w;
        return k;
    };
    const double br[] = {0.0, 0.0625, 0.25, 0.5, 1.0};
    return integrate<D>(g, br, q);
}

bool is_power(const PowerTail& tail, double p) { return tail.exponent == p; }

// lambda = 1: P^1_t(x,y) = (1/pi)[t/((x-y)^2+t^2) - t/((x+y)^2+t^2)] integrated
// against 1 and y over (R, inf).
double poisson1_tail(double x, double t, double R, const PowerTail& tail) {
    if (is_power(tail, 0.0)) return tail.coefficient / kPi * std::atan2(2 * x * t, t * t + R * R - x * x);
    const double a = (R - x) * (R - x) + t * t;
    return tail.coefficient / kPi *
           (x * (std::atan2(t, R - x) + std::atan2(t, R + x)) + 0.5 * t * std::log1p(4 * R * x / a));
}

// lambda = 1 heat kernel (4 pi t)^{-1/2}[e^{-(x-y)^2/4t} - e^{-(x+y)^2/4t}].
double heat1_tail(double x, double t, double R, const PowerTail& tail) {
    const double st = 2 * std::sqrt(t);
    const double em = std::erfc((R - x) / st), ep = std::erfc((R + x) / st);
    if (is_power(tail, 0.0)) return tail.coefficient * 0.5 * (em - ep);
    const double gm = std::exp(-(R - x) * (R - x) / (4 * t)), gp = std::exp(-(R + x) * (R + x) / (4 * t));
    return tail.coefficient / std::sqrt(4 * kPi * t) * (2 * t * (gm - gp) + x * std::sqrt(kPi * t) * (em + ep));
}

std::vector<double> kernel_breaks(double x, double scale, double hi) {
    std::vector<double> br;
    add_geometric_breaks(br, x, scale, 4.0, 0.0, hi);
    return br;
}

double poisson_component(const PoissonBundle& b, PoissonVariant v) {
    switch (v) {
        case PoissonVariant::dt: return b.dt;
        case PoissonVariant::dlam_x: return b.dlam_x;
        default: return b.p;
    }
}

double poisson_at(double lambda, double x, double t, const SampledFunction& f, const QuadratureSpec& q,
                  PoissonVariant v) {
    auto kern = [&](double y) { return Vec<1>{poisson_component(poisson_bundle({lambda, x, y, t}, q), v)}; };
    double out = integrate_against<1>(f, kern, q, kernel_breaks(x, t, f.end()))[0];
    if (f.tail()) {
        const double R = f.support_bound();
        const PowerTail& tl = *f.tail();
        if (lambda == 1.0 && v == PoissonVariant::value && (is_power(tl, 0.0) || is_power(tl, 1.0)))
            out += poisson1_tail(x, t, R, tl);
        else
            out += tail_quadrature<1>(kern, R, tl, q)[0];
    }
    return out;
}

void check_common(double lambda, double t) {
    if (!(lambda > 0) || !std::isfinite(lambda)) throw DomainError("lambda must be > 0");
    if (!(t > 0) || !std::isfinite(t)) throw DomainError("t must be > 0");
}

}  // namespace

SampledFunction apply_poisson(double lambda, double t, const SampledFunction& f, std::span<const double> out_grid,
                              const QuadratureSpec& q, PoissonVariant variant) {
    check_common(lambda, t);
    if (out_grid.empty()) throw UsageError("apply_poisson: empty output grid");
    std::vector<double> vals(out_grid.size());
    for (std::size_t i = 0; i < out_grid.size(); ++i) {
        try {
            vals[i] = poisson_at(lambda, out_grid[i], t, f, q, variant);
        } catch (const ConvergenceError& e) {
            throw e.with_location(at("apply_poisson", out_grid[i], t));
        }
    }
    return SampledFunction(std::vector<double>(out_grid.begin(), out_grid.end()), std::move(vals), out_grid.back(),
                           Interp::spline);
}

PoissonAction poisson_action(double lambda, double x, double t, const SampledFunction& f, const QuadratureSpec& q) {
    check_common(lambda, t);
    auto kern = [&](double y) {
        const PoissonBundle b = poisson_bundle({lambda, x, y, t}, q);
        return Vec<3>{b.p, b.dt, b.dlam_x};
    };
    try {
        Vec<3> r = integrate_against<3>(f, kern, q, kernel_breaks(x, t, f.end()));
        if (f.tail()) {
            const Vec<3> tl = tail_quadrature<3>(kern, f.support_bound(), *f.tail(), q);
            for (int d = 0; d < 3; ++d) r[d] += tl[d];
        }
        return {r[0], r[1], r[2]};
    } catch (const ConvergenceError& e) {
        throw e.with_location(at("poisson_action", x, t));
    }
}

SampledFunction apply_heat(double lambda, double t, const SampledFunction& f, std::span<const double> out_grid,
                           const QuadratureSpec& q) {
    check_common(lambda, t);
    if (out_grid.empty()) throw UsageError("apply_heat: empty output grid");
    std::vector<double> vals(out_grid.size());
    for (std::size_t i = 0; i < out_grid.size(); ++i) {
        const double x = out_grid[i];
        auto kern = [&](double y) { return Vec<1>{heat_kernel({lambda, x, y, t}, q)}; };
        try {
            double v = integrate_against<1>(f, kern, q, kernel_breaks(x, std::sqrt(t), f.end()))[0];
            if (f.tail()) {
                const PowerTail& tl = *f.tail();
                if (lambda == 1.0 && (is_power(tl, 0.0) || is_power(tl, 1.0)))
                    v += heat1_tail(x, t, f.support_bound(), tl);
                else
                    v += tail_quadrature<1>(kern, f.support_bound(), tl, q)[0];
            }
            vals[i] = v;
        } catch (const ConvergenceError& e) {
            throw e.with_location(at("apply_heat", x, t));
        }
    }
    return SampledFunction(std::vector<double>(out_grid.begin(), out_grid.end()), std::move(vals), out_grid.back(),
                           Interp::spline);
}

std::pair<double, double> subordination_check(const KernelPoint& p, const QuadratureSpec& q) {
    p.validate();
    const double lhs = poisson_kernel(p, q);
    // u = s^2 turns e^{-u} u^{-1/2} du into 2 e^{-s^2} ds
    auto g = [&](double s) {
        const double T = p.t * p.t / (4 * s * s);
        return 2 / std::sqrt(kPi) * std::exp(-s * s) * heat_kernel({p.lambda, p.x, p.y, T}, q);
    };
    std::vector<double> br{0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
    const double d = std::fabs(p.x - p.y);
    if (d > 0) add_geometric_breaks(br, p.t / (2 * d), p.t / (8 * d), 2.0, 0.0, 8.0);
    br.push_back(p.t / (2 * std::sqrt(p.x * p.y)));
    br = clean_breaks(std::move(br), 0.0, 8.0);
    double rhs;
    try {
        rhs = integrate_scalar(g, br, q);
    } catch (const ConvergenceError& e) {
        throw e.with_location("subordination integral");
    }
    return {lhs, rhs};
}

namespace {

std::vector<double> default_x_grid(const SampledFunction& f) {
    const double e = f.end();
    return linspace(e / 120, e, 120);
}

std::vector<double> trapezoid_weights(std::span<const double> x) {
    std::vector<double> w(x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = 0.5 * (x[i + 1] - x[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    if (x.size() == 1) w[0] = 1;
    return w;
}

// y panels for the inner integral at height t: width t over the support and a
// little beyond, then geometric out to where the product of two kernel
// gradients (decay y^{-2 lambda - 4}) is negligible.
std::vector<double> inner_y_breaks(double end, double t) {
    std::vector<double> br{0.0};
    const double core = end + 2 * t;
    const int n = std::max(1, static_cast<int>(std::ceil(core / t)));
    for (int i = 1; i <= n; ++i) br.push_back(core * i / n);
    const double far = 100 * (end + t);
    for (double y = core * 1.5; y < far; y *= 1.5) br.push_back(y);
    br.push_back(far);
    return br;
}

}  // namespace

std::vector<std::vector<double>> reproducing_values(double lambda, const SampledFunction& f,
                                                    std::span<const double> eps, const QuadratureSpec& q,
                                                    std::span<const double> x_grid) {
    if (!(lambda > 0)) throw DomainError("reproducing_check: lambda must be > 0");
    if (eps.empty()) throw UsageError("reproducing_check: no eps given");
    for (double e : eps)
        if (!(e > 0 && e < 1)) throw DomainError("reproducing_check: eps must lie in (0, 1)");
    std::vector<std::vector<double>> out(eps.size(), std::vector<double>(x_grid.size(), 0.0));
    if (f.is_zero()) return out;

    const double emin = *std::min_element(eps.begin(), eps.end());
    // t panels: octaves of emin plus every eps and 1/eps, so each eps range is a union of panels
    std::vector<double> tb;
    for (double t = emin; t < 1 / emin; t *= 2) tb.push_back(t);
    for (double e : eps) {
        tb.push_back(e);
        tb.push_back(1 / e);
    }
    tb = clean_breaks(std::move(tb), emin, 1 / emin);

    const NodeTable& gl = gauss_legendre(8);
    std::vector<std::vector<double>> panel(tb.size() - 1, std::vector<double>(x_grid.size(), 0.0));
    for (std::size_t k = 0; k + 1 < tb.size(); ++k) {
        // log-t substitution: dt = t ds
        const double sa = std::log(tb[k]), sb = std::log(tb[k + 1]);
        for (std::size_t a = 0; a < gl.x.size(); ++a) {
            const double s = 0.5 * (sa + sb) + 0.5 * (sb - sa) * gl.x[a];
            const double t = std::exp(s);
            const double wt = 0.5 * (sb - sa) * gl.w[a] * t;
            const std::vector<double> yb = inner_y_breaks(f.end(), t);
            for (std::size_t p = 0; p + 1 < yb.size(); ++p) {
                const double c = 0.5 * (yb[p] + yb[p + 1]), h = 0.5 * (yb[p + 1] - yb[p]);
                for (std::size_t b = 0; b < gl.x.size(); ++b) {
                    const double y = c + h * gl.x[b];
                    const double wy = h * gl.w[b];
                    PoissonAction u;
                    try {
                        u = poisson_action(lambda, y, t, f, q);
                    } catch (const ConvergenceError& e) {
                        throw e.with_location("reproducing_check");
                    }
                    for (std::size_t i = 0; i < x_grid.size(); ++i) {
                        const PoissonBundle kb = poisson_bundle({lambda, x_grid[i], y, t}, q);
                        panel[k][i] += 2 * t * wt * wy * (kb.dt * u.dt + kb.dlam_y * u.dlam_x);
                    }
                }
            }
        }
    }
    for (std::size_t e = 0; e < eps.size(); ++e)
        for (std::size_t k = 0; k + 1 < tb.size(); ++k) {
            if (tb[k] < eps[e] * (1 - 1e-12) || tb[k + 1] > (1 / eps[e]) * (1 + 1e-12)) continue;
            for (std::size_t i = 0; i < x_grid.size(); ++i) out[e][i] += panel[k][i];
        }
    return out;
}

std::vector<double> reproducing_check_multi(double lambda, const SampledFunction& f, std::span<const double> eps,
                                            const QuadratureSpec& q, std::span<const double> x_grid) {
    std::vector<double> xg = x_grid.empty() ? default_x_grid(f) : std::vector<double>(x_grid.begin(), x_grid.end());
    const auto vals = reproducing_values(lambda, f, eps, q, xg);
    const std::vector<double> w = trapezoid_weights(xg);
    std::vector<double> res(eps.size(), 0.0);
    double nf = 0;
    for (std::size_t i = 0; i < xg.size(); ++i) nf += w[i] * f(xg[i]) * f(xg[i]);
    for (std::size_t e = 0; e < eps.size(); ++e) {
        double nd = 0;
        for (std::size_t i = 0; i < xg.size(); ++i) {
            const double d = f(xg[i]) - vals[e][i];
            nd += w[i] * d * d;
        }
        res[e] = nf > 0 ? std::sqrt(nd / nf) : 0.0;
    }
    return res;
}

double reproducing_check(double lambda, const SampledFunction& f, double eps, const QuadratureSpec& q,
                         std::span<const double> x_grid) {
    const double e[1] = {eps};
    return reproducing_check_multi(lambda, f, e, q, x_grid)[0];
}

double square_function_g(double lambda, const SampledFunction& f, double x, double cone_cap, const QuadratureSpec& q) {
    if (!(cone_cap > 0)) throw DomainError("square_function_g: cone_cap must be > 0");
    if (!(x > 0)) throw DomainError("square_function_g: x must be > 0");
    if (f.is_zero()) return 0.0;
    const QuadratureSpec& outer = q;
    const QuadratureSpec inner = q.with_tol(q.abs_tol, q.rel_tol * 0.1);
    const std::vector<double> fb = f.breakpoints();
    auto slice = [&](double t) {
        // the error budget is on t d/dt u, whose integrand is O(1/t) in size
        const QuadratureSpec eval = q.with_tol(q.abs_tol / t, q.rel_tol * 0.01);
        std::vector<double> br{x};
        for (double b : fb)
            if (std::fabs(b - x) < t) br.push_back(b);
        br = clean_breaks(std::move(br), std::max(0.0, x - t), x + t);
        return integrate_scalar(
            [&](double y) {
                const double v = t * poisson_action(lambda, y, t, f, eval).dt;
                return v * v;
            },
            br, inner);
    };
    // Below t_lo the kernel derivatives are too large for the cancellation in
    // the y-integral to resolve; the neglected piece is O(t_lo^2) where f is smooth.
    // The t-integral runs in log t, where the integrand is smooth across decades.
    const double t_lo = 1e-4 * std::min(x, cone_cap);
    std::vector<double> lb{std::log(x)};
    for (double b : fb)
        if (std::fabs(b - x) > 0) lb.push_back(std::log(std::fabs(b - x)));
    lb = clean_breaks(std::move(lb), std::log(t_lo), std::log(cone_cap));
    try {
        return std::sqrt(integrate_scalar(
            [&](double u) {
                const double t = std::exp(u);
                return slice(t) / t;
            },
            lb, outer));
    } catch (const ConvergenceError& e) {
        throw e.with_location("square_function_g at x=" + std::to_string(x));
    }
}

TentFunction::TentFunction(std::vector<double> y, std::vector<double> t, std::vector<double> v)
    : y_edges(std::move(y)), t_edges(std::move(t)), values(std::move(v)) {
    if (y_edges.size() < 2 || t_edges.size() < 2) throw DomainError("tent function: need at least one cell");
    for (std::size_t i = 1; i < y_edges.size(); ++i)
        if (!(y_edges[i] > y_edges[i - 1])) throw DomainError("tent function: y edges must increase");
    for (std::size_t j = 1; j < t_edges.size(); ++j)
        if (!(t_edges[j] > t_edges[j - 1])) throw DomainError("tent function: t edges must increase");
    if (y_edges[0] < 0 || t_edges[0] < 0) throw DomainError("tent function: edges must be >= 0");
    if (values.size() != ny() * nt()) throw DomainError("tent function: value matrix has the wrong size");
    for (double v2 : values)
        if (!std::isfinite(v2)) throw DomainError("tent function: non-finite value");
}

void TentFunction::write_csv(std::ostream& os) const {
    os << "y,t,value\n";
    char buf[96];
    for (std::size_t i = 0; i < ny(); ++i)
        for (std::size_t j = 0; j < nt(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", 0.5 * (y_edges[i] + y_edges[i + 1]),
                          0.5 * (t_edges[j] + t_edges[j + 1]), at(i, j));
            os << buf << '\n';
        }
}

namespace {

// int_I int_0^{L} |F|^2 dy dt / t over I = [a, b], L = b - a, cells exact.
double box_energy(const TentFunction& F, double a, double b) {
    const double L = b - a;
    double s = 0;
    for (std::size_t i = 0; i < F.ny(); ++i) {
        const double ov = std::min(b, F.y_edges[i + 1]) - std::max(a, F.y_edges[i]);
        if (ov <= 0) continue;
        for (std::size_t j = 0; j < F.nt(); ++j) {
            const double t0 = F.t_edges[j];
            if (t0 >= L) break;
            const double v = F.at(i, j);
            if (v == 0) continue;
            if (t0 == 0) return std::numeric_limits<double>::infinity();
            s += v * v * ov * std::log(std::min(F.t_edges[j + 1], L) / t0);
        }
    }
    return s;
}

// int over [t0, t1] of |[y0, y1) intersect (x-t, x+t)| dt / t^2, exactly.
double cone_cell(double x, double y0, double y1, double t0, double t1) {
    auto len = [&](double t) { return std::max(0.0, std::min(y1, x + t) - std::max(y0, x - t)); };
    std::vector<double> br{t0, t1, std::fabs(x - y0), std::fabs(x - y1)};
    br = clean_breaks(std::move(br), t0, t1);
    double s = 0;
    for (std::size_t k = 0; k + 1 < br.size(); ++k) {
        const double ta = br[k], tb = br[k + 1];
        const double la = len(ta), lb = len(tb);
        if (la == 0 && lb == 0) continue;
        if (ta == 0) return std::numeric_limits<double>::infinity();
        const double beta = (lb - la) / (tb - ta), alpha = la - beta * ta;
        s += alpha * (1 / ta - 1 / tb) + beta * std::log(tb / ta);
    }
    return s;
}

}  // namespace

TentValues tent_functionals(const TentFunction& F, double x, double ceiling) {
    if (!(x > 0) || !std::isfinite(x)) throw DomainError("tent_functionals: x must be > 0");
    double phi2 = 0;
    auto consider = [&](double a, double b) {
        if (!(b > a)) return;
        phi2 = std::max(phi2, box_energy(F, a, b) / (b - a));
    };
    const auto& ye = F.y_edges;
    for (std::size_t i = 0; i < ye.size(); ++i) {
        if (ye[i] > x) break;
        for (std::size_t j = i + 1; j < ye.size(); ++j)
            if (ye[j] >= x) consider(ye[i], ye[j]);
        if (phi2 > ceiling * ceiling) break;
    }
    for (double L : F.t_edges) {
        if (!(L > 0)) continue;
        const double a = std::max(0.0, x - L / 2);
        consider(a, a + L);
    }
    double psi2 = 0;
    for (std::size_t i = 0; i < F.ny(); ++i)
        for (std::size_t j = 0; j < F.nt(); ++j) {
            const double v = F.at(i, j);
            if (v != 0) psi2 += v * v * cone_cell(x, F.y_edges[i], F.y_edges[i + 1], F.t_edges[j], F.t_edges[j + 1]);
        }
    const double phi = phi2 > ceiling * ceiling ? std::numeric_limits<double>::infinity() : std::sqrt(phi2);
    return {phi, std::sqrt(psi2)};
}

GradientBoundReport gradient_bound_check(double lambda, const SampledFunction& f,
                                         std::span<const std::pair<double, double>> grid, const QuadratureSpec& q) {
    GradientBoundReport rep;
    if (f.is_zero()) return rep;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto [x, t] = grid[i];
        try {
            const PoissonAction a = poisson_action(lambda, x, t, f, q);
            rep.max = std::max(rep.max, t * (std::fabs(a.dt) + std::fabs(a.dlam_x)));
        } catch (const ConvergenceError&) {
            rep.failed.push_back(i);
        }
    }
    return rep;
}

}  // namespace bh
