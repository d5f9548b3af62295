#include "bh/kernels.hpp"

#include "bh/errors.hpp"
#include "bh/specfun.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace bh {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0)) throw DomainError(std::string("kernel point: ") + name + " must be finite and > 0");
}

// A = int_0^2 w(u) (s+u)^{-lambda-2} du and B = int_0^2 u w(u) (s+u)^{-lambda-2} du
// with w(u) = (u(2-u))^{lambda-1}. The theta integral in u = 1 - cos(theta),
// rescaled by 2xy so that s = ((x-y)^2 + t^2) / (2xy) carries all geometry.
Vec<2> theta_sums(double lambda, double s, const QuadratureSpec& q) {
    QuadratureSpec iq = q;
    iq.abs_tol = 1e-300;
    iq.rel_tol = std::max(q.rel_tol, 1e-14);
    const double e = -lambda - 2;

    std::vector<double> br{0.0};
    for (double b = s; b < 2.0; b *= 4.0) br.push_back(b);
    br.push_back(1.0);
    br.push_back(2.0);
    br = clean_breaks(std::move(br), 0.0, 2.0);

    auto plain = [&](double u) {
        const double g = std::pow(u * (2 - u), lambda - 1) * std::pow(s + u, e);
        return Vec<2>{g, g * u};
    };
    if (lambda >= 1.0) return integrate<2>(plain, br, iq);

    // lambda < 1: (u(2-u))^{lambda-1} is singular at both ends. On the end
    // panels substitute u = v^{1/lambda} (and 2-u = v^{1/lambda}), which
    // absorbs the weight: u^{lambda-1} du = dv / lambda.
    const double inv = 1.0 / lambda;
    const double bl = br[1], br_last = br[br.size() - 2];
    auto left = [&](double v) {
        const double u = std::pow(v, inv);
        const double g = std::pow(2 - u, lambda - 1) * std::pow(s + u, e) * inv;
        return Vec<2>{g, g * u};
    };
    auto right = [&](double v) {
        const double r = std::pow(v, inv);
        const double u = 2 - r;
        const double g = std::pow(u, lambda - 1) * std::pow(s + u, e) * inv;
        return Vec<2>{g, g * u};
    };
    Vec<2> out{};
    const double lb[2] = {0.0, std::pow(bl, lambda)};
    const Vec<2> l = integrate<2>(left, lb, iq);
    const double rb[2] = {0.0, std::pow(2 - br_last, lambda)};
    const Vec<2> r = integrate<2>(right, rb, iq);
    Vec<2> m{};
    if (br.size() > 3) {
        std::vector<double> mid(br.begin() + 1, br.end() - 1);
        m = integrate<2>(plain, mid, iq);
    }
    for (int d = 0; d < 2; ++d) out[d] = l[d] + m[d] + r[d];
    return out;
}

PoissonBundle theta_bundle(const KernelPoint& p, const QuadratureSpec& q) {
    const double lambda = p.lambda, x = p.x, y = p.y, t = p.t;
    const double xy = x * y;
    const double s = ((x - y) * (x - y) + t * t) / (2 * xy);
    Vec<2> ab;
    try {
        ab = theta_sums(lambda, s, q);
    } catch (const ConvergenceError& e) {
        throw e.with_location("poisson kernel at lambda=" + std::to_string(lambda) + " x=" + std::to_string(x) +
                              " y=" + std::to_string(y) + " t=" + std::to_string(t));
    }
    const double A = ab[0], B = ab[1];
    const double c0 = (2 * lambda / kPi) * std::pow(2.0, -lambda - 1);
    const double c1 = (4 * lambda * (lambda + 1) / kPi) * std::pow(2.0, -lambda - 2);
    const double j1 = s * A + B;
    PoissonBundle out;
    out.p = c0 * t * j1 / xy;
    out.dt = c0 / xy * (j1 - (lambda + 1) * (t * t / xy) * A);
    out.dlam_x = -c1 * t / (xy * xy) * ((x - y) * A + y * B);
    out.dlam_y = -c1 * t / (xy * xy) * ((y - x) * A + x * B);
    return out;
}

double spectral(const KernelPoint& p, const QuadratureSpec& q) {
    const double t = p.t;
    const double R = q.truncation_radius;
    if (!(std::exp(-t * R) < q.abs_tol))
        throw DomainError("spectral Poisson kernel: truncation radius " + std::to_string(R) +
                          " too small for t=" + std::to_string(t) + " (need exp(-tR) < abs_tol)");
    // past Z the integrand is bounded by e^{-tz} (sup sqrt(s)|J(s)|)^2 < e^{-tz}
    const double Z = std::min(R, (std::log(1.0 / q.abs_tol) + 7.0 + std::max(0.0, -std::log(t))) / t);
    // panels resolve both the J.J oscillation and the e^{-tz} decay
    const double hmax = std::min(kPi / (4 * std::max(p.x, p.y)), 0.5 / t);
    const long n = static_cast<long>(std::ceil(Z / hmax));
    const long double h = static_cast<long double>(Z) / n;
    const Order nu(p.lambda - 0.5);
    const NodeTable& gl = gauss_legendre(8);
    const long double x = p.x, y = p.y;
    long double sum = 0;
    for (long i = 0; i < n; ++i) {
        const long double c = (i + 0.5L) * h;
        long double panel = 0;
        for (std::size_t j = 0; j < gl.x.size(); ++j) {
            const long double z = c + 0.5L * h * gl.x[j];
            const long double v = std::exp(-t * z) * std::sqrt(x * z) * bessel_j_ld(nu, x * z) *
                                  std::sqrt(y * z) * bessel_j_ld(nu, y * z);
            panel += gl.w[j] * v;
        }
        sum += panel;
    }
    return static_cast<double>(0.5L * h * sum);
}

}  // namespace

void KernelPoint::validate() const {
    require_positive(lambda, "lambda");
    require_positive(x, "x");
    require_positive(y, "y");
    require_positive(t, "t");
}

double poisson_kernel(const KernelPoint& p, const QuadratureSpec& q, PoissonMethod method) {
    p.validate();
    if (method == PoissonMethod::spectral) return spectral(p, q);
    return theta_bundle(p, q).p;
}

KernelGrad poisson_kernel_grad(const KernelPoint& p, const QuadratureSpec& q) {
    p.validate();
    const PoissonBundle b = theta_bundle(p, q);
    return {b.dt, b.dlam_x};
}

PoissonBundle poisson_bundle(const KernelPoint& p, const QuadratureSpec& q) {
    p.validate();
    return theta_bundle(p, q);
}

double heat_kernel(const KernelPoint& p, const QuadratureSpec&) {
    p.validate();
    const double z = p.x * p.y / (2 * p.t);
    const double d = p.x - p.y;
    return std::sqrt(p.x * p.y) / (2 * p.t) * bessel_i_scaled(Order(p.lambda - 0.5), z) *
           std::exp(-d * d / (4 * p.t));
}

double classical_poisson(double t, double u) {
    if (!std::isfinite(t) || !(t > 0) || !std::isfinite(u)) throw DomainError("classical_poisson: need t > 0, finite u");
    return t / (kPi * (u * u + t * t));
}

BoundReport verify_kernel_bounds(double lambda, std::span<const KernelPoint> grid, const QuadratureSpec& q) {
    if (grid.empty()) throw UsageError("verify_kernel_bounds: empty grid");
    BoundReport rep;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        KernelPoint p = grid[i];
        p.lambda = lambda;
        PoissonBundle b;
        try {
            b = poisson_bundle(p, q);
        } catch (const ConvergenceError&) {
            rep.failed.push_back(i);
            continue;
        }
        const double D = (p.x - p.y) * (p.x - p.y) + p.t * p.t;
        const double r2 = std::exp(std::log(b.p) + (lambda + 1) * std::log(D) - std::log(p.t) -
                                   lambda * std::log(p.x * p.y));
        const double r3 = b.p * D / p.t;
        const double r4 = p.t * (std::fabs(b.dt) + std::fabs(b.dlam_x)) / b.p;
        rep.rows.push_back({"r2", i, r2});
        rep.rows.push_back({"r3", i, r3});
        rep.rows.push_back({"r4", i, r4});
        rep.max_r2 = std::max(rep.max_r2, r2);
        rep.max_r3 = std::max(rep.max_r3, r3);
        rep.max_r4 = std::max(rep.max_r4, r4);
    }
    return rep;
}

void BoundReport::write_csv(std::ostream& os) const {
    os << "inequality,grid_point,ratio\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.ratio);
        os << r.inequality << ',' << r.grid_point << ',' << buf << '\n';
    }
}

}  // namespace bh
