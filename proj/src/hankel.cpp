#include "bh/hankel.hpp"

#include "bh/errors.hpp"
#include "bh/integrate_sampled.hpp"
#include "bh/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bh {

SampledFunction hankel_transform(double lambda, const SampledFunction& f, std::span<const double> out_grid,
                                 const QuadratureSpec& q, int order_offset) {
    if (!(lambda > 0)) throw DomainError("hankel_transform: lambda must be > 0");
    if (order_offset != 0 && order_offset != 1) throw UsageError("hankel_transform: order_offset must be 0 or 1");
    if (out_grid.empty()) throw UsageError("hankel_transform: empty output grid");
    const Order nu(lambda - 0.5 + order_offset);
    std::vector<double> vals(out_grid.size());
    const double hi = f.end();
    for (std::size_t i = 0; i < out_grid.size(); ++i) {
        const double x = out_grid[i];
        if (i && !(x > out_grid[i - 1])) throw UsageError("hankel_transform: output grid must be increasing");
        // one panel per oscillation period
        std::vector<double> extra;
        const double period = 2 * std::numbers::pi / x;
        for (double b = period; b < hi && extra.size() < 4000; b += period) extra.push_back(b);
        auto kern = [&](double y) { return Vec<1>{std::sqrt(x * y) * bessel_j(nu, x * y)}; };
        try {
            vals[i] = integrate_against<1>(f, kern, q, std::move(extra))[0];
        } catch (const ConvergenceError& e) {
            throw e.with_location("hankel_transform at x=" + std::to_string(x));
        }
    }
    return SampledFunction(std::vector<double>(out_grid.begin(), out_grid.end()), std::move(vals), out_grid.back(),
                           Interp::spline);
}

double l2_norm(const SampledFunction& f, const QuadratureSpec& q) {
    std::vector<double> br = clean_breaks(f.breakpoints(), 0.0, f.end());
    return std::sqrt(integrate_scalar([&](double y) { return f(y) * f(y); }, br, q));
}

double l2_distance(const SampledFunction& f, const SampledFunction& g, const QuadratureSpec& q) {
    std::vector<double> br = f.breakpoints();
    const auto gb = g.breakpoints();
    br.insert(br.end(), gb.begin(), gb.end());
    br = clean_breaks(std::move(br), 0.0, std::max(f.end(), g.end()));
    return std::sqrt(integrate_scalar(
        [&](double y) {
            const double d = f(y) - g(y);
            return d * d;
        },
        br, q));
}

double sqrt_bessel_sup(double lambda, double grid_ratio) {
    const Order nu(lambda - 0.5);
    double m = 0;
    for (double z = 1e-6; z <= 1e4; z *= grid_ratio) m = std::max(m, std::fabs(std::sqrt(z) * bessel_j(nu, z)));
    return m;
}

}  // namespace bh
