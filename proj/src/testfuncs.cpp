#include "bh/testfuncs.hpp"

#include "bh/errors.hpp"

#include <cmath>

namespace bh::testfn {

SampledFunction indicator(double a) { return SampledFunction({a}, {1.0}, a, Interp::step); }

SampledFunction indicator_sampled(double a, double h, double extent) {
    const auto n = static_cast<std::size_t>(std::llround(extent / h));
    std::vector<double> g(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = h * static_cast<double>(i + 1);
        v[i] = g[i] < a ? 1.0 : 0.0;
    }
    return SampledFunction(std::move(g), std::move(v), extent, Interp::linear);
}

SampledFunction triangle() { return SampledFunction({1e-12, 0.5, 1.0}, {2e-12, 1.0, 0.0}, 1.0, Interp::linear); }

SampledFunction log_capped(double cap, std::size_t n) {
    return sample([](double y) { return -std::log(y); }, logspace(cap, 1.0, n), 1.0, Interp::linear);
}

SampledFunction gaussian_bump(std::size_t n) {
    return sample([](double y) { return std::exp(-8 * (y - 1) * (y - 1)); }, linspace(4.0 / n, 4.0, n), 4.0,
                  Interp::spline);
}

SampledFunction power_gaussian(double lambda, double a, double extent, std::size_t n) {
    return sample([&](double y) { return std::pow(y, lambda) * std::exp(-a * y * y); },
                  linspace(extent / n, extent, n), extent, Interp::spline);
}

SampledFunction laguerre1(double lambda, double extent, std::size_t n) {
    return sample([&](double y) { return std::pow(y, lambda) * (lambda + 0.5 - y * y) * std::exp(-y * y / 2); },
                  linspace(extent / n, extent, n), extent, Interp::spline);
}

SampledFunction power(double lambda, double R, std::size_t n) {
    SampledFunction f = sample([&](double y) { return std::pow(y, lambda); }, linspace(R / n, R, n), R, Interp::spline);
    f.with_tail({lambda, 1.0});
    return f;
}

SampledFunction by_name(const std::string& name, double lambda) {
    if (name == "indicator") return indicator();
    if (name == "triangle") return triangle();
    if (name == "log") return log_capped();
    if (name == "bump") return gaussian_bump();
    if (name == "power_gaussian") return power_gaussian(lambda, 1.0);
    if (name == "laguerre") return laguerre1(lambda);
    if (name == "power") return power(lambda);
    if (name == "zero") return SampledFunction({1.0}, {0.0}, 1.0, Interp::step);
    throw UsageError("unknown test function '" + name + "'");
}

std::vector<std::string> names() {
    return {"indicator", "triangle", "log", "bump", "power_gaussian", "laguerre", "power", "zero"};
}

}  // namespace bh::testfn
