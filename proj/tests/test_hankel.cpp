#include <doctest.h>

#include "bh/hankel.hpp"
#include "bh/testfuncs.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace bh;

namespace {
constexpr double kPi = std::numbers::pi;
QuadratureSpec spec() {
    QuadratureSpec q;
    q.abs_tol = 1e-13;
    q.rel_tol = 1e-10;
    return q;
}
}  // namespace

TEST_CASE("sampled function interpolation modes") {
    const SampledFunction s({1.0, 2.0}, {3.0, 5.0}, 3.0, Interp::step);
    CHECK(s(0.5) == 3.0);
    CHECK(s(1.5) == 3.0);
    CHECK(s(2.5) == 5.0);
    CHECK(s(3.5) == 0.0);
    const SampledFunction l({1.0, 2.0}, {3.0, 5.0}, 2.0, Interp::linear);
    CHECK(l(1.5) == doctest::Approx(4.0));
    CHECK(l(2.5) == 0.0);
    const SampledFunction sp = sample([](double y) { return std::sin(y); }, linspace(0.01, 3, 300), 3, Interp::spline);
    CHECK(sp(1.234) == doctest::Approx(std::sin(1.234)).epsilon(1e-7));
    SampledFunction p({1.0}, {1.0}, 1.0, Interp::step);
    p.with_tail({1.0, 2.0});
    CHECK(p(3.0) == 6.0);
    CHECK_THROWS(SampledFunction({1.0, 1.0}, {0.0, 0.0}, 1.0));
    CHECK_THROWS(SampledFunction({-1.0}, {0.0}, 1.0));
}

TEST_CASE("sampled function CSV round trip") {
    const SampledFunction f({0.5, 1.0, 1.5}, {1.0, -2.0, 0.25}, 2.0);
    std::stringstream ss;
    f.write_csv(ss, "hash=abc");
    const SampledFunction g = SampledFunction::read_csv(ss);
    CHECK(g.grid() == f.grid());
    CHECK(g.values() == f.values());
    CHECK(g.support_bound() == 2.0);
}

TEST_CASE("h_1 of e^{-y} is the sine transform") {
    const SampledFunction f = sample([](double y) { return std::exp(-y); }, linspace(1e-3, 40, 8000), 40, Interp::spline);
    const std::vector<double> xs{0.25, 1.0, 3.0};
    const SampledFunction h = hankel_transform(1.0, f, xs, spec());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        CHECK(h.values()[i] == doctest::Approx(std::sqrt(2 / kPi) * x / (1 + x * x)).epsilon(1e-5));
    }
    CHECK(h.values()[1] == doctest::Approx(0.398942).epsilon(1e-5));
}

TEST_CASE("Hankel transform of zero is zero") {
    const SampledFunction z({1.0}, {0.0}, 1.0);
    const std::vector<double> xs{0.5, 1, 2};
    const SampledFunction h = hankel_transform(2.0, z, xs, spec());
    for (double v : h.values()) CHECK(v == 0.0);
}

TEST_CASE("self-dual Gaussians and the Laguerre eigenfunction") {
    // h_lambda(y^lambda e^{-a y^2}) = (2a)^{-lambda-1/2} x^lambda e^{-x^2/(4a)}
    for (double lambda : {1.0, 2.0})
        for (double a : {0.5, 1.0}) {
            const SampledFunction f = testfn::power_gaussian(lambda, a);
            const std::vector<double> xs{0.3, 1.0, 2.2, 4.0};
            const SampledFunction h = hankel_transform(lambda, f, xs, spec());
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double x = xs[i];
                const double ref = std::pow(2 * a, -lambda - 0.5) * std::pow(x, lambda) * std::exp(-x * x / (4 * a));
                CHECK(h.values()[i] == doctest::Approx(ref).epsilon(1e-6));
            }
        }
    const SampledFunction l = testfn::laguerre1(1.5);
    const std::vector<double> xs{0.5, 1.5, 3.0};
    const SampledFunction h = hankel_transform(1.5, l, xs, spec());
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(h.values()[i] == doctest::Approx(-l(xs[i])).epsilon(1e-6));
}

TEST_CASE("involution and isometry on band-limited functions") {
    const QuadratureSpec q = spec().with_tol(1e-10, 1e-8);
    const std::vector<double> out = linspace(0.01, 14, 1400);
    for (double lambda : {1.0, 2.0}) {
        const SampledFunction f = testfn::power_gaussian(lambda, 0.5, 14, 1400);
        const SampledFunction h = hankel_transform(lambda, f, out, q);
        const SampledFunction hh = hankel_transform(lambda, h, f.grid(), q);
        CHECK(l2_distance(hh, f, q) / l2_norm(f, q) < 1e-4);
        CHECK(std::fabs(l2_norm(h, q) / l2_norm(f, q) - 1) < 1e-3);
    }
}

TEST_CASE("order offset gives h_{lambda+1}") {
    // h_{lambda+1}(y^{lambda+1} e^{-y^2}) has the self-dual form with lambda+1
    const SampledFunction f = testfn::power_gaussian(2.0, 1.0);
    const std::vector<double> xs{0.7, 1.9};
    const SampledFunction h = hankel_transform(1.0, f, xs, spec(), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        CHECK(h.values()[i] == doctest::Approx(std::pow(2.0, -2.5) * x * x * std::exp(-x * x / 4)).epsilon(1e-6));
    }
}

TEST_CASE("sup norm bound by the L1 norm") {
    const QuadratureSpec q = spec();
    for (double lambda : {1.0, 2.0}) {
        const SampledFunction f = testfn::gaussian_bump();
        const std::vector<double> xs = linspace(0.05, 30, 300);
        const SampledFunction h = hankel_transform(lambda, f, xs, q);
        double hmax = 0;
        for (double v : h.values()) hmax = std::max(hmax, std::fabs(v));
        const double l1 = integrate_scalar([&](double y) { return std::fabs(f(y)); }, 0.0, f.end(), q);
        CHECK(hmax <= sqrt_bessel_sup(lambda) * l1);
    }
}
