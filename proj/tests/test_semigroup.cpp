#include <doctest.h>

#include "bh/hankel.hpp"
#include "bh/semigroup.hpp"
#include "bh/testfuncs.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace bh;

namespace {
constexpr double kPi = std::numbers::pi;
QuadratureSpec spec() {
    QuadratureSpec q;
    q.abs_tol = 1e-12;
    q.rel_tol = 1e-9;
    return q;
}
double rel_l2(const SampledFunction& a, const SampledFunction& b, std::span<const double> grid) {
    double n = 0, d = 0;
    for (double x : grid) {
        n += (a(x) - b(x)) * (a(x) - b(x));
        d += b(x) * b(x);
    }
    return std::sqrt(n / d);
}
}  // namespace

TEST_CASE("Poisson semigroup on the indicator") {
    const QuadratureSpec q = spec();
    const std::vector<double> x1{1.0};
    const double v = apply_poisson(1.0, 1.0, testfn::indicator(), x1, q).values()[0];
    CHECK(v == doctest::Approx((kPi / 4 - (std::atan(2.0) - kPi / 4)) / kPi).epsilon(1e-10));
    CHECK(v == doctest::Approx(0.147584).epsilon(1e-5));
    const std::vector<double> xh{0.5};
    CHECK(std::fabs(apply_poisson(1.0, 1e-3, testfn::indicator(), xh, q).values()[0] - 1) < 2e-2);
    const SampledFunction zero({1.0}, {0.0}, 1.0);
    CHECK(apply_poisson(2.0, 0.3, zero, xh, q).values()[0] == 0.0);
}

TEST_CASE("y^lambda is fixed by the Poisson semigroup") {
    const QuadratureSpec q = spec();
    for (double lambda : {1.0, 2.0}) {
        const SampledFunction f = testfn::power(lambda);
        for (double t : {0.3, 2.0})
            for (double x : {0.2, 1.0, 5.0}) {
                const std::vector<double> xs{x};
                const double v = apply_poisson(lambda, t, f, xs, q).values()[0];
                INFO("lambda=" << lambda << " t=" << t << " x=" << x);
                CHECK(v == doctest::Approx(std::pow(x, lambda)).epsilon(1e-3));
            }
    }
}

TEST_CASE("heat semigroup") {
    const QuadratureSpec q = spec();
    SampledFunction one({60.0}, {1.0}, 60.0, Interp::step);
    one.with_tail({0.0, 1.0});
    const std::vector<double> x2{2.0};
    CHECK(apply_heat(1.0, 1.0, one, x2, q).values()[0] == doctest::Approx(std::erf(1.0)).epsilon(1e-9));
    CHECK(apply_heat(1.0, 1.0, one, x2, q).values()[0] == doctest::Approx(0.842701).epsilon(1e-6));
    const SampledFunction zero({1.0}, {0.0}, 1.0);
    CHECK(apply_heat(1.0, 1.0, zero, x2, q).values()[0] == 0.0);

    const std::vector<double> grid = linspace(0.02, 8, 400);
    const SampledFunction once = apply_heat(1.0, 1.0, testfn::indicator(), grid, q);
    const SampledFunction half = apply_heat(1.0, 0.5, testfn::indicator(), grid, q);
    const SampledFunction twice = apply_heat(1.0, 0.5, half, grid, q);
    CHECK(rel_l2(twice, once, grid) < 1e-4);
}

TEST_CASE("Poisson semigroup law") {
    const QuadratureSpec q = spec();
    const std::vector<double> grid = linspace(0.02, 10, 500);
    for (double lambda : {1.0, 2.0}) {
        const SampledFunction f = testfn::gaussian_bump();
        const SampledFunction a = apply_poisson(lambda, 0.3, f, grid, q);
        const SampledFunction ab = apply_poisson(lambda, 0.2, a, grid, q);
        const SampledFunction c = apply_poisson(lambda, 0.5, f, grid, q);
        const std::vector<double> inner = linspace(0.05, 5, 100);
        CHECK(rel_l2(ab, c, inner) < 1e-4);
    }
}

TEST_CASE("derivative variants match the spectral representation") {
    const QuadratureSpec q = spec();
    const double t = 0.5;
    const SampledFunction f = testfn::gaussian_bump();
    const std::vector<double> zs = linspace(0.01, 60, 3000);
    const std::vector<double> xs = linspace(0.05, 5, 100);
    for (double lambda : {1.0, 2.0}) {
        const SampledFunction H = hankel_transform(lambda, f, zs, q.with_tol(1e-11, 1e-8));
        std::vector<double> g(zs.size());
        for (std::size_t i = 0; i < zs.size(); ++i) g[i] = -zs[i] * std::exp(-t * zs[i]) * H.values()[i];
        const SampledFunction G(zs, g, zs.back(), Interp::spline);
        const SampledFunction dt_spec = hankel_transform(lambda, G, xs, q.with_tol(1e-11, 1e-8));
        const SampledFunction dx_spec = hankel_transform(lambda, G, xs, q.with_tol(1e-11, 1e-8), 1);
        const SampledFunction dt = apply_poisson(lambda, t, f, xs, q, PoissonVariant::dt);
        const SampledFunction dx = apply_poisson(lambda, t, f, xs, q, PoissonVariant::dlam_x);
        CHECK(rel_l2(dt, dt_spec, xs) < 1e-4);
        CHECK(rel_l2(dx, dx_spec, xs) < 1e-4);

        // and the t-derivative matches a central difference of the value
        const std::vector<double> x1{1.1};
        const double h = 1e-5 * t;
        const double fd = (apply_poisson(lambda, t + h, f, x1, q).values()[0] -
                           apply_poisson(lambda, t - h, f, x1, q).values()[0]) /
                          (2 * h);
        CHECK(apply_poisson(lambda, t, f, x1, q, PoissonVariant::dt).values()[0] == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("t dP_t f vanishes at both ends of the t axis") {
    const QuadratureSpec q = spec();
    const SampledFunction f = testfn::gaussian_bump();
    const std::vector<double> xs = linspace(0.05, 6, 120);
    auto norm = [&](double t) {
        const SampledFunction d = apply_poisson(1.0, t, f, xs, q, PoissonVariant::dt);
        double s = 0;
        for (double v : d.values()) s += t * t * v * v;
        return std::sqrt(s);
    };
    const double mid = norm(1.0);
    CHECK(norm(1e-3) <= 0.05 * mid);
    CHECK(norm(1e3) <= 0.05 * mid);
}

TEST_CASE("subordination formula at kernel level") {
    const QuadratureSpec q = spec();
    auto [l, r] = subordination_check({1, 1, 1, 1}, q);
    CHECK(l == doctest::Approx(4 / (5 * kPi)).epsilon(1e-10));
    CHECK(r == doctest::Approx(4 / (5 * kPi)).epsilon(1e-7));
    auto [l2, r2] = subordination_check({1, 1, 1, 1e4}, q);
    CHECK(l2 <= 1e-4);
    CHECK(r2 <= 1e-4);
    auto [l3, r3] = subordination_check({2, 1, 1.5, 0.7}, q);
    CHECK(std::fabs(l3 - r3) <= std::max(1e-6, 1e-5 * l3));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lg(-1, 1);
    for (int i = 0; i < 20; ++i) {
        const KernelPoint p{2.0, std::pow(10, lg(rng)), std::pow(10, lg(rng)), std::pow(10, lg(rng))};
        auto [a, b] = subordination_check(p, q);
        CHECK(std::fabs(a - b) <= 1e-6);
    }
}

TEST_CASE("reproducing formula against the spectral oracle") {
    const QuadratureSpec q = spec().with_tol(1e-12, 1e-8);
    const SampledFunction zero({1.0}, {0.0}, 1.0);
    CHECK(reproducing_check(1.0, zero, 0.1, q) == 0.0);

    // 2 int t |grad|^2 ... collapses on the Hankel side to the multiplier
    // m(z) = (1 + 2 eps z) e^{-2 eps z} - (1 + 2z/eps) e^{-2z/eps}.
    const double eps = 0.2;
    const SampledFunction f = testfn::gaussian_bump(400);
    const std::vector<double> xs = linspace(0.25, 3.0, 12);
    const std::vector<double> e1{eps};
    const auto direct = reproducing_values(1.0, f, e1, q, xs)[0];
    const std::vector<double> zs = linspace(0.01, 60, 3000);
    const SampledFunction H = hankel_transform(1.0, f, zs, q.with_tol(1e-11, 1e-8));
    std::vector<double> g(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const double z = zs[i];
        g[i] = ((1 + 2 * eps * z) * std::exp(-2 * eps * z) - (1 + 2 * z / eps) * std::exp(-2 * z / eps)) * H.values()[i];
    }
    const SampledFunction spec_r = hankel_transform(1.0, SampledFunction(zs, g, zs.back(), Interp::spline), xs, q);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(direct[i] == doctest::Approx(spec_r.values()[i]).epsilon(1e-5));
}

TEST_CASE("square function") {
    const QuadratureSpec q = spec().with_tol(1e-10, 1e-5);
    const SampledFunction zero({1.0}, {0.0}, 1.0);
    CHECK(square_function_g(1.0, zero, 0.5, 8, q) == 0.0);
    const SampledFunction f = testfn::indicator();
    const double g8 = square_function_g(1.0, f, 0.5, 8, q);
    const double g16 = square_function_g(1.0, f, 0.5, 16, q);
    CHECK(g8 > 0);
    CHECK(std::fabs(g16 / g8 - 1) < 0.02);
    CHECK(square_function_g(1.0, f.scaled(2), 0.5, 8, q) == doctest::Approx(2 * g8).epsilon(1e-10));
}

TEST_CASE("tent functionals") {
    {
        // indicator of [0,1] x [1/2,1]
        const TentFunction F({0.0, 1.0, 2.0}, {0.25, 0.5, 1.0, 2.0}, {0, 1, 0, 0, 0, 0});
        const TentValues v = tent_functionals(F, 0.5);
        CHECK(v.phi == doctest::Approx(std::sqrt(std::log(2.0))).epsilon(1e-12));
    }
    {
        const TentFunction F({0.0, 2.0, 3.0}, {0.5, 1.0, 2.0}, {0, 1, 0, 0});
        CHECK(tent_functionals(F, 1.0).psi == doctest::Approx(1.0).epsilon(1e-12));
    }
    {
        const TentFunction F({0.0, 1.0}, {0.5, 1.0}, {0.0});
        const TentValues v = tent_functionals(F, 0.5);
        CHECK(v.phi == 0.0);
        CHECK(v.psi == 0.0);
    }
    {
        // a finer grid representing the same indicator gives the same Psi
        std::vector<double> y = linspace(0, 3, 31), t = linspace(0.5, 2, 16);
        std::vector<double> v((y.size() - 1) * (t.size() - 1), 0.0);
        for (std::size_t i = 0; i + 1 < y.size(); ++i)
            for (std::size_t j = 0; j + 1 < t.size(); ++j)
                if (y[i + 1] <= 2 + 1e-12 && t[j] >= 1 - 1e-12) v[i * (t.size() - 1) + j] = 1;
        CHECK(tent_functionals(TentFunction(y, t, v), 1.0).psi == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("gradient bound check") {
    const QuadratureSpec q = spec();
    std::vector<std::pair<double, double>> grid;
    for (double x : logspace(1e-2, 10, 6))
        for (double t : logspace(1e-2, 10, 6)) grid.emplace_back(x, t);
    const SampledFunction zero({1.0}, {0.0}, 1.0);
    CHECK(gradient_bound_check(1.0, zero, grid, q).max == 0.0);
    const SampledFunction f = testfn::indicator();
    const double a = gradient_bound_check(1.0, f, grid, q).max;
    CHECK(std::isfinite(a));
    CHECK(gradient_bound_check(1.0, f.scaled(2), grid, q).max == doctest::Approx(2 * a).epsilon(1e-10));
}
