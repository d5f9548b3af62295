#include <doctest.h>

#include "bh/carleson.hpp"
#include "bh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace bh;

namespace {

// Atoms on the lattice 2^-6 Z. Every optimal closed interval then has its
// left end and its length on that lattice, so scanning a finer lattice is exact.
DiscreteMeasure lattice_measure(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> yi(1, 128), ti(1, 64), ni(1, n);
    std::uniform_real_distribution<double> w(-1, 1);
    DiscreteMeasure mu;
    const int m = ni(rng);
    for (int k = 0; k < m; ++k) mu.add({yi(rng) / 64.0, ti(rng) / 64.0, w(rng)});
    return mu;
}

double brute_force(const DiscreteMeasure& mu) {
    constexpr double h = 1.0 / 256;
    double best = 0;
    for (int l = 1; l <= 3 * 256; ++l) {
        const double L = l * h;
        for (int i = 0; i <= 3 * 256; ++i) {
            const double a = i * h;
            double s = 0;
            for (const Atom& x : mu.atoms())
                if (x.y >= a && x.y <= a + L && x.t <= L) s += std::fabs(x.w);
            best = std::max(best, s / L);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("carleson norm examples") {
    CHECK(carleson_norm(DiscreteMeasure{}) == 0.0);
    CHECK(carleson_norm(DiscreteMeasure({{1, 0.5, 2}})) == doctest::Approx(4).epsilon(1e-15));
    const DiscreteMeasure two({{1, 0.5, 1}, {1.4, 0.5, 1}});
    CHECK(carleson_norm(two) == doctest::Approx(4).epsilon(1e-15));
    CHECK(carleson_norm(two.scaled(-3.5)) == doctest::Approx(3.5 * 4).epsilon(1e-12));
    // the span of the two atoms is longer than their heights
    CHECK(carleson_norm(DiscreteMeasure({{1, 0.1, 1}, {2, 0.1, 1}})) == doctest::Approx(10).epsilon(1e-15));
    // the best box has length 0.6 and holds the two right-hand atoms
    CHECK(carleson_norm(DiscreteMeasure({{1, 0.6, 1}, {1.5, 0.6, 1}, {2, 0.6, 2}})) ==
          doctest::Approx(3 / 0.6).epsilon(1e-15));
    CHECK_THROWS_AS(DiscreteMeasure({{0, 1, 1}}), DomainError);
    CHECK_THROWS_AS(DiscreteMeasure({{1, 1, NAN}}), DomainError);
}

TEST_CASE("carleson norm agrees with a brute-force scan") {
    std::mt19937_64 rng(20240611);
    for (int k = 0; k < 25; ++k) {
        const DiscreteMeasure mu = lattice_measure(rng, 10);
        CHECK(std::fabs(carleson_norm(mu) - brute_force(mu)) <= 1e-9);
    }
}

TEST_CASE("carleson norm is monotone under adding positive atoms") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 2);
    for (int k = 0; k < 50; ++k) {
        DiscreteMeasure mu;
        for (int i = 0; i < 8; ++i) mu.add({u(rng), u(rng), u(rng)});
        const double before = carleson_norm(mu);
        mu.add({u(rng), u(rng), u(rng)});
        CHECK(carleson_norm(mu) >= before);
    }
}

TEST_CASE("measure csv round trip") {
    const DiscreteMeasure mu({{1, 0.5, 2}, {0.3, 1e-3, -1.0 / 3}});
    std::stringstream ss;
    mu.write_csv(ss, "test");
    const DiscreteMeasure back = DiscreteMeasure::read_csv(ss);
    REQUIRE(back.size() == 2);
    CHECK(back.atoms()[1].w == mu.atoms()[1].w);
    CHECK(back.atoms()[1].t == mu.atoms()[1].t);
    std::istringstream bad("y,t,w\n1,2\n");
    CHECK_THROWS_AS(DiscreteMeasure::read_csv(bad), UsageError);
}

TEST_CASE("balayage") {
    QuadratureSpec q;
    const DiscreteMeasure a({{1, 1, std::numbers::pi}});
    CHECK(balayage_poisson(1, a, 1, q) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(balayage_poisson(1, DiscreteMeasure{}, 1, q) == 0.0);
    CHECK(balayage_heat(1, DiscreteMeasure{}, 1, q) == 0.0);
    const double h = balayage_heat(1, DiscreteMeasure({{1, 1, 1}}), 1, q);
    CHECK(h == doctest::Approx((1 - std::exp(-1.0)) / std::sqrt(4 * std::numbers::pi)).epsilon(1e-12));
    CHECK(std::fabs(h - 0.178326) < 2e-5);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.05, 2);
    DiscreteMeasure m1, m2, both;
    for (int i = 0; i < 6; ++i) {
        const Atom x{u(rng), u(rng), u(rng) - 1};
        const Atom y{u(rng), u(rng), u(rng)};
        m1.add(x), m2.add(y), both.add(x), both.add(y);
    }
    for (double x : {0.1, 0.7, 3.0}) {
        CHECK(balayage_poisson(2, both, x, q) ==
              doctest::Approx(balayage_poisson(2, m1, x, q) + balayage_poisson(2, m2, x, q)).epsilon(1e-12));
        CHECK(balayage_poisson(2, m2, x, q) >= 0);
    }
}

TEST_CASE("Poisson balayage is the subordinated heat balayage") {
    QuadratureSpec q;
    for (double lambda : {1.0, 2.0}) {
        const Atom a0{0.8, 0.6, 1.7};
        for (double x : {0.3, 1.0, 2.5}) {
            const double lhs = balayage_poisson(lambda, DiscreteMeasure({a0}), x, q);
            auto g = [&](double s) {
                const DiscreteMeasure m({{a0.y, a0.t * a0.t / (4 * s * s), a0.w}});
                return 2 / std::sqrt(std::numbers::pi) * std::exp(-s * s) * balayage_heat(lambda, m, x, q);
            };
            const double rhs = integrate_scalar(g, std::vector<double>{1e-300, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2, 8}, q);
            CHECK(std::fabs(lhs - rhs) <= 1e-5);
        }
    }
}

TEST_CASE("balayage BMO check") {
    QuadratureSpec q;
    const BalayageBmo e = check_balayage_bmo(1, DiscreteMeasure{}, q);
    CHECK(e.bmo_est == 0);
    CHECK(e.cnorm == 0);
    CHECK(e.ratio == 0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> y(0.1, 2), t(0.05, 1), w(0, 1);
    DiscreteMeasure mu;
    for (int i = 0; i < 20; ++i) mu.add({y(rng), t(rng), w(rng)});
    const BalayageBmo r = check_balayage_bmo(1, mu, q, 300);
    CHECK(std::isfinite(r.ratio));
    CHECK(r.ratio > 0);
    CHECK(check_balayage_bmo(1, mu.scaled(3), q, 300).ratio == doctest::Approx(r.ratio).epsilon(1e-10));
}
