#include <doctest.h>

#include "bh/errors.hpp"
#include "bh/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <limits>
#include <numbers>

using namespace bh;

namespace {

constexpr double kPi = std::numbers::pi;

// Envelope of J_nu for z beyond the first few zeros.
double envelope(double z) { return std::sqrt(2.0 / (kPi * std::max(z, 1.0))); }

}  // namespace

TEST_CASE("J_1/2 reduces to the sine formula") {
    CHECK(bessel_j(Order(0.5), kPi / 2) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    CHECK(bessel_j(Order(0.5), 0.0) == 0.0);
    CHECK(bessel_j(Order(0.5), 1.0) == doctest::Approx(std::sqrt(2.0 / kPi) * std::sin(1.0)).epsilon(1e-12));
    CHECK(bessel_j(Order(0.5), 1.0) == doctest::Approx(0.671397).epsilon(1e-6));

    double worst = 0;
    for (double z = 1e-4; z < 200; z *= 1.013) {
        const double ref = std::sqrt(2.0 / (kPi * z)) * std::sin(z);
        worst = std::max(worst, std::fabs(bessel_j(Order(0.5), z) - ref) / envelope(z));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("I_1/2 reduces to the sinh formula") {
    CHECK(bessel_i(Order(0.5), 1.0) == doctest::Approx(0.937674).epsilon(1e-6));
    CHECK(bessel_i(Order(0.5), 2.0) == doctest::Approx(std::sinh(2.0) / std::sqrt(kPi)).epsilon(1e-12));
    CHECK(bessel_i(Order(0.5), 2.0) == doctest::Approx(2.046236).epsilon(1e-6));
    CHECK(bessel_i(Order(0.5), 0.0) == 0.0);
    double worst = 0;
    for (double z = 1e-4; z < 700; z *= 1.02) {
        const double ref = std::sqrt(2.0 / (kPi * z)) * 0.5 * -std::expm1(-2 * z);
        worst = std::max(worst, std::fabs(bessel_i_scaled(Order(0.5), z) / ref - 1));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("J_nu agrees with Boost on the supported range") {
    for (double nu : {0.0, 0.25, 1.5, 3.0, 4.5, 5.5}) {
        double worst = 0;
        for (double z = 1e-3; z <= 50 * (1 + nu); z *= 1.01) {
            const double ref = boost::math::cyl_bessel_j(nu, z);
            worst = std::max(worst, std::fabs(bessel_j(Order(nu), z) - ref) / std::max(std::fabs(ref), 1e-2 * envelope(z)));
        }
        INFO("nu = " << nu);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("scaled I_nu agrees with Boost") {
    for (double nu : {0.0, 0.5, 1.5, 3.0, 5.5}) {
        double worst = 0;
        for (double z = 1e-3; z <= 600; z *= 1.02) {
            const double ref = boost::math::cyl_bessel_i(nu, z) * std::exp(-z);
            worst = std::max(worst, std::fabs(bessel_i_scaled(Order(nu), z) / ref - 1));
        }
        INFO("nu = " << nu);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("J_nu branches overlap at both switch points") {
    for (double nu : {0.0, 0.5, 1.5, 3.0, 5.5}) {
        INFO("nu = " << nu);
        auto gap = [&](auto f, auto g, double lo, double hi) {
            double worst = 0;
            for (double z = lo; z <= hi; z += 0.01)
                worst = std::max(worst, static_cast<double>(std::fabs(f(nu, z) - g(nu, z))) / envelope(z));
            return worst;
        };
        const double zs = bessel_j_series_limit(), zc = bessel_j_crossover(nu);
        CHECK(gap(bessel_j_series, bessel_j_recurrence, zs - 2, zs + 2) < 1e-9);
        CHECK(gap(bessel_j_recurrence, bessel_j_asymptotic, zc - 2, zc + 2) < 1e-9);
        if (nu <= 1.5) CHECK(gap(bessel_j_series, bessel_j_asymptotic, 18, 22) < 1e-9);

        const double zi = bessel_i_crossover(nu);
        double worst_i = 0;
        for (double z = zi - 2; z <= zi + 2; z += 0.01) {
            const long double a = bessel_i_scaled_series(nu, z), b = bessel_i_scaled_asymptotic(nu, z);
            worst_i = std::max(worst_i, static_cast<double>(std::fabs(a / b - 1)));
        }
        CHECK(worst_i < 1e-9);
    }
}

TEST_CASE("sqrt(z) J_nu(z) is bounded") {
    for (double nu : {0.5, 1.5, 3.0}) {
        auto sup = [&](double ratio) {
            double m = 0;
            for (double z = 1e-6; z <= 1e4; z *= ratio) m = std::max(m, std::fabs(std::sqrt(z) * bessel_j(Order(nu), z)));
            return m;
        };
        const double coarse = sup(1.002), fine = sup(1.001);
        CHECK(std::isfinite(coarse));
        CHECK(std::fabs(fine / coarse - 1) < 0.01);
    }
}

TEST_CASE("special function errors") {
    CHECK_THROWS_AS(bessel_j(Order(0.5), std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(bessel_j(Order(0.5), -1.0), DomainError);
    CHECK_THROWS_AS(Order(-0.5), DomainError);
    CHECK_THROWS_AS(bessel_i(Order(0.5), 800.0), RangeError);
    CHECK(std::isfinite(bessel_i_scaled(Order(0.5), 800.0)));
}
