#include <doctest.h>

#include "bh/errors.hpp"
#include "bh/spaces.hpp"
#include "bh/testfuncs.hpp"

#include <cmath>
#include <random>

using namespace bh;

TEST_CASE("BMO_o norm of the indicator") {
    const IntervalFamily fam = uniform_family(4, 1e-3);
    const SampledFunction zero({1.0}, {0.0}, 1.0);
    CHECK(bmo_o_norm(zero, fam) == 0.0);
    const SampledFunction f = testfn::indicator();
    const BmoParts p = bmo_o_parts(f, fam);
    CHECK(std::fabs(p.norm() - 1) <= 1e-2);
    CHECK(p.prefix > p.oscillation);
    CHECK(p.oscillation <= 0.5 + 1e-9);
    CHECK(p.oscillation >= 0.45);
    CHECK(bmo_o_norm(f.scaled(-2.5), fam) == doctest::Approx(2.5 * p.norm()).epsilon(1e-12));
}

TEST_CASE("BMO_o estimate grows with the candidate family") {
    const SampledFunction f = testfn::log_capped();
    IntervalFamily small = uniform_family(2, 1e-2);
    small.max_pairs = 500;
    IntervalFamily big = small;
    big.max_pairs = 20000;
    CHECK(bmo_o_norm(f, big) >= bmo_o_norm(f, small));
    // the oscillation of the interpolant of a monotone function on a single
    // interval is computed exactly: linear f on [0,1] has (1/|I|)int|f - f_I| = |I|/4
    const SampledFunction lin({1e-9, 1.0}, {1e-9, 1.0}, 1.0);
    IntervalFamily u = uniform_family(1, 0.5);
    CHECK(bmo_o_parts(lin, u).oscillation == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("BMO(P^lambda) estimate") {
    QuadratureSpec q;
    q.rel_tol = 1e-8;
    IntervalFamily fam = uniform_family(4, 1e-2);
    fam.plambda_points = 101;
    fam.plambda_lengths = 10;
    const SampledFunction zero({1.0}, {0.0}, 1.0);
    CHECK(bmo_plambda_norm(1, zero, fam, q) == 0.0);
    const SampledFunction f = testfn::indicator();
    const double v = bmo_plambda_norm(1, f, fam, q);
    const double ratio = v / bmo_o_norm(f, fam);
    CHECK(ratio >= 0.05);
    CHECK(ratio <= 20);
    CHECK(bmo_plambda_norm(1, f.scaled(-3), fam, q) == doctest::Approx(3 * v).epsilon(1e-10));
}

TEST_CASE("odd extension") {
    const OddExtension fo = odd_extension(testfn::indicator());
    CHECK(fo(-0.5) == -1.0);
    CHECK(fo(0.5) == 1.0);
    CHECK(fo(0.0) == 0.0);
    const OddExtension z = odd_extension(SampledFunction({1.0}, {0.0}, 1.0));
    for (double x : {-2.0, -0.5, 0.0, 0.3}) CHECK(z(x) == 0.0);
    const OddExtension g = odd_extension(testfn::gaussian_bump());
    for (double a : {0.1, 0.77, 1.0, 3.3, 10.0}) {
        CHECK(std::fabs(g.integral(-a, a)) <= 1e-12);
        CHECK(g(-a) == -g(a));
    }
    CHECK(g.grid().size() == 2 * testfn::gaussian_bump().size() + 1);
}

TEST_CASE("odd atoms") {
    for (double d : {0.1, 1.0, 3.0}) {
        const OddAtom s = step_atom(d);
        CHECK_NOTHROW(s.validate());
        // prefix averages (1/a) int_0^a |atom| = min(a, d) / (a d) <= 1/d
        for (double a : {0.25 * d, d, 4 * d}) {
            const double avg = std::min(a, d) / (a * d);
            CHECK(avg <= 1 / d * std::min(a, d) / a + 1e-15);
            CHECK(avg <= 1 / std::min(a, d) + 1e-15);
        }
    }
    CHECK_NOTHROW(haar_atom(0.5, 2.0).validate());
    CHECK_NOTHROW(haar_atom(0.0, 0.25).validate());
    CHECK(haar_atom(0.5, 2.0).payload(0.25) == 0.0);
    CHECK(haar_atom(0.5, 2.0).payload(0.75) == doctest::Approx(1 / 1.5));
    CHECK(haar_atom(0.5, 2.0).payload(1.5) == doctest::Approx(-1 / 1.5));

    OddAtom bad = haar_atom(0.5, 2.0);
    bad.payload = bad.payload.scaled(2);
    CHECK_THROWS_AS(bad.validate(), DomainError);
    OddAtom biased{AtomKind::oscillating, 0.5, 2.0, SampledFunction({0.25, 0.5}, {0.0, 0.5}, 2.0, Interp::step)};
    CHECK_THROWS_AS(biased.validate(), DomainError);
    OddAtom wide = step_atom(1.0);
    wide.payload = SampledFunction({2.0}, {1.0}, 2.0, Interp::step);
    CHECK_THROWS_AS(wide.validate(), DomainError);
}

TEST_CASE("Theorem A measure") {
    QuadratureSpec q;
    const std::vector<double> ye = linspace(0, 2, 21), te = linspace(0, 2, 21);
    const SampledFunction zero({1.0}, {0.0}, 1.0);
    CHECK(theorem_a_measure(1, zero, ye, te, q).empty());
    const SampledFunction f = testfn::indicator();
    const DiscreteMeasure m1 = theorem_a_measure(1, f, ye, te, q);
    const DiscreteMeasure m2 = theorem_a_measure(1, f.scaled(2), ye, te, q);
    REQUIRE(m1.size() == m2.size());
    for (std::size_t i = 0; i < m1.size(); ++i)
        CHECK(m2.atoms()[i].w == doctest::Approx(4 * m1.atoms()[i].w).epsilon(1e-10));
    CHECK(std::isfinite(m1.total_variation()));
    const double c1 = carleson_norm(m1);
    const double c2 = carleson_norm(theorem_a_measure(1, f, linspace(0, 2, 41), linspace(0, 2, 41), q));
    CHECK(c1 > 0);
    CHECK(std::fabs(c2 / c1 - 1) <= 0.1);
}
