#pragma once

namespace bh {

// Order of a Bessel function, nu > -1/2.
struct Order {
    double nu;
    explicit Order(double v);
};

// J_nu uses the power series below bessel_j_series_limit(), backward
// recurrence up to bessel_j_crossover(nu) and the Hankel asymptotic expansion
// beyond. Both switch points come from the overlap tests in
// tests/test_specfun.cpp.
double bessel_j_series_limit();
double bessel_j_crossover(double nu);
// Same for the scaled I_nu.
double bessel_i_crossover(double nu);

// J_nu(z), z >= 0.
double bessel_j(Order order, double z);
long double bessel_j_ld(Order order, long double z);

// Branches exposed for the overlap test.
long double bessel_j_series(double nu, long double z);
long double bessel_j_asymptotic(double nu, long double z);
long double bessel_j_recurrence(double nu, long double z);

// e^{-z} I_nu(z), z >= 0. Never overflows.
double bessel_i_scaled(Order order, double z);
// I_nu(z); throws RangeError when the result overflows (z beyond ~700).
double bessel_i(Order order, double z);

long double bessel_i_scaled_series(double nu, long double z);
long double bessel_i_scaled_asymptotic(double nu, long double z);

}  // namespace bh
