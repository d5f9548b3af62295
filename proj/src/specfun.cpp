#include "bh/specfun.hpp"

#include "bh/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace bh {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

void check_arg(long double z, const char* who) {
    if (!std::isfinite(z) || z < 0)
        throw DomainError(std::string(who) + ": argument must be finite and >= 0");
}

}  // namespace

Order::Order(double v) : nu(v) {
    if (!std::isfinite(v) || v <= -0.5) throw DomainError("Bessel order must be finite and > -1/2");
}

// The series loses about log10(e^z / sqrt(z)) digits to cancellation, so it
// is used only below 12. The Hankel expansion needs z well above nu^2/2 before
// its smallest term drops below 1e-18. Between the two, Miller's backward
// recurrence has no cancellation problem.
double bessel_j_series_limit() { return 12.0; }
double bessel_j_crossover(double nu) { return 20.0 + nu * nu; }

double bessel_i_crossover(double nu) { return 30.0 + 0.5 * nu * nu; }

long double bessel_j_series(double nu, long double z) {
    if (z == 0) return nu == 0 ? 1.0L : 0.0L;
    const long double q = -z * z / 4;
    long double term = std::pow(z / 2, static_cast<long double>(nu)) / std::tgamma(static_cast<long double>(nu) + 1);
    long double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        if (std::fabs(term) <= std::numeric_limits<long double>::epsilon() * 1e-2L * std::fabs(sum) &&
            k > z)
            break;
    }
    return sum;
}

namespace {

// Hankel expansion pieces: returns (P, Q) with
// J_nu(z) = sqrt(2/(pi z)) (P cos chi - Q sin chi).
void hankel_pq(double nu, long double z, long double& P, long double& Q) {
    const long double mu = 4.0L * nu * nu;
    long double a = 1;  // a_k(nu) / z^k
    P = 1;
    Q = 0;
    long double prev = std::numeric_limits<long double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const long double odd = 2 * k - 1;
        a *= (mu - odd * odd) / (k * 8.0L * z);
        const long double mag = std::fabs(a);
        if (mag > prev) break;  // series started to diverge
        prev = mag;
        // sign pattern: P gets (-1)^{k/2} for even k, Q gets (-1)^{(k-1)/2} for odd k
        switch (k % 4) {
            case 0: P += a; break;
            case 1: Q += a; break;
            case 2: P -= a; break;
            case 3: Q -= a; break;
        }
        if (mag < std::numeric_limits<long double>::epsilon() * 1e-3L) break;
        if (a == 0) break;
    }
}

}  // namespace

long double bessel_j_asymptotic(double nu, long double z) {
    long double P, Q;
    hankel_pq(nu, z, P, Q);
    const long double chi = z - (nu / 2 + 0.25L) * kPi;
    return std::sqrt(2 / (kPi * z)) * (P * std::cos(chi) - Q * std::sin(chi));
}

long double bessel_j_recurrence(double nu, long double z) {
    if (z == 0) return nu == 0 ? 1.0L : 0.0L;
    // Downward recurrence J_{v-1} = (2v/z) J_v - J_{v+1} from a far order,
    // normalized by (z/2)^nu = sum_k c_k J_{nu+2k}(z) with
    // c_0 = Gamma(nu+1), c_k = (nu+2k) Gamma(nu+k)/k!.
    int m = static_cast<int>(z + 40 + std::sqrt(40 * z));
    if (m % 2) ++m;
    long double jp = 0, j = 1e-300L, norm = 0;
    long double r = 0;  // Gamma(nu+k)/k! at k = m/2, built downward below
    // r_k for k = m/2 via lgamma to avoid a second pass
    const int kmax = m / 2;
    r = std::exp(std::lgamma(static_cast<long double>(nu) + kmax) - std::lgamma(static_cast<long double>(kmax) + 1));
    for (int i = m; i > 0; --i) {
        if (i % 2 == 0) {
            const int k = i / 2;
            norm += (nu + 2 * k) * r * j;
            r *= k / (nu + k - 1);  // Gamma(nu+k-1)/(k-1)!
        }
        const long double jm = 2 * (nu + i) / z * j - jp;
        jp = j;
        j = jm;
    }
    norm += std::tgamma(static_cast<long double>(nu) + 1) * j;
    return j * std::pow(z / 2, static_cast<long double>(nu)) / norm;
}

long double bessel_j_ld(Order order, long double z) {
    check_arg(z, "bessel_j");
    if (z < bessel_j_series_limit()) return bessel_j_series(order.nu, z);
    if (z < bessel_j_crossover(order.nu)) return bessel_j_recurrence(order.nu, z);
    return bessel_j_asymptotic(order.nu, z);
}

double bessel_j(Order order, double z) { return static_cast<double>(bessel_j_ld(order, z)); }

long double bessel_i_scaled_series(double nu, long double z) {
    if (z == 0) return nu == 0 ? 1.0L : 0.0L;
    const long double q = z * z / 4;
    // log of the leading term keeps (z/2)^nu e^{-z} representable
    long double term = std::exp(nu * std::log(z / 2) - z - std::lgamma(static_cast<long double>(nu) + 1));
    long double sum = term;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        if (term <= std::numeric_limits<long double>::epsilon() * 1e-2L * sum && k > z / 2) break;
    }
    return sum;
}

long double bessel_i_scaled_asymptotic(double nu, long double z) {
    // e^{-z} I_nu(z) ~ (2 pi z)^{-1/2} sum_k (-1)^k a_k(nu) / z^k; the
    // e^{-2z} companion series is below long double resolution here.
    const long double mu = 4.0L * nu * nu;
    long double a = 1, sum = 1;
    long double prev = std::numeric_limits<long double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const long double odd = 2 * k - 1;
        a *= -(mu - odd * odd) / (k * 8.0L * z);
        const long double mag = std::fabs(a);
        if (mag > prev) break;
        prev = mag;
        sum += a;
        if (mag < std::numeric_limits<long double>::epsilon() * 1e-3L || a == 0) break;
    }
    return sum / std::sqrt(2 * kPi * z);
}

double bessel_i_scaled(Order order, double z) {
    check_arg(z, "bessel_i");
    if (z < bessel_i_crossover(order.nu)) return static_cast<double>(bessel_i_scaled_series(order.nu, z));
    return static_cast<double>(bessel_i_scaled_asymptotic(order.nu, z));
}

double bessel_i(Order order, double z) {
    const double s = bessel_i_scaled(order, z);
    const long double v = static_cast<long double>(s) * std::exp(static_cast<long double>(z));
    if (!(v <= std::numeric_limits<double>::max()))
        throw RangeError("bessel_i: I_nu(" + std::to_string(z) + ") overflows double; use bessel_i_scaled");
    return static_cast<double>(v);
}

}  // namespace bh
