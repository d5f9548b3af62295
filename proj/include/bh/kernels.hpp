#pragma once

#include "bh/quadrature.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bh {

struct KernelPoint {
    double lambda, x, y, t;
    void validate() const;
};

enum class PoissonMethod { theta_integral, spectral };

// P_t^lambda(x, y).
double poisson_kernel(const KernelPoint& p, const QuadratureSpec& q,
                      PoissonMethod method = PoissonMethod::theta_integral);

struct KernelGrad {
    double dt;      // d/dt P
    double dlam_x;  // x^lambda d/dx (x^-lambda P)
};
KernelGrad poisson_kernel_grad(const KernelPoint& p, const QuadratureSpec& q);

// Value and all first derivatives from one pass of the theta integral.
struct PoissonBundle {
    double p, dt, dlam_x, dlam_y;
};
PoissonBundle poisson_bundle(const KernelPoint& p, const QuadratureSpec& q);

// W_t^lambda(x, y) through the scaled modified Bessel function.
double heat_kernel(const KernelPoint& p, const QuadratureSpec& q);

// (1/pi) t / (u^2 + t^2).
double classical_poisson(double t, double u);

struct BoundReport {
    struct Row {
        std::string inequality;  // "r2", "r3" or "r4"
        std::size_t grid_point;
        double ratio;
    };
    std::vector<Row> rows;
    double max_r2 = 0, max_r3 = 0, max_r4 = 0;
    std::vector<std::size_t> failed;  // points whose quadrature did not converge

    void write_csv(std::ostream& os) const;
};

// Maxima of r2 = P ((x-y)^2+t^2)^{lambda+1} / (t (xy)^lambda),
// r3 = P ((x-y)^2+t^2) / t and r4 = t (|dt P| + |D_x P|) / P.
BoundReport verify_kernel_bounds(double lambda, std::span<const KernelPoint> grid, const QuadratureSpec& q);

}  // namespace bh
