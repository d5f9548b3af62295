#pragma once

#include "bh/kernels.hpp"
#include "bh/quadrature.hpp"
#include "bh/sampled.hpp"

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace bh {

enum class PoissonVariant { value, dt, dlam_x };

// P_t f, d/dt P_t f or D_{lambda,x} P_t f on out_grid. A power tail on f is
// integrated in closed form for lambda = 1 (value) and by quadrature on the
// mapped half line y = R/s otherwise.
SampledFunction apply_poisson(double lambda, double t, const SampledFunction& f, std::span<const double> out_grid,
                              const QuadratureSpec& q, PoissonVariant variant = PoissonVariant::value);

struct PoissonAction {
    double u, dt, dlam_x;
};
// All three at one point, from a single vector-valued quadrature.
PoissonAction poisson_action(double lambda, double x, double t, const SampledFunction& f, const QuadratureSpec& q);

SampledFunction apply_heat(double lambda, double t, const SampledFunction& f, std::span<const double> out_grid,
                           const QuadratureSpec& q);

// lhs = P_t(x,y); rhs = (1/sqrt(pi)) int_0^inf e^{-u} u^{-1/2} W_{t^2/(4u)}(x,y) du.
std::pair<double, double> subordination_check(const KernelPoint& p, const QuadratureSpec& q);

// || f - 2 int_eps^{1/eps} int t grad P_t(x,.) . grad P_t f dy dt || / ||f|| on x_grid
// (discrete L2, trapezoid weights). An empty x_grid means 120 points over (0, f.end()].
double reproducing_check(double lambda, const SampledFunction& f, double eps, const QuadratureSpec& q,
                         std::span<const double> x_grid = {});
// Several eps values in one pass; the t-integrals for the smaller eps reuse
// the panels of the larger ones.
std::vector<double> reproducing_check_multi(double lambda, const SampledFunction& f, std::span<const double> eps,
                                            const QuadratureSpec& q, std::span<const double> x_grid = {});
// The reconstructed function 2 int ... on x_grid, for each eps.
std::vector<std::vector<double>> reproducing_values(double lambda, const SampledFunction& f,
                                                    std::span<const double> eps, const QuadratureSpec& q,
                                                    std::span<const double> x_grid);

// Area integral over the cone {|x-y| < t, t_lo <= t <= cone_cap}, t_lo = 1e-4 min(x, cone_cap).
double square_function_g(double lambda, const SampledFunction& f, double x, double cone_cap, const QuadratureSpec& q);

// Piecewise-constant function on cells [y_edges[i], y_edges[i+1]) x [t_edges[j], t_edges[j+1]).
struct TentFunction {
    std::vector<double> y_edges, t_edges;
    std::vector<double> values;  // (ny-1) x (nt-1), row-major in y

    TentFunction(std::vector<double> y, std::vector<double> t, std::vector<double> v);
    std::size_t ny() const { return y_edges.size() - 1; }
    std::size_t nt() const { return t_edges.size() - 1; }
    double at(std::size_t i, std::size_t j) const { return values[i * nt() + j]; }
    void write_csv(std::ostream& os) const;  // (y, t, value) at cell centers
};

struct TentValues {
    double phi, psi;
};
// Phi: max over candidate intervals I containing x (endpoints on y_edges, plus
// intervals centered at x with lengths from t_edges) of
// ((1/|I|) int_0^{|I|} int_I |F|^2 dy dt/t)^{1/2}; +inf once it exceeds ceiling.
// Psi: (int over {|x-y|<t} |F|^2 dy dt/t^2)^{1/2}, exact for the cell representation.
TentValues tent_functionals(const TentFunction& F, double x, double ceiling = 1e12);

struct GradientBoundReport {
    double max = 0;
    std::vector<std::size_t> failed;
};
// max over (x, t) of t (|d/dt P_t f(x)| + |D_{lambda,x} P_t f(x)|).
GradientBoundReport gradient_bound_check(double lambda, const SampledFunction& f,
                                         std::span<const std::pair<double, double>> grid, const QuadratureSpec& q);

}  // namespace bh
