#pragma once

#include "bh/carleson.hpp"
#include "bh/quadrature.hpp"
#include "bh/sampled.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bh {

// Candidate intervals for the BMO sups. Intervals have both ends on `grid`
// (at most max_pairs of them, thinned by a uniform index stride), plus every
// prefix (0, grid[i]]. f is taken as its piecewise-linear interpolant on grid.
struct IntervalFamily {
    std::vector<double> grid;
    std::size_t max_pairs = 200000;
    // BMO(P^lambda) only: number of interval lengths and of grid points used.
    std::size_t plambda_lengths = 24;
    std::size_t plambda_points = 401;
};

// Uniform grid over [0, extent] with the given step.
IntervalFamily uniform_family(double extent, double step);

struct BmoParts {
    double oscillation = 0;  // sup_I (1/|I|) int_I |f - f_I|
    double prefix = 0;       // sup_a (1/a) int_0^a |f|
    double norm() const { return oscillation > prefix ? oscillation : prefix; }
};

BmoParts bmo_o_parts(const SampledFunction& f, const IntervalFamily& family);
double bmo_o_norm(const SampledFunction& f, const IntervalFamily& family);
// Same, from values already sampled on family.grid.
BmoParts bmo_o_parts(std::span<const double> grid, std::span<const double> values, std::size_t max_pairs);

// sup_I (1/|I|) int_I |f - P_{|I|} f|.
double bmo_plambda_norm(double lambda, const SampledFunction& f, const IntervalFamily& family,
                        const QuadratureSpec& q);

// f_o(x) = sign(x) f(|x|).
class OddExtension {
public:
    explicit OddExtension(SampledFunction f);
    double operator()(double x) const;
    // Mirrored grid: -g_n, ..., -g_0, 0, g_0, ..., g_n.
    const std::vector<double>& grid() const { return grid_; }
    // Trapezoid rule over the mirrored grid points inside [a, b].
    double integral(double a, double b) const;

private:
    SampledFunction f_;
    std::vector<double> grid_;
};

OddExtension odd_extension(const SampledFunction& f);

enum class AtomKind { step, oscillating };

struct OddAtom {
    AtomKind kind;
    double a, b;  // (0, delta) for step atoms
    SampledFunction payload;

    // Throws DomainError when the size, support or mean condition fails.
    void validate() const;
};

// (1/delta) chi_(0,delta).
OddAtom step_atom(double delta);
// Haar-type atom: +1/|I| on the left half of I = (a, b), -1/|I| on the right half.
OddAtom haar_atom(double a, double b);

// Cell-wise discretization of |t d/dt P_t f(y)|^2 dy dt / t: one atom per cell
// at the cell center.
DiscreteMeasure theorem_a_measure(double lambda, const SampledFunction& f, std::span<const double> y_edges,
                                  std::span<const double> t_edges, const QuadratureSpec& q);

struct NormRow {
    std::string function_id;
    double bmo_o, bmo_plambda, sqrt_carleson_mu_f;
};
void write_norm_report(std::ostream& os, const std::vector<NormRow>& rows, const std::string& header_comment = {});

}  // namespace bh
