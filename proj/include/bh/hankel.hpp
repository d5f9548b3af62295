#pragma once

#include "bh/quadrature.hpp"
#include "bh/sampled.hpp"

#include <span>

namespace bh {

// h_lambda(f)(x) = int sqrt(xy) J_{lambda-1/2}(xy) f(y) dy on out_grid;
// order_offset = 1 gives h_{lambda+1}. Returned as a spline-interpolated
// function with support bound out_grid.back().
SampledFunction hankel_transform(double lambda, const SampledFunction& f, std::span<const double> out_grid,
                                 const QuadratureSpec& q, int order_offset = 0);

// L2 norm of the interpolant on (0, end], by adaptive quadrature.
double l2_norm(const SampledFunction& f, const QuadratureSpec& q);
// L2 norm of f - g over (0, max end].
double l2_distance(const SampledFunction& f, const SampledFunction& g, const QuadratureSpec& q);

// sup_z |sqrt(z) J_{lambda-1/2}(z)| on a log grid over [1e-6, 1e4].
double sqrt_bessel_sup(double lambda, double grid_ratio = 1.001);

}  // namespace bh
