#pragma once

#include "bh/sampled.hpp"

#include <string>
#include <vector>

namespace bh::testfn {

// chi_(0,a), exact in step mode.
SampledFunction indicator(double a = 1.0);
// chi_(0,a) sampled on a uniform grid with spacing h over (0, extent].
SampledFunction indicator_sampled(double a, double h, double extent);
// 1 - |2y - 1| on (0, 1), piecewise linear.
SampledFunction triangle();
// log(1/max(y, cap)) on (0, 1), linear on a geometric grid of n points.
SampledFunction log_capped(double cap = 1e-3, std::size_t n = 60);
// e^{-8(y-1)^2} on (0, 4], spline.
SampledFunction gaussian_bump(std::size_t n = 800);
// y^lambda e^{-a y^2}, spline on (0, extent].
SampledFunction power_gaussian(double lambda, double a, double extent = 12.0, std::size_t n = 2400);
// y^lambda (lambda + 1/2 - y^2) e^{-y^2/2}: h_lambda maps it to its negative.
SampledFunction laguerre1(double lambda, double extent = 12.0, std::size_t n = 2400);
// y^lambda on (0, R] with the matching power tail.
SampledFunction power(double lambda, double R = 50.0, std::size_t n = 2000);

// Named family used by the CLI and the acceptance runner.
SampledFunction by_name(const std::string& name, double lambda);
std::vector<std::string> names();

}  // namespace bh::testfn
