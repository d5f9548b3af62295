#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bh {

enum class Interp { linear, step, spline };

// f(y) = coefficient * y^exponent for y > support_bound.
struct PowerTail {
    double exponent;
    double coefficient;
};

// A function on (0, inf) given by samples.
//  - below grid[0] the function is the constant values[0];
//  - linear/spline: interpolates on [grid[0], grid.back()], zero after;
//  - step: f = values[i] on [grid[i], grid[i+1]), the last cell runs to support_bound;
//  - zero beyond support_bound, unless a power tail is attached.
class SampledFunction {
public:
    SampledFunction() = default;
    SampledFunction(std::vector<double> grid, std::vector<double> values, double support_bound,
                    Interp mode = Interp::linear);

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double support_bound() const { return support_; }
    Interp mode() const { return mode_; }
    const std::optional<PowerTail>& tail() const { return tail_; }
    std::size_t size() const { return grid_.size(); }
    bool empty() const { return grid_.empty(); }

    SampledFunction& with_tail(PowerTail t);

    // Interpolant on (0, inf).
    double operator()(double y) const;
    // Right end of the tabulated part.
    double end() const;
    // Points in (0, end] where the interpolant may be non-smooth.
    std::vector<double> breakpoints() const;
    bool is_zero() const;

    SampledFunction scaled(double c) const;

    void write_csv(std::ostream& os, const std::string& header_comment = {}) const;
    static SampledFunction read_csv(std::istream& is, Interp mode = Interp::linear);

private:
    std::vector<double> grid_, values_, second_;  // second_: spline second derivatives
    double support_ = 0;
    Interp mode_ = Interp::linear;
    std::optional<PowerTail> tail_;
};

// Uniform and geometric grids.
std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);

// Sample a callable on a grid.
template <class F>
SampledFunction sample(F&& f, std::vector<double> grid, double support_bound, Interp mode = Interp::linear) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
    return SampledFunction(std::move(grid), std::move(v), support_bound, mode);
}

}  // namespace bh
