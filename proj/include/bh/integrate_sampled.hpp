#pragma once

#include "bh/quadrature.hpp"
#include "bh/sampled.hpp"

#include <vector>

namespace bh {

// int_0^{f.end()} K(y) f(y) dy for a vector-valued kernel K, split at the
// breakpoints of f and at the caller's extra points.
template <std::size_t D, class K>
Vec<D> integrate_against(const SampledFunction& f, K&& kernel, const QuadratureSpec& q,
                         std::vector<double> extra = {}) {
    if (f.is_zero()) return Vec<D>{};
    const double hi = f.end();
    std::vector<double> br = f.breakpoints();
    br.insert(br.end(), extra.begin(), extra.end());
    br = clean_breaks(std::move(br), 0.0, hi);
    auto g = [&](double y) {
        Vec<D> k = kernel(y);
        const double v = f(y);
        for (auto& c : k) c *= v;
        return k;
    };
    return integrate<D>(g, br, q);
}

}  // namespace bh
