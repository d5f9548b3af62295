#pragma once

#include "bh/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bh {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    double truncation_radius = 1e5;

    void validate() const;
    QuadratureSpec with_tol(double abs, double rel) const {
        QuadratureSpec q = *this;
        q.abs_tol = abs;
        q.rel_tol = rel;
        return q;
    }
};

// Nodes and weights of a rule on [-1, 1].
struct NodeTable {
    std::vector<double> x;
    std::vector<double> w;
};

// 21-point Kronrod extension of 10-point Gauss. wg is 0 at Kronrod-only nodes.
struct GKTable {
    std::vector<double> x, wk, wg;
};

const GKTable& gk21();
// Gauss-Legendre with n in {4, 6, 8, 10, 12, 16, 20, 24, 32}.
const NodeTable& gauss_legendre(int n);

template <std::size_t D>
using Vec = std::array<double, D>;

namespace detail {

template <std::size_t D>
struct Segment {
    double a, b;
    Vec<D> val, err;
    double key;  // largest component error
    bool operator<(const Segment& o) const { return key < o.key; }
};

template <std::size_t D, class F>
Segment<D> gk_segment(F& f, double a, double b) {
    const GKTable& t = gk21();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Vec<D> k{}, g{};
    for (std::size_t i = 0; i < t.x.size(); ++i) {
        const Vec<D> v = f(c + h * t.x[i]);
        for (std::size_t d = 0; d < D; ++d) {
            k[d] += t.wk[i] * v[d];
            g[d] += t.wg[i] * v[d];
        }
    }
    Segment<D> s{a, b, {}, {}, 0.0};
    for (std::size_t d = 0; d < D; ++d) {
        s.val[d] = h * k[d];
        s.err[d] = std::fabs(h * (k[d] - g[d]));
        s.key = std::max(s.key, s.err[d]);
    }
    return s;
}

}  // namespace detail

// Global adaptive Gauss-Kronrod (21 points) over consecutive pieces
// [breaks[0], breaks[1]], ... . f maps double -> Vec<D>. Converged when every
// component has summed error <= max(abs_tol, rel_tol * |value|).
template <std::size_t D, class F>
Vec<D> integrate(F&& f, std::span<const double> breaks, const QuadratureSpec& q, Vec<D>* err_out = nullptr) {
    std::vector<detail::Segment<D>> heap;
    heap.reserve(breaks.size() + 64);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        heap.push_back(detail::gk_segment<D>(f, breaks[i], breaks[i + 1]));
    }
    Vec<D> total{}, err{};
    auto recompute = [&] {
        total.fill(0.0);
        err.fill(0.0);
        for (const auto& s : heap)
            for (std::size_t d = 0; d < D; ++d) {
                total[d] += s.val[d];
                err[d] += s.err[d];
            }
    };
    auto converged = [&] {
        for (std::size_t d = 0; d < D; ++d)
            if (err[d] > std::max(q.abs_tol, q.rel_tol * std::fabs(total[d]))) return false;
        return true;
    };
    std::make_heap(heap.begin(), heap.end());
    recompute();
    int splits = 0;
    while (!converged()) {
        if (heap.empty()) break;
        if (splits >= q.max_subdivisions) {
            double worst = 0;
            for (std::size_t d = 0; d < D; ++d) worst = std::max(worst, err[d]);
            throw ConvergenceError("adaptive quadrature did not converge within " +
                                       std::to_string(q.max_subdivisions) + " subdivisions",
                                   worst);
        }
        std::pop_heap(heap.begin(), heap.end());
        const auto s = heap.back();
        heap.pop_back();
        const double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) {
            // cannot split further; keep it and accept its error
            heap.push_back(s);
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        auto l = detail::gk_segment<D>(f, s.a, m);
        auto r = detail::gk_segment<D>(f, m, s.b);
        for (std::size_t d = 0; d < D; ++d) {
            total[d] += l.val[d] + r.val[d] - s.val[d];
            err[d] += l.err[d] + r.err[d] - s.err[d];
        }
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end());
        ++splits;
        if (splits % 64 == 0) recompute();  // limit drift of the running sums
    }
    recompute();
    if (err_out) *err_out = err;
    return total;
}

template <class F>
double integrate_scalar(F&& f, std::span<const double> breaks, const QuadratureSpec& q, double* err_out = nullptr) {
    auto g = [&](double x) { return Vec<1>{f(x)}; };
    Vec<1> e{};
    const Vec<1> r = integrate<1>(g, breaks, q, &e);
    if (err_out) *err_out = e[0];
    return r[0];
}

template <class F>
double integrate_scalar(F&& f, double a, double b, const QuadratureSpec& q) {
    const double br[2] = {a, b};
    return integrate_scalar(f, std::span<const double>(br, 2), q);
}

// Fixed composite Gauss-Legendre over consecutive pieces.
template <std::size_t D, class F>
Vec<D> integrate_fixed(F&& f, std::span<const double> breaks, int n) {
    const NodeTable& t = gauss_legendre(n);
    Vec<D> total{};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double c = 0.5 * (breaks[i] + breaks[i + 1]), h = 0.5 * (breaks[i + 1] - breaks[i]);
        if (!(h > 0)) continue;
        for (std::size_t j = 0; j < t.x.size(); ++j) {
            const Vec<D> v = f(c + h * t.x[j]);
            for (std::size_t d = 0; d < D; ++d) total[d] += h * t.w[j] * v[d];
        }
    }
    return total;
}

// Sorted, de-duplicated breakpoints restricted to [lo, hi], always containing both ends.
std::vector<double> clean_breaks(std::vector<double> pts, double lo, double hi);

// Geometric breakpoints around a point of interest: c, c +- s, c +- ratio*s, ...
// clipped to [lo, hi].
void add_geometric_breaks(std::vector<double>& out, double c, double s, double ratio, double lo, double hi);

}  // namespace bh
