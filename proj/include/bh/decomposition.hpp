#pragma once

#include "bh/carleson.hpp"
#include "bh/quadrature.hpp"
#include "bh/sampled.hpp"

#include <cmath>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bh {

// [2^{1-level} index, 2^{1-level} (index + 1)) inside Q0 = [0, 2).
struct DyadicInterval {
    int level = 0;
    std::int64_t index = 0;

    double length() const { return std::ldexp(1.0, 1 - level); }
    double lo() const { return length() * static_cast<double>(index); }
    double hi() const { return length() * static_cast<double>(index + 1); }
    double center() const { return lo() + 0.5 * length(); }
    bool contains(const DyadicInterval& o) const;  // o is a (non-strict) descendant
    bool contains_point(double x) const { return x >= lo() && x < hi(); }
    DyadicInterval parent() const { return {level - 1, index / 2}; }
    DyadicInterval child(int k) const { return {level + 1, 2 * index + k}; }
    auto operator<=>(const DyadicInterval&) const = default;
};

std::string to_string(const DyadicInterval& d);

// x^{-lambda} P_{|Q|} f(x_Q) for dyadic Q, memoized; shared by calibration runs.
class NodeValues {
public:
    NodeValues(double lambda, SampledFunction f, QuadratureSpec q);
    double c(const DyadicInterval& d);
    double lambda() const { return lambda_; }
    const SampledFunction& f() const { return f_; }
    const QuadratureSpec& quadrature() const { return q_; }
    const std::map<DyadicInterval, double>& cache() const { return cache_; }

private:
    double lambda_;
    SampledFunction f_;
    QuadratureSpec q_;
    std::map<DyadicInterval, double> cache_;
};

struct GenerationTree {
    double lambda = 1;
    double A = 1;
    int max_level = 0;
    SampledFunction f;
    std::vector<std::vector<DyadicInterval>> generations;  // sorted; generations[0] = {Q0}
    std::map<DyadicInterval, DyadicInterval> parent;       // member of G_{k+1} -> its G_k ancestor
    std::map<DyadicInterval, int> generation_of;
    std::map<DyadicInterval, double> c;                    // every evaluated node
    std::map<DyadicInterval, std::vector<DyadicInterval>> kids;  // G_k member -> its members of G_{k+1}

    const std::vector<DyadicInterval>& children(const DyadicInterval& q) const;
    bool is_member(const DyadicInterval& q) const { return generation_of.count(q) != 0; }
    double c_of(const DyadicInterval& q) const;

    // "k level index c_Q" per member, after '#' header lines.
    void write(std::ostream& os) const;
    // Node list only; f is not stored in the text format.
    static GenerationTree read(std::istream& is);
};

GenerationTree build_generations(double lambda, const SampledFunction& f, double A, int max_level,
                                 const QuadratureSpec& q);
GenerationTree build_generations(NodeValues& values, double A, int max_level);

struct PackingRow {
    int generation;
    DyadicInterval Q;
    double child_length;  // sum of |J| over J in G_{k+1}, J inside Q
    double ratio;         // child_length / |Q|
};
struct PackingReport {
    std::vector<PackingRow> rows;  // nodes with children only
    double max_ratio = 0;
    bool passed = true;            // every ratio <= 1/2
};
PackingReport packing_check(const GenerationTree& tree);

// Members of each generation are pairwise disjoint.
bool disjointness_check(const GenerationTree& tree);

struct CalibrationResult {
    double A;
    int doublings;
};
// Smallest A = 2^-10 * 2^k for which packing passes up to max_level.
CalibrationResult calibrate_A(NodeValues& values, int max_level);
double calibrate_A(double lambda, const SampledFunction& f, int max_level, const QuadratureSpec& q);

struct Tile {
    DyadicInterval J;  // region J x [|J|/2, |J|)
    double area() const { return 0.5 * J.length() * J.length(); }
};

struct SigmaTiles {
    std::vector<DyadicInterval> family;  // A(Q), down to max_level
    std::vector<Tile> tiles;
    double tile_area = 0, child_box_area = 0, remainder_area = 0;
};
SigmaTiles sigma_tiles(const GenerationTree& tree, const DyadicInterval& Q);

struct OscillationReport {
    double max_ratio = 0;
    std::size_t samples = 0;
    DyadicInterval argmax_Q;
    double argmax_x = 0, argmax_t = 0;
};
// |u(x,t) - c_Q x^lambda| / (A + bmo) on `per_tile` Halton points in every tile of every Sigma_Q.
OscillationReport oscillation_check(const GenerationTree& tree, std::size_t per_tile, double bmo_norm,
                                    const QuadratureSpec& q);
// x^lambda |x^{-lambda} u(x,t) - c_Q|.
double oscillation_at(const GenerationTree& tree, const DyadicInterval& Q, double x, double t,
                      const QuadratureSpec& q);

struct Rect {
    double a, b, c, d;  // [a,b] x [c,d]
};
struct GreenResult {
    double interior, boundary;
};
GreenResult green_identity_check(double lambda, const SampledFunction& f, const Rect& r, double x, double alpha,
                                 const QuadratureSpec& q, int nodes = 10);

enum class SegmentKind { horizontal, vertical };

struct BoundaryNode {
    double y, t, w;
    double dens;  // M_{Q,1} = t u_t - (u - c y^lambda) on horizontal pieces, L_{Q,1} = t D_y u on vertical ones
    double diff;  // u - c y^lambda
};

// One oriented piece of the boundary of Sigma_{Q,n}: I x {t} or {y} x K.
struct BoundaryTerm {
    SegmentKind kind;
    DyadicInterval Q;
    double c;          // the constant c_Q used in H and V
    double lo, hi;     // y-range (horizontal) or t-range (vertical)
    double at;         // height t (horizontal) or abscissa y (vertical)
    int sign;          // +1 top/right, -1 bottom/left
    std::vector<BoundaryNode> nodes;
};

struct BoundaryData {
    int n = 0;
    std::vector<BoundaryTerm> terms;   // H_{Q,n} and V_{Q,n}, with quadrature nodes
    std::vector<BoundaryTerm> bottom;  // H^0_{Q,n}, no nodes: they become g1
    DiscreteMeasure mu_n;              // sign * density * weight at the nodes
    SampledFunction g1;
};
// nodes = Gauss-Legendre points per piece; horizontal pieces are cut to length <= t.
BoundaryData extract_boundary_measure(const GenerationTree& tree, int n, const QuadratureSpec& q, int nodes = 8,
                                      std::span<const double> g1_grid = {});

// g1 at level n: f(x) - c_Q x^lambda on H^0_{Q,n}, zero on tops of stopped intervals of length 2^-n and off [0,2).
double g1_value(const GenerationTree& tree, int n, double x);

// sum over terms of sign * int (P_t(x,y) dens + K(x,y,t) diff), K = t dP/dt or t D_y P.
struct TermSums {
    double balayage = 0;  // the P * dens part
    double direct = 0;    // the K * diff part (F_{2,n} and its I_3, I_5 analogues)
};
TermSums evaluate_terms(double lambda, std::span<const BoundaryTerm> terms, double x, const QuadratureSpec& q);

struct ReconstructionRow {
    double x, f, fn, g, s_mu;
};
struct Reconstruction {
    SampledFunction g;
    DiscreteMeasure mu;
    double residual = 0;
    std::vector<ReconstructionRow> rows;
    double g_sup = 0;
    double mu_norm = 0;

    void write_csv(std::ostream& os, const std::string& header_comment = {}) const;  // x,f,f_n,g,S_mu
};
// f_n = g1 + c_0 x^lambda chi_(0,2) + S_{mu_n} + F_{2,n} + I_3 + I_5; an empty x_grid means
// 150 points over (0, 3].
Reconstruction reconstruct(const GenerationTree& tree, int n, const QuadratureSpec& q,
                           std::span<const double> x_grid = {}, int nodes = 8);

}  // namespace bh
