#include "bh/decomposition.hpp"

#include "bh/errors.hpp"
#include "bh/kernels.hpp"
#include "bh/semigroup.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace bh {

namespace {

constexpr DyadicInterval kQ0{0, 0};

double radical_inverse(std::size_t i, unsigned base) {
    double r = 0, f = 1.0 / base;
    for (; i; i /= base, f /= base) r += f * static_cast<double>(i % base);
    return r;
}

}  // namespace

bool DyadicInterval::contains(const DyadicInterval& o) const {
    if (o.level < level) return false;
    return (o.index >> (o.level - level)) == index;
}

std::string to_string(const DyadicInterval& d) {
    return "[" + std::to_string(d.level) + ":" + std::to_string(d.index) + "]";
}

NodeValues::NodeValues(double lambda, SampledFunction f, QuadratureSpec q)
    : lambda_(lambda), f_(std::move(f)), q_(q) {
    if (!(lambda_ > 0)) throw DomainError("node values: lambda must be > 0");
    q_.validate();
}

double NodeValues::c(const DyadicInterval& d) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    const double x = d.center();
    double v = 0;
    if (!f_.is_zero()) {
        const double xs[1] = {x};
        try {
            v = apply_poisson(lambda_, d.length(), f_, xs, q_).values()[0] * std::pow(x, -lambda_);
        } catch (const ConvergenceError& e) {
            throw e.with_location("node " + to_string(d));
        }
    }
    cache_.emplace(d, v);
    return v;
}

const std::vector<DyadicInterval>& GenerationTree::children(const DyadicInterval& q) const {
    static const std::vector<DyadicInterval> none;
    auto it = kids.find(q);
    return it == kids.end() ? none : it->second;
}

double GenerationTree::c_of(const DyadicInterval& q) const {
    auto it = c.find(q);
    if (it == c.end()) throw UsageError("tree: no value stored for node " + to_string(q));
    return it->second;
}

void GenerationTree::write(std::ostream& os) const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "# lambda=%.17g A=%.17g max_level=%d\n", lambda, A, max_level);
    os << buf << "# k level index c_Q\n";
    for (std::size_t k = 0; k < generations.size(); ++k)
        for (const DyadicInterval& d : generations[k]) {
            std::snprintf(buf, sizeof buf, "%zu %d %lld %.17g\n", k, d.level, static_cast<long long>(d.index),
                          c_of(d));
            os << buf;
        }
}

GenerationTree GenerationTree::read(std::istream& is) {
    GenerationTree t;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            double lam, A;
            int ml;
            if (std::sscanf(line.c_str(), "# lambda=%lf A=%lf max_level=%d", &lam, &A, &ml) == 3)
                t.lambda = lam, t.A = A, t.max_level = ml;
            continue;
        }
        std::istringstream ss(line);
        std::size_t k;
        DyadicInterval d;
        long long idx;
        double c;
        if (!(ss >> k >> d.level >> idx >> c)) throw UsageError("tree file: cannot parse '" + line + "'");
        d.index = idx;
        if (t.generations.size() <= k) t.generations.resize(k + 1);
        t.generations[k].push_back(d);
        t.generation_of[d] = static_cast<int>(k);
        t.c[d] = c;
    }
    for (std::size_t k = 1; k < t.generations.size(); ++k)
        for (const DyadicInterval& d : t.generations[k])
            for (const DyadicInterval& p : t.generations[k - 1])
                if (p.contains(d)) {
                    t.parent[d] = p;
                    t.kids[p].push_back(d);
                }
    return t;
}

GenerationTree build_generations(NodeValues& values, double A, int max_level) {
    if (!(A > 0)) throw DomainError("build_generations: A must be > 0");
    if (max_level < 0 || max_level > 20) throw DomainError("build_generations: max_level must be in [0, 20]");
    const SampledFunction& f = values.f();
    if (!f.is_zero() && (f.end() > 1 + 1e-12 || (f.tail() && f.tail()->coefficient != 0)))
        throw DomainError("build_generations: f must be supported in (0, 1)");
    GenerationTree t;
    t.lambda = values.lambda();
    t.A = A;
    t.max_level = max_level;
    t.f = f;
    t.generations.push_back({kQ0});
    t.generation_of[kQ0] = 0;
    t.c[kQ0] = values.c(kQ0);
    const double lambda = values.lambda();
    for (int k = 0;; ++k) {
        std::vector<DyadicInterval> next;
        for (const DyadicInterval& q1 : t.generations[static_cast<std::size_t>(k)]) {
            const double c1 = values.c(q1);
            // breadth-first: a node joins G_{k+1} when it triggers, and its
            // subtree is not searched further (maximality)
            std::deque<DyadicInterval> open;
            if (q1.level < max_level) open.push_back(q1.child(0)), open.push_back(q1.child(1));
            while (!open.empty()) {
                const DyadicInterval d = open.front();
                open.pop_front();
                const double cd = values.c(d);
                t.c[d] = cd;
                if (std::fabs(cd - c1) > A * std::pow(d.center(), -lambda)) {
                    next.push_back(d);
                    t.parent[d] = q1;
                    t.kids[q1].push_back(d);
                } else if (d.level < max_level) {
                    open.push_back(d.child(0));
                    open.push_back(d.child(1));
                }
            }
        }
        if (next.empty()) break;
        std::sort(next.begin(), next.end(), [](const DyadicInterval& a, const DyadicInterval& b) {
            return a.lo() < b.lo() || (a.lo() == b.lo() && a.level < b.level);
        });
        for (const DyadicInterval& d : next) t.generation_of[d] = k + 1;
        t.generations.push_back(std::move(next));
    }
    return t;
}

GenerationTree build_generations(double lambda, const SampledFunction& f, double A, int max_level,
                                 const QuadratureSpec& q) {
    NodeValues v(lambda, f, q);
    return build_generations(v, A, max_level);
}

PackingReport packing_check(const GenerationTree& tree) {
    PackingReport r;
    for (std::size_t k = 0; k < tree.generations.size(); ++k)
        for (const DyadicInterval& q : tree.generations[k]) {
            const auto& ch = tree.children(q);
            if (ch.empty()) continue;
            double s = 0;  // dyadic lengths: exact
            for (const DyadicInterval& j : ch) s += j.length();
            const double ratio = s / q.length();
            r.rows.push_back({static_cast<int>(k), q, s, ratio});
            r.max_ratio = std::max(r.max_ratio, ratio);
            if (ratio > 0.5) r.passed = false;
        }
    return r;
}

bool disjointness_check(const GenerationTree& tree) {
    for (const auto& g : tree.generations)
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j)
                if (g[i].contains(g[j]) || g[j].contains(g[i])) return false;
    return true;
}

CalibrationResult calibrate_A(NodeValues& values, int max_level) {
    double A = std::ldexp(1.0, -10);
    for (int k = 0; A <= std::ldexp(1.0, 40); ++k, A *= 2)
        if (packing_check(build_generations(values, A, max_level)).passed) return {A, k};
    throw CalibrationError("calibrate_A: packing still fails at A = 2^40");
}

double calibrate_A(double lambda, const SampledFunction& f, int max_level, const QuadratureSpec& q) {
    NodeValues v(lambda, f, q);
    return calibrate_A(v, max_level).A;
}

namespace {

// J in A(Q): inside Q and not inside any stopped child of Q.
bool in_family(const GenerationTree& tree, const DyadicInterval& Q, const DyadicInterval& J) {
    if (!Q.contains(J)) return false;
    for (const DyadicInterval& s : tree.children(Q))
        if (s.contains(J)) return false;
    return true;
}

void require_member(const GenerationTree& tree, const DyadicInterval& Q) {
    if (!tree.is_member(Q)) throw UsageError("interval " + to_string(Q) + " is not a member of the tree");
}

}  // namespace

SigmaTiles sigma_tiles(const GenerationTree& tree, const DyadicInterval& Q) {
    require_member(tree, Q);
    SigmaTiles s;
    for (int l = Q.level; l <= tree.max_level; ++l) {
        const std::int64_t n = std::int64_t{1} << (l - Q.level);
        for (std::int64_t i = 0; i < n; ++i) {
            const DyadicInterval J{l, (Q.index << (l - Q.level)) + i};
            if (in_family(tree, Q, J)) {
                s.family.push_back(J);
                s.tiles.push_back({J});
                s.tile_area += s.tiles.back().area();
            }
        }
    }
    for (const DyadicInterval& c : tree.children(Q)) s.child_box_area += c.length() * c.length();
    // boxes of the level max_level+1 intervals not under a child
    const int l = tree.max_level + 1;
    if (l > Q.level) {
        const std::int64_t n = std::int64_t{1} << (l - Q.level);
        for (std::int64_t i = 0; i < n; ++i) {
            const DyadicInterval J{l, (Q.index << (l - Q.level)) + i};
            if (in_family(tree, Q, J)) s.remainder_area += J.length() * J.length();
        }
    }
    return s;
}

double oscillation_at(const GenerationTree& tree, const DyadicInterval& Q, double x, double t,
                      const QuadratureSpec& q) {
    const double cq = tree.c_of(Q);
    if (x == Q.center() && t == Q.length()) {
        // the definition of c_Q, evaluated the same way
        return std::pow(x, tree.lambda) * std::fabs(cq - tree.c_of(Q));
    }
    const double xs[1] = {x};
    const double u = tree.f.is_zero() ? 0.0 : apply_poisson(tree.lambda, t, tree.f, xs, q).values()[0];
    return std::fabs(u - cq * std::pow(x, tree.lambda));
}

OscillationReport oscillation_check(const GenerationTree& tree, std::size_t per_tile, double bmo_norm,
                                    const QuadratureSpec& q) {
    OscillationReport r;
    const double scale = tree.A + bmo_norm;
    for (const auto& g : tree.generations)
        for (const DyadicInterval& Q : g) {
            const SigmaTiles st = sigma_tiles(tree, Q);
            for (const Tile& tile : st.tiles) {
                for (std::size_t i = 1; i <= per_tile; ++i) {
                    const double x = tile.J.lo() + radical_inverse(i, 2) * tile.J.length();
                    const double t = tile.J.length() * (0.5 + 0.5 * radical_inverse(i, 3));
                    if (!(x > 0)) continue;
                    double v;
                    try {
                        v = oscillation_at(tree, Q, x, t, q) / scale;
                    } catch (const ConvergenceError& e) {
                        throw e.with_location("oscillation_check in " + to_string(Q));
                    }
                    ++r.samples;
                    if (v > r.max_ratio) r.max_ratio = v, r.argmax_Q = Q, r.argmax_x = x, r.argmax_t = t;
                }
            }
        }
    return r;
}

namespace {

// Gauss-Legendre nodes on [lo, hi], cut into pieces of length <= max_piece.
std::vector<std::pair<double, double>> gl_nodes(double lo, double hi, double max_piece, int n,
                                                std::span<const double> extra_breaks = {}) {
    std::vector<double> br{lo, hi};
    const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_piece - 1e-12)));
    for (int i = 1; i < pieces; ++i) br.push_back(lo + (hi - lo) * i / pieces);
    for (double b : extra_breaks) br.push_back(b);
    br = clean_breaks(std::move(br), lo, hi);
    const NodeTable& t = gauss_legendre(n);
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const double c = 0.5 * (br[i] + br[i + 1]), h = 0.5 * (br[i + 1] - br[i]);
        for (std::size_t j = 0; j < t.x.size(); ++j) out.emplace_back(c + h * t.x[j], h * t.w[j]);
    }
    return out;
}

}  // namespace

GreenResult green_identity_check(double lambda, const SampledFunction& f, const Rect& r, double x, double alpha,
                                 const QuadratureSpec& q, int nodes) {
    if (!(r.a >= 0 && r.b > r.a && r.c > 0 && r.d > r.c)) throw DomainError("green_identity_check: bad rectangle");
    if (!(x > 0)) throw DomainError("green_identity_check: x must be > 0");
    const std::vector<double> fb = f.breakpoints();
    std::vector<double> ybreaks{x};
    for (double b : fb) ybreaks.push_back(b);
    // D_{lambda,y}(alpha y^lambda) = alpha (lambda y^{lambda-1} - (lambda/y) y^lambda), kept literal
    auto dy_power = [&](double y) { return alpha * (lambda * std::pow(y, lambda - 1) - lambda / y * std::pow(y, lambda)); };
    auto shifted = [&](double y, double u) { return u - alpha * std::pow(y, lambda); };

    try {
        // interior: octave panels in t, y pieces no longer than half the panel's lower t
        double interior = 0;
        std::vector<double> tb{r.c};
        for (double t = r.c * 2; t < r.d; t *= 2) tb.push_back(t);
        tb.push_back(r.d);
        for (std::size_t k = 0; k + 1 < tb.size(); ++k) {
            for (auto [t, wt] : gl_nodes(tb[k], tb[k + 1], tb[k + 1] - tb[k], nodes)) {
                for (auto [y, wy] : gl_nodes(r.a, r.b, 0.5 * tb[k], nodes, ybreaks)) {
                    const PoissonAction u = poisson_action(lambda, y, t, f, q);
                    const PoissonBundle k2 = poisson_bundle({lambda, x, y, t}, q);
                    interior += 2 * t * wt * wy * (k2.dt * u.dt + k2.dlam_y * (u.dlam_x - dy_power(y)));
                }
            }
        }
        // boundary: H on the two horizontal sides, V on the two vertical ones
        auto H = [&](double y, double t) {
            const PoissonAction u = poisson_action(lambda, y, t, f, q);
            const PoissonBundle k2 = poisson_bundle({lambda, x, y, t}, q);
            const double s = shifted(y, u.u);
            return t * k2.dt * s + t * k2.p * u.dt - k2.p * s;
        };
        auto V = [&](double y, double t) {
            if (y == 0) return 0.0;  // P_t(x, y) and D_y P_t(x, y) vanish at y = 0
            const PoissonAction u = poisson_action(lambda, y, t, f, q);
            const PoissonBundle k2 = poisson_bundle({lambda, x, y, t}, q);
            return t * (k2.p * u.dlam_x + k2.dlam_y * shifted(y, u.u));
        };
        double boundary = 0;
        for (auto [y, w] : gl_nodes(r.a, r.b, 0.5 * r.d, nodes, ybreaks)) boundary += w * H(y, r.d);
        for (auto [y, w] : gl_nodes(r.a, r.b, 0.5 * r.c, nodes, ybreaks)) boundary -= w * H(y, r.c);
        for (std::size_t k = 0; k + 1 < tb.size(); ++k)
            for (auto [t, w] : gl_nodes(tb[k], tb[k + 1], 0.5 * tb[k], nodes)) boundary += w * (V(r.b, t) - V(r.a, t));
        return {interior, boundary};
    } catch (const ConvergenceError& e) {
        throw e.with_location("green_identity_check");
    }
}

double g1_value(const GenerationTree& tree, int n, double x) {
    if (!(x > 0) || x >= 2) return 0.0;
    DyadicInterval Q = kQ0;
    for (;;) {
        const DyadicInterval* next = nullptr;
        for (const DyadicInterval& s : tree.children(Q))
            if (s.contains_point(x)) next = &s;
        if (!next || next->level > n + 1) break;
        if (next->level == n + 1) return 0.0;  // top of a stopped interval of length 2^-n
        Q = *next;
    }
    return tree.f(x) - tree.c_of(Q) * std::pow(x, tree.lambda);
}

BoundaryData extract_boundary_measure(const GenerationTree& tree, int n, const QuadratureSpec& q, int nodes,
                                      std::span<const double> g1_grid) {
    if (n < 1 || n > tree.max_level) throw UsageError("extract_boundary_measure: need 1 <= n <= max_level");
    if (tree.generations.empty()) throw UsageError("extract_boundary_measure: empty tree");
    const double lambda = tree.lambda;
    BoundaryData out;
    out.n = n;
    auto add_term = [&](SegmentKind kind, const DyadicInterval& Q, double lo, double hi, double at, int sign) {
        out.terms.push_back({kind, Q, tree.c_of(Q), lo, hi, at, sign, {}});
    };
    for (const auto& gen : tree.generations)
        for (const DyadicInterval& Q : gen) {
            if (Q.level > n) continue;  // Sigma_{Q,n} is empty
            // tiles of A(Q) with level <= n make up Sigma_{Q,n}
            std::vector<std::set<std::int64_t>> S(static_cast<std::size_t>(n + 1));
            for (int l = Q.level; l <= n; ++l) {
                const std::int64_t cnt = std::int64_t{1} << (l - Q.level);
                for (std::int64_t i = 0; i < cnt; ++i) {
                    const DyadicInterval J{l, (Q.index << (l - Q.level)) + i};
                    if (in_family(tree, Q, J)) S[static_cast<std::size_t>(l)].insert(J.index);
                }
            }
            add_term(SegmentKind::horizontal, Q, Q.lo(), Q.hi(), Q.length(), +1);
            for (int l = Q.level; l <= n; ++l) {
                const auto& row = S[static_cast<std::size_t>(l)];
                // horizontal edges at height 2^-l, split at level l+1
                for (std::int64_t idx : row)
                    for (int k = 0; k < 2; ++k) {
                        const DyadicInterval K = DyadicInterval{l, idx}.child(k);
                        const bool lower = l + 1 <= n && S[static_cast<std::size_t>(l + 1)].count(K.index);
                        if (lower) continue;
                        bool stopped = false;
                        for (const DyadicInterval& s : tree.children(Q)) stopped = stopped || s == K;
                        if (l + 1 <= n || stopped)
                            add_term(SegmentKind::horizontal, Q, K.lo(), K.hi(), K.length(), -1);
                        else
                            out.bottom.push_back({SegmentKind::horizontal, Q, tree.c_of(Q), K.lo(), K.hi(),
                                                  K.length(), -1, {}});
                    }
                // vertical edges of the level-l tiles
                const double tlo = std::ldexp(1.0, -l), thi = std::ldexp(1.0, 1 - l);
                for (std::int64_t idx : row) {
                    const DyadicInterval J{l, idx};
                    if (!row.count(idx - 1) && J.lo() > 0) add_term(SegmentKind::vertical, Q, tlo, thi, J.lo(), -1);
                    if (!row.count(idx + 1)) add_term(SegmentKind::vertical, Q, tlo, thi, J.hi(), +1);
                }
            }
        }
    // quadrature nodes and the measure
    for (BoundaryTerm& term : out.terms) {
        const bool hor = term.kind == SegmentKind::horizontal;
        const auto pts = hor ? gl_nodes(term.lo, term.hi, term.at, nodes) : gl_nodes(term.lo, term.hi, term.hi - term.lo, nodes);
        for (auto [s, w] : pts) {
            const double y = hor ? s : term.at, t = hor ? term.at : s;
            BoundaryNode nd{y, t, w, 0, 0};
            if (!tree.f.is_zero() || term.c != 0) {
                PoissonAction u{0, 0, 0};
                if (!tree.f.is_zero()) {
                    try {
                        u = poisson_action(lambda, y, t, tree.f, q);
                    } catch (const ConvergenceError& e) {
                        throw e.with_location("boundary node of " + to_string(term.Q));
                    }
                }
                nd.diff = u.u - term.c * std::pow(y, lambda);
                nd.dens = hor ? t * u.dt - nd.diff : t * u.dlam_x;
            }
            term.nodes.push_back(nd);
            const double wgt = term.sign * nd.dens * w;
            if (wgt != 0) out.mu_n.add({y, t, wgt});
        }
    }
    std::vector<double> grid = g1_grid.empty() ? linspace(1e-3, 2.0, 2001)
                                                : std::vector<double>(g1_grid.begin(), g1_grid.end());
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = g1_value(tree, n, grid[i]);
    out.g1 = SampledFunction(grid, std::move(v), grid.back(), Interp::linear);
    return out;
}

TermSums evaluate_terms(double lambda, std::span<const BoundaryTerm> terms, double x, const QuadratureSpec& q) {
    TermSums s;
    for (const BoundaryTerm& term : terms) {
        const bool hor = term.kind == SegmentKind::horizontal;
        for (const BoundaryNode& nd : term.nodes) {
            if (nd.dens == 0 && nd.diff == 0) continue;
            const PoissonBundle k = poisson_bundle({lambda, x, nd.y, nd.t}, q);
            s.balayage += term.sign * nd.w * k.p * nd.dens;
            s.direct += term.sign * nd.w * nd.t * (hor ? k.dt : k.dlam_y) * nd.diff;
        }
    }
    return s;
}

void Reconstruction::write_csv(std::ostream& os, const std::string& header_comment) const {
    if (!header_comment.empty()) os << "# " << header_comment << '\n';
    os << "x,f,f_n,g,S_mu\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g", r.x, r.f, r.fn, r.g, r.s_mu);
        os << buf << '\n';
    }
}

Reconstruction reconstruct(const GenerationTree& tree, int n, const QuadratureSpec& q, std::span<const double> x_grid,
                           int nodes) {
    const std::vector<double> xs = x_grid.empty() ? linspace(0.02, 3.0, 150)
                                                  : std::vector<double>(x_grid.begin(), x_grid.end());
    const double lambda = tree.lambda;
    Reconstruction rec;
    if (tree.f.is_zero()) {
        rec.g = SampledFunction(xs, std::vector<double>(xs.size(), 0.0), xs.back());
        for (double x : xs) rec.rows.push_back({x, 0, 0, 0, 0});
        return rec;
    }
    BoundaryData bd = extract_boundary_measure(tree, n, q, nodes, xs);

    // I_3 (t = 2 over [0,2]) and I_5 (y = 2, 2^-n <= t <= 2), both with c_0
    const double c0 = tree.c_of(kQ0);
    std::vector<BoundaryTerm> outer{{SegmentKind::horizontal, kQ0, c0, 0.0, 2.0, 2.0, -1, {}},
                                    {SegmentKind::vertical, kQ0, c0, std::ldexp(1.0, -n), 2.0, 2.0, -1, {}}};
    for (BoundaryTerm& term : outer) {
        const bool hor = term.kind == SegmentKind::horizontal;
        std::vector<std::pair<double, double>> pts;
        if (hor) {
            pts = gl_nodes(term.lo, term.hi, 2.0, nodes);
        } else {
            for (int l = n; l >= 1; --l) {
                auto p = gl_nodes(std::ldexp(1.0, -l), std::ldexp(1.0, 1 - l), 1.0, nodes);
                pts.insert(pts.end(), p.begin(), p.end());
            }
        }
        for (auto [s, w] : pts) {
            const double y = hor ? s : term.at, t = hor ? term.at : s;
            const PoissonAction u = poisson_action(lambda, y, t, tree.f, q);
            BoundaryNode nd{y, t, w, 0, u.u - c0 * std::pow(y, lambda)};
            nd.dens = hor ? t * u.dt - nd.diff : t * u.dlam_x;
            term.nodes.push_back(nd);
        }
    }

    // mu: mu_n plus the I_3/I_5 densities and the bounded factors of the direct terms,
    // atoms at equal positions merged
    std::map<std::pair<double, double>, double> atoms;
    for (const Atom& a : bd.mu_n.atoms()) atoms[{a.y, a.t}] += a.w;
    for (const BoundaryTerm& term : outer)
        for (const BoundaryNode& nd : term.nodes) atoms[{nd.y, nd.t}] += term.sign * nd.w * nd.dens;
    std::map<std::pair<double, double>, double> env;
    for (const auto* list : {&bd.terms, &outer})
        for (const BoundaryTerm& term : *list)
            for (const BoundaryNode& nd : term.nodes) env[{nd.y, nd.t}] += term.sign * nd.w * nd.diff;
    for (const auto& [k, w] : atoms)
        if (w != 0) rec.mu.add({k.first, k.second, w});
    for (const auto& [k, w] : env)
        if (w != 0) rec.mu.add({k.first, k.second, w});

    std::vector<double> gv(xs.size());
    double num = 0, den = 0;
    const std::vector<double> wts = [&] {
        std::vector<double> w(xs.size(), 0.0);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            w[i] += 0.5 * (xs[i + 1] - xs[i]);
            w[i + 1] += 0.5 * (xs[i + 1] - xs[i]);
        }
        if (xs.size() == 1) w[0] = 1;
        return w;
    }();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const double g1 = g1_value(tree, n, x);
        const double g2 = x < 2 ? c0 * std::pow(x, lambda) : 0.0;
        TermSums a = evaluate_terms(lambda, bd.terms, x, q);
        const TermSums b = evaluate_terms(lambda, outer, x, q);
        const double s_mu = a.balayage + b.balayage;
        const double fn = g1 + g2 + s_mu + a.direct + b.direct;
        const double fx = tree.f(x);
        gv[i] = g1 + g2;
        rec.rows.push_back({x, fx, fn, gv[i], s_mu});
        num += wts[i] * (fx - fn) * (fx - fn);
        den += wts[i] * fx * fx;
        rec.g_sup = std::max(rec.g_sup, std::fabs(gv[i]));
    }
    rec.g = SampledFunction(xs, std::move(gv), xs.back(), Interp::linear);
    rec.residual = den > 0 ? std::sqrt(num / den) : 0.0;
    rec.mu_norm = carleson_norm(rec.mu);
    return rec;
}

}  // namespace bh
