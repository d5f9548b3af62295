#include "bh/carleson.hpp"

#include "bh/errors.hpp"
#include "bh/kernels.hpp"
#include "bh/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace bh {

namespace {

void check_atom(const Atom& a) {
    if (!std::isfinite(a.y) || !std::isfinite(a.t) || !std::isfinite(a.w))
        throw DomainError("measure: non-finite atom");
    if (!(a.y > 0) || !(a.t > 0)) throw DomainError("measure: atom coordinates must be > 0");
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    for (const Atom& a : atoms_) check_atom(a);
}

void DiscreteMeasure::add(const Atom& a) {
    check_atom(a);
    atoms_.push_back(a);
}

void DiscreteMeasure::append(const DiscreteMeasure& other) {
    atoms_.insert(atoms_.end(), other.atoms_.begin(), other.atoms_.end());
}

double DiscreteMeasure::total_variation() const {
    double s = 0;
    for (const Atom& a : atoms_) s += std::fabs(a.w);
    return s;
}

DiscreteMeasure DiscreteMeasure::scaled(double c) const {
    DiscreteMeasure m = *this;
    for (Atom& a : m.atoms_) a.w *= c;
    return m;
}

void DiscreteMeasure::write_csv(std::ostream& os, const std::string& header_comment) const {
    if (!header_comment.empty()) os << "# " << header_comment << '\n';
    os << "y,t,w\n";
    char buf[96];
    for (const Atom& a : atoms_) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", a.y, a.t, a.w);
        os << buf << '\n';
    }
}

DiscreteMeasure DiscreteMeasure::read_csv(std::istream& is) {
    std::vector<Atom> atoms;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line.find_first_of("yYtTwW") != std::string::npos && line.find_first_of("0123456789") == std::string::npos)
            continue;  // header
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        Atom a{};
        if (!(ss >> a.y >> a.t >> a.w))
            throw UsageError("measure csv: cannot parse line " + std::to_string(lineno));
        atoms.push_back(a);
    }
    return DiscreteMeasure(std::move(atoms));
}

double carleson_norm(const DiscreteMeasure& mu) {
    std::vector<Atom> a;
    for (const Atom& x : mu.atoms()) {
        check_atom(x);
        if (x.w != 0) a.push_back({x.y, x.t, std::fabs(x.w)});
    }
    if (a.empty()) return 0.0;
    std::sort(a.begin(), a.end(), [](const Atom& p, const Atom& q) { return p.y < q.y; });
    const std::size_t n = a.size();
    double best = 0;

    // |I| = t_k: slide a window of that length over the atoms with t <= t_k;
    // an optimal window can be shifted right until its left end is an atom.
    std::vector<double> lengths;
    for (const Atom& x : a) lengths.push_back(x.t);
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    std::vector<std::size_t> idx;
    for (double L : lengths) {
        idx.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (a[i].t <= L) idx.push_back(i);
        double sum = 0;
        std::size_t hi = 0;
        for (std::size_t lo = 0; lo < idx.size(); ++lo) {
            while (hi < idx.size() && a[idx[hi]].y - a[idx[lo]].y <= L) sum += a[idx[hi++]].w;
            best = std::max(best, sum / L);
            sum -= a[idx[lo]].w;
        }
    }

    // |I| = y_j - y_i with I = [y_i, y_j]: atoms enter by position, then wait
    // in a heap until the length reaches their height.
    using Pending = std::pair<double, double>;  // (t, w)
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && a[i].y == a[i - 1].y) continue;
        std::priority_queue<Pending, std::vector<Pending>, std::greater<>> wait;
        double sum = 0;
        std::size_t j = i;
        while (j < n && a[j].y == a[i].y) wait.push({a[j].t, a[j].w}), ++j;
        while (j < n) {
            const double y = a[j].y;
            while (j < n && a[j].y == y) wait.push({a[j].t, a[j].w}), ++j;
            const double L = y - a[i].y;
            while (!wait.empty() && wait.top().first <= L) sum += wait.top().second, wait.pop();
            if (sum > 0) best = std::max(best, sum / L);
        }
    }
    return best;
}

double balayage_poisson(double lambda, const DiscreteMeasure& mu, double x, const QuadratureSpec& q) {
    double s = 0;
    for (const Atom& a : mu.atoms()) s += a.w * poisson_kernel({lambda, x, a.y, a.t}, q);
    return s;
}

double balayage_heat(double lambda, const DiscreteMeasure& mu, double x, const QuadratureSpec& q) {
    double s = 0;
    for (const Atom& a : mu.atoms()) s += a.w * heat_kernel({lambda, x, a.y, a.t}, q);
    return s;
}

BalayageBmo check_balayage_bmo(double lambda, const DiscreteMeasure& mu, const QuadratureSpec& q,
                               std::size_t points) {
    if (mu.empty() || mu.total_variation() == 0) return {};
    if (points < 3) throw UsageError("check_balayage_bmo: need at least 3 sample points");
    double X = 0;
    for (const Atom& a : mu.atoms()) X = std::max(X, a.y + a.t);
    const std::vector<double> grid = linspace(0.0, 4 * X, points);
    std::vector<double> v(points, 0.0);  // S(0) = 0: every kernel vanishes like x^lambda
    for (std::size_t i = 1; i < points; ++i) v[i] = balayage_poisson(lambda, mu, grid[i], q);
    BalayageBmo r;
    r.bmo_est = bmo_o_parts(grid, v, IntervalFamily{}.max_pairs).norm();
    r.cnorm = carleson_norm(mu);
    r.ratio = r.cnorm > 0 ? r.bmo_est / r.cnorm : 0.0;
    return r;
}

}  // namespace bh
