#include "bh/sampled.hpp"

#include "bh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace bh {

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values, double support_bound,
                                 Interp mode)
    : grid_(std::move(grid)), values_(std::move(values)), support_(support_bound), mode_(mode) {
    if (grid_.size() != values_.size()) throw DomainError("sampled function: grid and values differ in length");
    if (grid_.empty()) throw DomainError("sampled function: empty grid");
    if (!(support_ > 0) || !std::isfinite(support_)) throw DomainError("sampled function: support bound must be > 0");
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!std::isfinite(grid_[i]) || !(grid_[i] > 0)) throw DomainError("sampled function: grid must be positive");
        if (i && !(grid_[i] > grid_[i - 1])) throw DomainError("sampled function: grid must be strictly increasing");
        if (!std::isfinite(values_[i])) throw DomainError("sampled function: non-finite value");
    }
    if (mode_ == Interp::spline && grid_.size() >= 3) {
        // natural cubic spline, Thomas algorithm
        const std::size_t n = grid_.size();
        std::vector<double> c(n, 0.0), d(n, 0.0);
        second_.assign(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = grid_[i] - grid_[i - 1], h1 = grid_[i + 1] - grid_[i];
            const double a = h0 / 6, b = (h0 + h1) / 3, cc = h1 / 6;
            const double r = (values_[i + 1] - values_[i]) / h1 - (values_[i] - values_[i - 1]) / h0;
            const double m = b - a * c[i - 1];
            c[i] = cc / m;
            d[i] = (r - a * d[i - 1]) / m;
        }
        for (std::size_t i = n - 1; i-- > 1;) second_[i] = d[i] - c[i] * second_[i + 1];
    }
}

SampledFunction& SampledFunction::with_tail(PowerTail t) {
    tail_ = t;
    return *this;
}

double SampledFunction::end() const {
    if (mode_ == Interp::step) return support_;
    return std::min(grid_.back(), support_);
}

double SampledFunction::operator()(double y) const {
    if (y > support_) return tail_ ? tail_->coefficient * std::pow(y, tail_->exponent) : 0.0;
    if (y < grid_.front()) return values_.front();
    const std::size_t n = grid_.size();
    if (mode_ == Interp::step) {
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), y);
        return values_[static_cast<std::size_t>(it - grid_.begin()) - 1];
    }
    if (y > grid_.back()) return 0.0;
    if (n == 1) return values_[0];
    auto it = std::upper_bound(grid_.begin(), grid_.end(), y);
    std::size_t i = static_cast<std::size_t>(it - grid_.begin());
    if (i >= n) i = n - 1;
    const std::size_t j = i - 1;
    const double h = grid_[i] - grid_[j];
    const double a = (grid_[i] - y) / h, b = 1 - a;
    double v = a * values_[j] + b * values_[i];
    if (mode_ == Interp::spline && !second_.empty())
        v += ((a * a * a - a) * second_[j] + (b * b * b - b) * second_[i]) * h * h / 6;
    return v;
}

std::vector<double> SampledFunction::breakpoints() const {
    std::vector<double> out;
    const double e = end();
    if (mode_ == Interp::spline) {
        out.push_back(grid_.front());
    } else {
        for (double g : grid_)
            if (g <= e) out.push_back(g);
    }
    out.push_back(e);
    return out;
}

bool SampledFunction::is_zero() const {
    if (tail_ && tail_->coefficient != 0) return false;
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0; });
}

SampledFunction SampledFunction::scaled(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= c;
    SampledFunction out(grid_, std::move(v), support_, mode_);
    if (tail_) out.with_tail({tail_->exponent, tail_->coefficient * c});
    return out;
}

void SampledFunction::write_csv(std::ostream& os, const std::string& header_comment) const {
    if (!header_comment.empty()) os << "# " << header_comment << '\n';
    char buf[96];
    std::snprintf(buf, sizeof buf, "# support_bound=%.17g", support_);
    os << buf << '\n' << "grid,value\n";
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g", grid_[i], values_[i]);
        os << buf << '\n';
    }
}

SampledFunction SampledFunction::read_csv(std::istream& is, Interp mode) {
    std::vector<double> g, v;
    double support = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto p = line.find("support_bound=");
            if (p != std::string::npos) support = std::stod(line.substr(p + 14));
            continue;
        }
        if (line.find_first_of("0123456789") != 0 && line[0] != '-' && line[0] != '.') continue;  // header row
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a >> b)) throw DomainError("sampled function CSV: malformed row '" + line + "'");
        g.push_back(a);
        v.push_back(b);
    }
    if (g.empty()) throw DomainError("sampled function CSV: no rows");
    if (support == 0) support = g.back();
    return SampledFunction(std::move(g), std::move(v), support, mode);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = a;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.back() = b;
    return out;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    const double la = std::log(a), lb = std::log(b);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = n == 1 ? a : std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1));
    if (n > 1) {
        out.front() = a;
        out.back() = b;
    }
    return out;
}

}  // namespace bh
