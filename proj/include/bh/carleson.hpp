#pragma once

#include "bh/quadrature.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bh {

struct Atom {
    double y, t, w;
};

// Finite sum of weighted point masses in the upper half plane (0, inf)^2.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    void add(const Atom& a);
    void append(const DiscreteMeasure& other);
    double total_variation() const;
    DiscreteMeasure scaled(double c) const;

    void write_csv(std::ostream& os, const std::string& header_comment = {}) const;  // y,t,w
    static DiscreteMeasure read_csv(std::istream& is);

private:
    std::vector<Atom> atoms_;
};

// sup over closed intervals I of |mu|(I x (0, |I|]) / |I|, exact for atoms.
double carleson_norm(const DiscreteMeasure& mu);

// sum_i w_i P_{t_i}(x, y_i) and sum_i w_i W_{t_i}(x, y_i).
double balayage_poisson(double lambda, const DiscreteMeasure& mu, double x, const QuadratureSpec& q);
double balayage_heat(double lambda, const DiscreteMeasure& mu, double x, const QuadratureSpec& q);

struct BalayageBmo {
    double bmo_est = 0, cnorm = 0, ratio = 0;
};
// Samples the Poisson balayage on `points` uniform points over [0, 4 max(y_i + t_i)]
// and compares its BMO_o estimate with the Carleson norm of mu.
BalayageBmo check_balayage_bmo(double lambda, const DiscreteMeasure& mu, const QuadratureSpec& q,
                               std::size_t points = 800);

}  // namespace bh
