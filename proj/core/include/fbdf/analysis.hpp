#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fbdf/ode.hpp"
#include "fbdf/weights.hpp"

namespace fbdf {

// rho1/rho2 are the contraction and dissipation ratios for every scheme; the
// second order schemes additionally report them as rho3/rho4.  The generic
// constant c_alpha in c1 and c3 is normalized to 1.
struct StabilityRatios {
    double rho1 = 0.0;
    double rho2 = 0.0;
    std::optional<double> rho3;
    std::optional<double> rho4;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double lead = 0.0;           // w_0 (mu_0^{(n)} for QIA)
    double positive_mass = 0.0;  // sum of positive weights w_j, j >= 1
    bool contractive_feasible = false;
    bool dissipative_feasible = false;
    bool feasible = false;
};

StabilityRatios stability_ratios(SchemeKind scheme, Alpha alpha, double h, double lambda, double b);

enum class DecayKind { Contractivity, Dissipativity };
enum class NormKind { Euclidean, GridAverage };

struct DecayReport {
    DecayKind kind = DecayKind::Contractivity;
    std::vector<double> times;
    std::vector<double> e;
    std::vector<double> index;  // NaN for t <= 1
    bool degenerate = false;

    double index_at(double t) const;
    double e_at(double t) const;
};

double state_norm(const double* x, std::size_t d, NormKind norm);

// p_alpha(t) = (ln e(t1) - ln e(t)) / ln t with e = |x - y| and t1 = normalize_at.
DecayReport contractivity_index(const Trajectory& x, const Trajectory& y, NormKind norm = NormKind::Euclidean,
                                double normalize_at = 1.0);
// q_alpha(t) with e = |x|.
DecayReport dissipativity_index(const Trajectory& x, NormKind norm = NormKind::Euclidean, double normalize_at = 1.0);
// Index from a precomputed e(t) series.
DecayReport index_from_series(DecayKind kind, std::vector<double> times, std::vector<double> e,
                              double normalize_at = 1.0);

struct AbsorbingEntry {
    std::optional<std::size_t> entry;        // first n with |x_n| <= radius
    bool stays_inside = false;               // |x_m| <= radius for every m >= entry
    std::optional<std::size_t> final_entry;  // first n after which the trajectory never leaves
};

AbsorbingEntry absorbing_entry(const Trajectory& traj, double radius);

struct NonnegativityReport {
    bool ok = true;
    std::optional<std::size_t> first_violation;
};

NonnegativityReport nonnegativity_check(const Trajectory& traj);

}  // namespace fbdf
