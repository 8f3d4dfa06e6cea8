#pragma once

#include <span>
#include <vector>

namespace fbdf {

struct MlParams {
    double alpha = 1.0;
    double beta = 1.0;
};

enum class MlBranch { Trivial, Closed, Series, Asymptotic, Integral };

struct MlValue {
    double value = 0.0;
    double error_estimate = 0.0;
    MlBranch branch = MlBranch::Series;
    bool converged = true;
};

inline constexpr double ml_tolerance = 1e-10;

// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z.
MlValue ml_eval(MlParams params, double z);
double ml(MlParams params, double z);
inline double ml(double alpha, double z) { return ml({alpha, 1.0}, z); }

// Truncated asymptotic expansion -sum_{k=1}^{terms} z^{-k} / Gamma(beta - k alpha).
double ml_asymptotic(MlParams params, double z, int terms);
// Taylor series in extended precision; meaningful only for moderate |z|.
double ml_series(MlParams params, double z);

// E_alpha(lambda t^alpha) on a positive grid.
std::vector<double> ml_decay_reference(double alpha, double lambda, std::span<const double> t_grid);

const char* to_string(MlBranch branch);

}  // namespace fbdf
