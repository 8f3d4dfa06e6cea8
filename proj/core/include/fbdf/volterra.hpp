#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fbdf {

// x_{n+1} = f_n + sum_{j=0}^{n} F_{n-j} x_j
struct VolterraSystem {
    std::vector<double> forcing;
    std::vector<double> kernel;
    double x0 = 0.0;

    double rho() const;
};

std::vector<double> volterra_solve(const VolterraSystem& sys, std::size_t n_max);

// f_n = c1/(n+1)^alpha, F_n = c2/(n+1)^{1+alpha}
VolterraSystem power_law_system(double alpha, double c1, double c2, std::size_t n_max, double x0 = 0.0);
// Sum of (n+1)^{-(1+alpha)} over n >= 0 (the Hurwitz zeta value zeta(1+alpha)).
double power_kernel_mass(double alpha);

struct LimitEstimate {
    double estimate = 0.0;
    double spread = 0.0;
    bool converged = false;
};

// lim n^alpha x_n from three geometrically spaced indices in the last decade.
LimitEstimate asymptotic_limit_estimate(std::span<const double> x, double alpha);
// Same limit through z_n = x_n (n+1)^{1+alpha} / n, the rescaled sequence of the rate lemma.
LimitEstimate transformed_limit_estimate(std::span<const double> x, double alpha);

struct WClassReport {
    double r = 1.0;
    bool ratio_limit_ok = false;
    double ratio_limit = 0.0;
    double tilde_gamma = 0.0;
    bool tilde_gamma_finite = false;
    bool convolution_condition_ok = false;
    double convolution_tail = 0.0;

    bool member() const noexcept { return ratio_limit_ok && tilde_gamma_finite && convolution_condition_ok; }
};

WClassReport check_w_class(std::span<const double> gamma, double r);

enum class PwStatus { Pass, Fail, Inconclusive };

struct PaleyWienerReport {
    PwStatus status = PwStatus::Pass;
    double l1_mass = 0.0;
    double margin = 0.0;
    double min_distance = 0.0;
    int winding = 0;
};

PaleyWienerReport paley_wiener_check(std::span<const double> kernel);

const char* to_string(PwStatus s);

}  // namespace fbdf
