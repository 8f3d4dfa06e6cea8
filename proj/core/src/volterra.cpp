#include "fbdf/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>
#include <boost/math/special_functions/zeta.hpp>

namespace fbdf {

namespace {

// Log-log slope of |s| over [lo, hi], negated; NaN when a zero entry is hit.
double tail_exponent(std::span<const double> s, std::size_t lo, std::size_t hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double m = 0;
    for (std::size_t n = std::max<std::size_t>(lo, 1); n <= hi; ++n) {
        if (s[n] == 0.0) return NAN;
        const double x = std::log(static_cast<double>(n)), y = std::log(std::abs(s[n]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        m += 1;
    }
    return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// Integral-comparison bound for sum_{n>N} |s_n| when |s_n| ~ C n^{-p}, p > 1.
double power_tail(std::span<const double> s) {
    const std::size_t n = s.size() - 1;
    if (n < 40) return 0.0;
    const double p = tail_exponent(s, n / 2, n);
    if (!std::isfinite(p)) return 0.0;
    if (p <= 1.0) return INFINITY;
    return std::abs(s[n]) * static_cast<double>(n) / (p - 1.0);
}

LimitEstimate three_point(double v1, double v2, double v3) {
    LimitEstimate e;
    const double d1 = v2 - v1, d2 = v3 - v2;
    const double den = d2 - d1;
    const double scale = std::max({std::abs(v1), std::abs(v2), std::abs(v3)});
    e.estimate = v3;
    if (std::abs(den) > 1e-12 * scale && d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1))
        e.estimate = v3 - d2 * d2 / den;
    const double hi = std::max({v1, v2, v3}), lo = std::min({v1, v2, v3});
    e.spread = v3 != 0.0 ? (hi - lo) / std::abs(v3) : INFINITY;
    e.converged = std::isfinite(e.estimate) && e.spread <= 0.1;
    return e;
}

struct Window {
    std::size_t n1, n2, n3;
};

Window last_decade(std::size_t size) {
    if (size < 1001) throw std::invalid_argument("limit estimate needs at least 10^3 terms");
    const std::size_t n3 = size - 1;
    const std::size_t n1 = n3 / 10;
    const auto n2 = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n1) * n3)));
    return {n1, n2, n3};
}

}  // namespace

double VolterraSystem::rho() const {
    double s = 0.0;
    for (double f : kernel) s += std::abs(f);
    return s;
}

std::vector<double> volterra_solve(const VolterraSystem& sys, std::size_t n_max) {
    if (sys.forcing.size() < n_max || sys.kernel.size() < n_max)
        throw std::invalid_argument("forcing and kernel must cover n_max - 1 terms");
    std::vector<double> x(n_max + 1);
    x[0] = sys.x0;
    if (n_max == 0) return x;

    // Reversed kernel so every history sum is a contiguous dot product.
    std::vector<double> rev(n_max);
    for (std::size_t k = 0; k < n_max; ++k) rev[n_max - 1 - k] = sys.kernel[k];

    for (std::size_t n = 0; n < n_max; ++n) {
        Eigen::Map<const Eigen::VectorXd> fk(rev.data() + (n_max - 1 - n), static_cast<Eigen::Index>(n + 1));
        Eigen::Map<const Eigen::VectorXd> xs(x.data(), static_cast<Eigen::Index>(n + 1));
        x[n + 1] = sys.forcing[n] + fk.dot(xs);
    }
    return x;
}

double power_kernel_mass(double alpha) { return boost::math::zeta(1.0 + alpha); }

VolterraSystem power_law_system(double alpha, double c1, double c2, std::size_t n_max, double x0) {
    VolterraSystem sys;
    sys.x0 = x0;
    sys.forcing.resize(n_max);
    sys.kernel.resize(n_max);
    for (std::size_t n = 0; n < n_max; ++n) {
        const double m = static_cast<double>(n + 1);
        sys.forcing[n] = c1 * std::pow(m, -alpha);
        sys.kernel[n] = c2 * std::pow(m, -1.0 - alpha);
    }
    return sys;
}

LimitEstimate asymptotic_limit_estimate(std::span<const double> x, double alpha) {
    const auto w = last_decade(x.size());
    auto v = [&](std::size_t n) { return std::pow(static_cast<double>(n), alpha) * x[n]; };
    return three_point(v(w.n1), v(w.n2), v(w.n3));
}

LimitEstimate transformed_limit_estimate(std::span<const double> x, double alpha) {
    const auto w = last_decade(x.size());
    auto z = [&](std::size_t n) {
        const double m = static_cast<double>(n);
        return x[n] * std::pow(m + 1.0, 1.0 + alpha) / m;
    };
    return three_point(z(w.n1), z(w.n2), z(w.n3));
}

WClassReport check_w_class(std::span<const double> gamma, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
    WClassReport rep;
    rep.r = r;
    std::size_t n = 0;
    while (n + 1 < gamma.size() && gamma[n + 1] > 0.0) ++n;
    if (n < 64) return rep;
    for (std::size_t i = 0; i <= n; ++i)
        if (!(gamma[i] > 0.0)) throw std::invalid_argument("W(r) sequences must be positive");

    rep.ratio_limit = gamma[n - 1] / gamma[n];
    rep.ratio_limit_ok = std::abs(rep.ratio_limit - 1.0 / r) <= 1e-2 * std::max(1.0, 1.0 / r);

    // beta_i = gamma_i r^{-i}; the convolution ratio below is invariant under this rescaling.
    const double lr = std::log(r);
    std::vector<double> beta(n + 1);
    for (std::size_t i = 0; i <= n; ++i) beta[i] = std::exp(std::log(gamma[i]) - static_cast<double>(i) * lr);

    double sum = 0.0;
    for (double b : beta) sum += b;
    const double p = tail_exponent(beta, n / 4, n);
    const bool geometric = beta[n] < 1e-8 * beta[n / 2];
    if (geometric) {
        rep.tilde_gamma_finite = true;
        rep.tilde_gamma = sum;
    } else if (std::isfinite(p) && p > 1.02) {
        rep.tilde_gamma_finite = true;
        rep.tilde_gamma = sum + beta[n] * static_cast<double>(n) / (p - 1.0);
    } else {
        rep.tilde_gamma = INFINITY;
    }

    auto conv_tail = [&](std::size_t top, std::size_t m) {
        double s = 0.0;
        for (std::size_t i = m; i + m <= top; ++i) s += beta[top - i] * beta[i];
        return s / beta[top];
    };
    const std::size_t m = n / 16;
    const double at_n = conv_tail(n, m);
    const double at_quarter = conv_tail(n / 4, m);
    rep.convolution_tail = at_n;
    rep.convolution_condition_ok = std::isfinite(at_n) && at_n < 0.5 && at_n <= 2.0 * at_quarter;
    return rep;
}

const char* to_string(PwStatus s) {
    switch (s) {
    case PwStatus::Pass: return "pass";
    case PwStatus::Fail: return "fail";
    case PwStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

PaleyWienerReport paley_wiener_check(std::span<const double> kernel) {
    PaleyWienerReport rep;
    if (kernel.empty()) {
        rep.margin = rep.min_distance = 1.0;
        return rep;
    }
    double mass = 0.0;
    for (double q : kernel) mass += std::abs(q);
    mass += power_tail(kernel);
    rep.l1_mass = mass;
    if (mass < 1.0) {
        rep.status = PwStatus::Pass;
        rep.margin = 1.0 - mass;
        rep.min_distance = rep.margin;
        return rep;
    }

    constexpr int samples = 2048;
    double min_dist = INFINITY, total_arg = 0.0, prev_arg = 0.0;
    for (int s = 0; s <= samples; ++s) {
        const double theta = 2.0 * std::numbers::pi * s / samples;
        const std::complex<double> zeta = std::polar(1.0, theta);
        std::complex<double> acc = 0.0, zj = 1.0;
        for (double q : kernel) {
            acc += q * zj;
            zj *= zeta;
        }
        const std::complex<double> g = 1.0 - acc;
        min_dist = std::min(min_dist, std::abs(g));
        const double a = std::arg(g);
        if (s > 0) {
            double d = a - prev_arg;
            if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
            if (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
            total_arg += d;
        }
        prev_arg = a;
    }
    rep.min_distance = min_dist;
    rep.winding = static_cast<int>(std::lround(total_arg / (2.0 * std::numbers::pi)));
    rep.margin = min_dist;
    if (min_dist <= 1e-12 || rep.winding != 0)
        rep.status = PwStatus::Fail;
    else if (min_dist < 1e-6)
        rep.status = PwStatus::Inconclusive;
    else
        rep.status = PwStatus::Pass;
    return rep;
}

}  // namespace fbdf
