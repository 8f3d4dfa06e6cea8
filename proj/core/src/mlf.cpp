#include "fbdf/mlf.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace fbdf {

namespace {

constexpr int max_series_terms = 20000;
constexpr int max_asymptotic_terms = 60;

double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    return static_cast<double>(1.0L / std::tgamma(static_cast<long double>(x)));
}

bool accepted(const MlValue& v) {
    return v.converged && std::isfinite(v.value) && v.error_estimate <= ml_tolerance * std::max(1.0, std::abs(v.value));
}

MlValue series_branch(MlParams p, double z) {
    const long double lz = std::log(std::abs(static_cast<long double>(z)));
    long double sum = 0.0L, max_term = 0.0L, last = 0.0L;
    bool peaked = false;
    int k = 0;
    for (; k < max_series_terms; ++k) {
        const long double arg = static_cast<long double>(p.alpha) * k + p.beta;
        long double mag = std::exp(k * lz - std::lgamma(arg));
        const long double term = (z < 0 && (k & 1)) ? -mag : mag;
        sum += term;
        if (mag > max_term) max_term = mag;
        else peaked = true;
        last = mag;
        if (peaked && mag <= LDBL_EPSILON * max_term * 1e-3L && k > 4) break;
    }
    MlValue v;
    v.value = static_cast<double>(sum);
    v.error_estimate = static_cast<double>(max_term * LDBL_EPSILON * 8.0L + last);
    v.branch = MlBranch::Series;
    v.converged = k < max_series_terms && std::isfinite(v.value);
    return v;
}

MlValue asymptotic_branch(MlParams p, double z) {
    // Optimal truncation: stop before the terms start to grow again.
    double sum = 0.0, prev = INFINITY, err = INFINITY;
    const double zi = 1.0 / z;
    double zk = 1.0;
    for (int k = 1; k <= max_asymptotic_terms; ++k) {
        zk *= zi;
        const double term = zk * rgamma(p.beta - k * p.alpha);
        const double mag = std::abs(term);
        if (mag == 0.0) continue;
        if (mag > prev) {
            err = prev;
            break;
        }
        sum -= term;
        prev = mag;
        err = mag;
    }
    MlValue v;
    v.value = sum;
    v.error_estimate = err;
    v.branch = MlBranch::Asymptotic;
    v.converged = std::isfinite(sum);
    return v;
}

MlValue integral_branch(MlParams p, double z) {
    const double a = p.alpha, b = p.beta;
    const double pi = std::numbers::pi;
    const double s1 = std::sin(pi * (1.0 - b));
    const double s2 = std::sin(pi * (1.0 - b + a));
    const double ca = std::cos(pi * a);
    auto kernel = [&](double chi) {
        if (chi <= 0.0) return 0.0;
        const double num = chi * s1 - z * s2;
        const double den = chi * chi - 2.0 * chi * z * ca + z * z;
        return std::pow(chi, (1.0 - b) / a) * std::exp(-std::pow(chi, 1.0 / a)) * num / den / (a * pi);
    };
    const double split = std::max(1.0, std::abs(z));
    double e1 = 0.0, e2 = 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    const double head = ts.integrate(kernel, 0.0, split, 1e-14, &e1);
    const double tail = es.integrate([&](double u) { return kernel(split + u); }, 1e-14, &e2);
    MlValue v;
    v.value = head + tail;
    v.error_estimate = std::abs(e1 * head) + std::abs(e2 * tail);
    v.branch = MlBranch::Integral;
    v.converged = std::isfinite(v.value);
    return v;
}

}  // namespace

const char* to_string(MlBranch branch) {
    switch (branch) {
    case MlBranch::Trivial: return "trivial";
    case MlBranch::Closed: return "closed";
    case MlBranch::Series: return "series";
    case MlBranch::Asymptotic: return "asymptotic";
    case MlBranch::Integral: return "integral";
    }
    return "?";
}

double ml_series(MlParams params, double z) { return series_branch(params, z).value; }

double ml_asymptotic(MlParams params, double z, int terms) {
    if (z == 0.0) throw std::domain_error("asymptotic expansion undefined at z = 0");
    double sum = 0.0, zk = 1.0;
    for (int k = 1; k <= terms; ++k) {
        zk /= z;
        sum -= zk * rgamma(params.beta - k * params.alpha);
    }
    return sum;
}

MlValue ml_eval(MlParams p, double z) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0))
        throw std::invalid_argument("Mittag-Leffler parameters must be positive");
    if (!std::isfinite(z)) throw std::domain_error("Mittag-Leffler argument must be finite");

    if (z == 0.0) return {rgamma(p.beta), 0.0, MlBranch::Trivial, true};
    if (p.alpha == 1.0 && p.beta == 1.0) return {std::exp(z), 0.0, MlBranch::Closed, true};
    if (p.alpha == 1.0 && p.beta == 2.0) return {std::expm1(z) / z, 0.0, MlBranch::Closed, true};

    const bool negative_fractional = z < 0.0 && p.alpha < 1.0;
    if (std::abs(z) <= 5.0 || !negative_fractional) {
        MlValue s = series_branch(p, z);
        if (accepted(s) || !negative_fractional) return s;
    }

    MlValue asym = asymptotic_branch(p, z);
    if (accepted(asym)) return asym;

    MlValue best = asym;
    if (std::abs(z) > 5.0) {
        MlValue s = series_branch(p, z);
        if (accepted(s)) return s;
        if (s.error_estimate < best.error_estimate) best = s;
    }
    if (p.beta < 1.0 + p.alpha) {
        MlValue in = integral_branch(p, z);
        if (accepted(in)) return in;
        if (in.error_estimate < best.error_estimate) best = in;
    }
    best.converged = false;
    return best;
}

double ml(MlParams params, double z) { return ml_eval(params, z).value; }

std::vector<double> ml_decay_reference(double alpha, double lambda, std::span<const double> t_grid) {
    if (!(lambda < 0.0)) throw std::invalid_argument("ml_decay_reference requires lambda < 0");
    std::vector<double> out;
    out.reserve(t_grid.size());
    double prev = 0.0;
    for (double t : t_grid) {
        if (!(t > prev) && !out.empty()) throw std::invalid_argument("time grid must be increasing");
        if (t < 0.0) throw std::invalid_argument("time grid must be nonnegative");
        out.push_back(ml({alpha, 1.0}, lambda * std::pow(t, alpha)));
        prev = t;
    }
    return out;
}

}  // namespace fbdf
