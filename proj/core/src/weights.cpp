#include "fbdf/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace fbdf {

Alpha::Alpha(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0))
        throw std::invalid_argument("alpha must lie strictly between 0 and 1");
}

SchemeKind parse_scheme(std::string_view name) {
    if (name == "gl") return SchemeKind::GrunwaldLetnikov;
    if (name == "l1") return SchemeKind::L1;
    if (name == "bdf2") return SchemeKind::Bdf2;
    if (name == "qia") return SchemeKind::Qia;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected gl, l1, bdf2, qia)");
}

std::string to_string(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::GrunwaldLetnikov: return "gl";
    case SchemeKind::L1: return "l1";
    case SchemeKind::Bdf2: return "bdf2";
    case SchemeKind::Qia: return "qia";
    }
    return "?";
}

double gamma_fn(double x) {
    if (x > 0.0) return std::exp(std::lgamma(x));
    return std::tgamma(x);
}

namespace {

void check_capacity(std::size_t n_max, std::size_t min_n) {
    if (n_max < min_n)
        throw std::invalid_argument("n_max must be at least " + std::to_string(min_n));
    if (n_max > max_capacity)
        throw std::length_error("n_max exceeds the weight table capacity");
}

// Binomial series coefficients of (1 - xi)^alpha.
std::vector<double> gl_coefficients(double alpha, std::size_t n) {
    std::vector<double> w(n + 1);
    w[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
        w[k] = w[k - 1] * (static_cast<double>(k) - 1.0 - alpha) / static_cast<double>(k);
    return w;
}

// Coefficients of (1 - xi)^(alpha - 1), i.e. partial sums of gl_coefficients.
std::vector<double> gl_partial_sums(double alpha, std::size_t n) {
    std::vector<double> s(n + 1);
    s[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
        s[k] = s[k - 1] * (1.0 - alpha / static_cast<double>(k));
    return s;
}

// ((k+1)^{1-a} - k^{1-a}) without cancellation for large k.
double l1_increment(double k, double one_minus_a) {
    if (k == 0.0) return 1.0;
    return std::pow(k, one_minus_a) * std::expm1(one_minus_a * std::log1p(1.0 / k));
}

void fill_l1(double alpha, std::size_t n, std::vector<double>& conv, std::vector<double>& start) {
    const double g = gamma_fn(2.0 - alpha);
    const double a1 = 1.0 - alpha;
    std::vector<double> b(n + 1);
    for (std::size_t k = 0; k <= n; ++k) b[k] = l1_increment(static_cast<double>(k), a1) / g;
    conv.assign(n + 1, 0.0);
    start.assign(n + 1, 0.0);
    conv[0] = b[0];
    for (std::size_t k = 1; k <= n; ++k) conv[k] = b[k] - b[k - 1];
    for (std::size_t k = 1; k <= n; ++k) start[k] = -b[k - 1];
}

}  // namespace

SchemeWeights gl_weights(Alpha alpha, std::size_t n_max) {
    check_capacity(n_max, 1);
    SchemeWeights w;
    w.kind_ = SchemeKind::GrunwaldLetnikov;
    w.alpha_ = alpha;
    w.capacity_ = n_max;
    w.conv_ = gl_coefficients(alpha, n_max);
    const auto s = gl_partial_sums(alpha, n_max);
    w.starting_.assign(n_max + 1, 0.0);
    for (std::size_t n = 1; n <= n_max; ++n) w.starting_[n] = -s[n - 1];
    return w;
}

SchemeWeights l1_weights(Alpha alpha, std::size_t n_max) {
    check_capacity(n_max, 1);
    SchemeWeights w;
    w.kind_ = SchemeKind::L1;
    w.alpha_ = alpha;
    w.capacity_ = n_max;
    fill_l1(alpha, n_max, w.conv_, w.starting_);
    return w;
}

SchemeWeights bdf2_weights(Alpha alpha, std::size_t n_max) {
    check_capacity(n_max, 1);
    const double a = alpha;
    const auto om = gl_coefficients(a, n_max);
    const auto s = gl_partial_sums(a, n_max);
    const double scale = std::pow(1.5, a);

    // 3^{-l} underflows relative to O(1) terms after ~84 factors.
    std::vector<double> p;
    for (double f = 1.0; p.size() <= n_max && f > 1e-40; f /= 3.0) p.push_back(f * om[p.size()]);

    SchemeWeights w;
    w.kind_ = SchemeKind::Bdf2;
    w.alpha_ = alpha;
    w.capacity_ = n_max;
    w.conv_.assign(n_max + 1, 0.0);
    w.starting_.assign(n_max + 1, 0.0);
    for (std::size_t j = 0; j <= n_max; ++j) {
        const std::size_t lmax = std::min(j, p.size() - 1);
        double acc = 0.0, acc_s = 0.0;
        for (std::size_t l = 0; l <= lmax; ++l) {
            acc += p[l] * om[j - l];
            acc_s += p[l] * s[j - l];
        }
        w.conv_[j] = scale * acc;
        if (j + 1 <= n_max) w.starting_[j + 1] = -scale * acc_s;
    }
    return w;
}

SchemeWeights qia_weights(Alpha alpha, std::size_t n_max) {
    check_capacity(n_max, 1);
    const long double a = alpha.value();
    const long double ginv = 1.0L / static_cast<long double>(gamma_fn(1.0 - alpha));

    SchemeWeights w;
    w.kind_ = SchemeKind::Qia;
    w.alpha_ = alpha;
    w.capacity_ = n_max;

    // Quadratic through u = 0, 1, 2 on the first two intervals.
    const long double j0 = std::pow(2.0L, 1.0L - a) / (1.0L - a);
    const long double j1 = std::pow(2.0L, 2.0L - a) / (2.0L - a);
    w.qpair_[0] = static_cast<double>(-(j1 - 1.5L * j0) * ginv);
    w.qpair_[1] = static_cast<double>(-(2.0L * j0 - 2.0L * j1) * ginv);
    w.qpair_[2] = static_cast<double>(-(j1 - 0.5L * j0) * ginv);

    // Interval [m, m+1] with nodes m-1, m, m+1.
    w.qa_.assign(n_max + 1, 0.0);
    w.qb_.assign(n_max + 1, 0.0);
    w.qc_.assign(n_max + 1, 0.0);
    using quad = boost::math::quadrature::gauss<long double, 16>;
    for (std::size_t m = 2; m < n_max; ++m) {
        const long double lo = static_cast<long double>(m);
        const long double i0 = quad::integrate([&](long double v) { return std::pow(lo + v, -a); }, 0.0L, 1.0L);
        const long double i1 = quad::integrate([&](long double v) { return std::pow(lo + v, -a) * v; }, 0.0L, 1.0L);
        w.qa_[m] = static_cast<double>(-(i1 - 0.5L * i0) * ginv);
        w.qb_[m] = static_cast<double>(2.0L * i1 * ginv);
        w.qc_[m] = static_cast<double>(-(i1 + 0.5L * i0) * ginv);
    }

    fill_l1(alpha, std::min<std::size_t>(n_max, 3), w.l1_conv_, w.l1_start_);
    w.conv_.assign(n_max + 1, 0.0);
    w.starting_.assign(n_max + 1, 0.0);
    std::vector<double> r;
    w.row(n_max, r);
    for (std::size_t j = 0; j + 2 <= n_max; ++j) w.conv_[j] = r[j];
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (n < 4)
            w.starting_[n] = w.l1_start_[n];
        else
            w.starting_[n] = w.qc_[n - 1];
    }
    return w;
}

SchemeWeights make_weights(SchemeKind kind, Alpha alpha, std::size_t n_max) {
    switch (kind) {
    case SchemeKind::GrunwaldLetnikov: return gl_weights(alpha, n_max);
    case SchemeKind::L1: return l1_weights(alpha, n_max);
    case SchemeKind::Bdf2: return bdf2_weights(alpha, n_max);
    case SchemeKind::Qia: return qia_weights(alpha, n_max);
    }
    throw std::invalid_argument("unknown scheme");
}

double SchemeWeights::leading(std::size_t n) const {
    if (kind_ == SchemeKind::Qia) return n < 4 ? l1_conv_.at(0) : qpair_[0];
    return conv_.at(0);
}

void SchemeWeights::row(std::size_t n, std::vector<double>& out) const {
    if (n < 1 || n > capacity_) throw std::out_of_range("row index outside weight table");
    out.assign(n + 1, 0.0);
    if (kind_ != SchemeKind::Qia) {
        std::copy_n(conv_.begin(), n, out.begin());
        out[n] = starting_[n];
        return;
    }
    if (n < 4) {
        std::copy_n(l1_conv_.begin(), n, out.begin());
        out[n] = l1_start_[n];
        return;
    }
    out[0] = qpair_[0];
    out[1] = qpair_[1];
    out[2] = qpair_[2];
    for (std::size_t m = 2; m < n; ++m) {
        out[m - 1] += qa_[m];
        out[m] += qb_[m];
        out[m + 1] += qc_[m];
    }
}

std::vector<double> SchemeWeights::row(std::size_t n) const {
    std::vector<double> out;
    row(n, out);
    return out;
}

std::vector<double> qia_row(Alpha alpha, std::size_t n) {
    if (n < 1) throw std::invalid_argument("QIA row index must be at least 1");
    return qia_weights(alpha, n).row(n);
}

PropertyReport verify_assumption_a(std::span<const double> conv) {
    PropertyReport rep;
    if (conv.empty()) return rep;
    if (!(conv[0] > 0.0)) {
        rep.positive_lead = false;
        rep.lead_violation = 0;
    }
    double partial = 0.0;
    for (std::size_t j = 0; j < conv.size(); ++j) {
        partial += conv[j];
        if (j >= 1 && conv[j] > 0.0 && rep.nonpositive_tail) {
            rep.nonpositive_tail = false;
            rep.tail_violation = j;
        }
        if (partial < 0.0 && rep.nonnegative_partial_sums) {
            rep.nonnegative_partial_sums = false;
            rep.partial_sum_violation = j;
        }
    }
    return rep;
}

double decay_exponent(std::span<const double> seq, std::size_t lo, std::size_t hi) {
    if (lo < 1 || hi >= seq.size() || hi < lo + 9)
        throw std::invalid_argument("decay_exponent needs a window of at least 10 indices n >= 1");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(hi - lo + 1);
    for (std::size_t n = lo; n <= hi; ++n) {
        if (seq[n] == 0.0) throw std::domain_error("zero entry in decay_exponent window");
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(std::abs(seq[n]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace fbdf
