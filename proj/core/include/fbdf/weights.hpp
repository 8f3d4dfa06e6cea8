#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fbdf {

// Fractional order, strictly inside (0, 1).
class Alpha {
public:
    explicit Alpha(double value);
    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

private:
    double value_;
};

enum class SchemeKind { GrunwaldLetnikov, L1, Bdf2, Qia };

SchemeKind parse_scheme(std::string_view name);
std::string to_string(SchemeKind kind);

// QIA rows are not a pure convolution: the trailing coefficients depend on n.
constexpr bool is_row_dependent(SchemeKind kind) noexcept { return kind == SchemeKind::Qia; }

// Largest supported step count; guards against accidental huge allocations.
inline constexpr std::size_t max_capacity = 50'000'000;

// Step-n row form:  sum_{j=0}^{n-1} row[j] x_{n-j} + row[n] x_0 = h^alpha f(t_n, x_n).
//
// conv() holds the n-independent coefficients (w_0 .. w_N), starting() the x_0
// coefficient delta_n indexed by n (starting()[0] is unused and zero).  For QIA
// conv()[j] is exact for j <= n-2 only; use row() for the full step-n row.
class SchemeWeights {
public:
    SchemeKind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }
    std::size_t capacity() const noexcept { return capacity_; }
    std::span<const double> conv() const noexcept { return conv_; }
    std::span<const double> starting() const noexcept { return starting_; }

    double leading(std::size_t n) const;
    // Fills out[0..n]; out is resized.
    void row(std::size_t n, std::vector<double>& out) const;
    std::vector<double> row(std::size_t n) const;

private:
    friend SchemeWeights gl_weights(Alpha, std::size_t);
    friend SchemeWeights l1_weights(Alpha, std::size_t);
    friend SchemeWeights bdf2_weights(Alpha, std::size_t);
    friend SchemeWeights qia_weights(Alpha, std::size_t);

    SchemeKind kind_ = SchemeKind::GrunwaldLetnikov;
    double alpha_ = 0.5;
    std::size_t capacity_ = 0;
    std::vector<double> conv_;
    std::vector<double> starting_;

    // QIA pieces: interval contributions A(m), B(m), C(m) and the startup pair.
    std::vector<double> qa_, qb_, qc_;
    double qpair_[3] = {0.0, 0.0, 0.0};
    std::vector<double> l1_conv_, l1_start_;
};

SchemeWeights gl_weights(Alpha alpha, std::size_t n_max);
SchemeWeights l1_weights(Alpha alpha, std::size_t n_max);
SchemeWeights bdf2_weights(Alpha alpha, std::size_t n_max);
SchemeWeights qia_weights(Alpha alpha, std::size_t n_max);
SchemeWeights make_weights(SchemeKind kind, Alpha alpha, std::size_t n_max);

// Full step-n QIA row mu^{(n)}_0 .. mu^{(n)}_n (L1 row for n < 4).
std::vector<double> qia_row(Alpha alpha, std::size_t n);

struct PropertyReport {
    bool positive_lead = true;
    bool nonpositive_tail = true;
    bool nonnegative_partial_sums = true;
    std::optional<std::size_t> lead_violation;
    std::optional<std::size_t> tail_violation;
    std::optional<std::size_t> partial_sum_violation;

    bool all() const noexcept { return positive_lead && nonpositive_tail && nonnegative_partial_sums; }
};

PropertyReport verify_assumption_a(std::span<const double> conv);
inline PropertyReport verify_assumption_a(const SchemeWeights& w) { return verify_assumption_a(w.conv()); }

// Negated least-squares slope of log|seq[n]| against log n for n in [lo, hi].
double decay_exponent(std::span<const double> seq, std::size_t lo, std::size_t hi);

double gamma_fn(double x);

}  // namespace fbdf
