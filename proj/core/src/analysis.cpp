#include "fbdf/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace fbdf {

StabilityRatios stability_ratios(SchemeKind scheme, Alpha alpha, double h, double lambda, double b) {
    if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
    constexpr std::size_t probe = 8;
    const auto w = make_weights(scheme, alpha, probe);
    const auto row = w.row(probe);

    StabilityRatios r;
    r.lead = row[0];
    // Positive weights past the leading one are absorbed into the lead when splitting the energy sum.
    for (std::size_t j = 1; j + 1 < row.size(); ++j)
        if (row[j] > 0.0) r.positive_mass += row[j];

    const double ha = std::pow(h, alpha.value());
    const double p2 = 2.0 * r.positive_mass;
    const double num = r.lead + p2;
    const double den_c = r.lead - p2 - 2.0 * lambda * ha;
    const double den_d = r.lead - p2 + 2.0 * b * ha;

    r.rho1 = num / den_c;
    r.rho2 = num / den_d;
    r.contractive_feasible = den_c > 0.0 && r.rho1 < 1.0;
    r.dissipative_feasible = den_d > 0.0 && r.rho2 < 1.0;
    r.feasible = r.contractive_feasible && r.dissipative_feasible;

    if (scheme == SchemeKind::Bdf2 || scheme == SchemeKind::Qia) {
        r.rho3 = r.rho1;
        r.rho4 = r.rho2;
    }
    r.c1 = r.contractive_feasible ? 1.0 / ((1.0 - r.rho1) * den_c) : INFINITY;
    r.c2 = r.dissipative_feasible ? 1.0 / (1.0 - r.rho2) : INFINITY;
    r.c3 = r.dissipative_feasible ? r.c2 / den_d : INFINITY;
    return r;
}

double state_norm(const double* x, std::size_t d, NormKind norm) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += x[i] * x[i];
    if (norm == NormKind::GridAverage) s /= static_cast<double>(d);
    return std::sqrt(s);
}

namespace {

std::size_t grid_index(const std::vector<double>& times, double t) {
    if (times.size() < 2) throw std::invalid_argument("decay report needs at least two grid points");
    const double h = times[1] - times[0];
    const auto n = static_cast<std::size_t>(std::llround(t / h));
    if (n >= times.size() || std::abs(times[n] - t) > 1e-9 * std::max(1.0, std::abs(t)))
        throw std::invalid_argument("requested time is not on the trajectory grid");
    return n;
}

}  // namespace

double DecayReport::index_at(double t) const { return index.at(grid_index(times, t)); }
double DecayReport::e_at(double t) const { return e.at(grid_index(times, t)); }

DecayReport index_from_series(DecayKind kind, std::vector<double> times, std::vector<double> e, double normalize_at) {
    if (times.size() != e.size()) throw std::invalid_argument("time and value series differ in length");
    DecayReport rep;
    rep.kind = kind;
    rep.times = std::move(times);
    rep.e = std::move(e);
    rep.index.assign(rep.times.size(), NAN);
    const double e1 = rep.e[grid_index(rep.times, normalize_at)];
    if (!(e1 > 0.0)) {
        rep.degenerate = true;
        return rep;
    }
    const double le1 = std::log(e1);
    for (std::size_t n = 0; n < rep.times.size(); ++n) {
        const double t = rep.times[n];
        if (t > 1.0) rep.index[n] = (le1 - std::log(rep.e[n])) / std::log(t);
    }
    return rep;
}

DecayReport contractivity_index(const Trajectory& x, const Trajectory& y, NormKind norm, double normalize_at) {
    if (x.dimension != y.dimension || x.size() != y.size() || x.h != y.h)
        throw std::invalid_argument("trajectories must share the same grid and dimension");
    const std::size_t d = x.dimension;
    std::vector<double> e(x.size());
    std::vector<double> diff(d);
    for (std::size_t n = 0; n < x.size(); ++n) {
        for (std::size_t i = 0; i < d; ++i) diff[i] = x.component(n, i) - y.component(n, i);
        e[n] = state_norm(diff.data(), d, norm);
    }
    return index_from_series(DecayKind::Contractivity, x.times, std::move(e), normalize_at);
}

DecayReport dissipativity_index(const Trajectory& x, NormKind norm, double normalize_at) {
    std::vector<double> e(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) e[n] = state_norm(x.state_ptr(n), x.dimension, norm);
    return index_from_series(DecayKind::Dissipativity, x.times, std::move(e), normalize_at);
}

AbsorbingEntry absorbing_entry(const Trajectory& traj, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
    AbsorbingEntry out;
    const std::size_t n = traj.size();
    std::optional<std::size_t> last_outside;
    for (std::size_t k = 0; k < n; ++k) {
        const bool inside = state_norm(traj.state_ptr(k), traj.dimension, NormKind::Euclidean) <= radius;
        if (inside && !out.entry) out.entry = k;
        if (!inside) last_outside = k;
    }
    if (!out.entry) return out;
    out.stays_inside = !last_outside || *last_outside < *out.entry;
    const std::size_t fe = last_outside ? *last_outside + 1 : 0;
    if (fe < n) out.final_entry = fe;
    return out;
}

NonnegativityReport nonnegativity_check(const Trajectory& traj) {
    if (traj.dimension != 1) throw std::invalid_argument("nonnegativity check needs a scalar trajectory");
    NonnegativityReport rep;
    for (std::size_t n = 0; n < traj.size(); ++n) {
        if (traj.data[n] < -1e-12) {
            rep.ok = false;
            rep.first_violation = n;
            break;
        }
    }
    return rep;
}

}  // namespace fbdf
