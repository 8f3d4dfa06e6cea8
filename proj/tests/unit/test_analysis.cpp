#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "fbdf/analysis.hpp"
#include "fbdf/problems.hpp"
#include "fbdf/solver.hpp"

using namespace fbdf;

namespace {

Trajectory scalar_trajectory(double h, const std::vector<double>& values) {
    Trajectory tr;
    tr.dimension = 1;
    tr.h = h;
    for (std::size_t n = 0; n < values.size(); ++n) {
        tr.times.push_back(n * h);
        tr.data.push_back(values[n]);
        tr.residuals.push_back(0.0);
    }
    return tr;
}

}  // namespace

TEST(StabilityRatios, GrunwaldLetnikovClosedForm) {
    const double a = 0.6, h = 0.2, lambda = -1.0, b = 0.25;
    const double ha = std::pow(h, a);
    const auto r = stability_ratios(SchemeKind::GrunwaldLetnikov, Alpha(a), h, lambda, b);
    EXPECT_NEAR(r.rho1, 1.0 / (1.0 - 2.0 * lambda * ha), 1e-14);
    EXPECT_NEAR(r.rho2, 1.0 / (1.0 + 2.0 * b * ha), 1e-14);
    EXPECT_NEAR(r.c1, 1.0 / ((1.0 - r.rho1) * (1.0 - 2.0 * lambda * ha)), 1e-12);
    EXPECT_TRUE(r.feasible);
    EXPECT_FALSE(r.rho3.has_value());
}

TEST(StabilityRatios, L1ScaledByGamma) {
    const double a = 0.4, h = 0.5, lambda = -0.3, b = 2.0;
    const double g = std::tgamma(2.0 - a) * std::pow(h, a);
    const auto r = stability_ratios(SchemeKind::L1, Alpha(a), h, lambda, b);
    EXPECT_NEAR(r.rho1, 1.0 / (1.0 - 2.0 * lambda * g), 1e-13);
    EXPECT_NEAR(r.rho2, 1.0 / (1.0 + 2.0 * b * g), 1e-13);
}

TEST(StabilityRatios, ZeroRatesAreNotFeasible) {
    const auto r = stability_ratios(SchemeKind::GrunwaldLetnikov, Alpha(0.5), 0.1, 0.0, 0.0);
    EXPECT_DOUBLE_EQ(r.rho1, 1.0);
    EXPECT_FALSE(r.feasible);
    EXPECT_TRUE(std::isinf(r.c1));
}

TEST(StabilityRatios, Bdf2NeedsEnoughDamping) {
    // For alpha > 5/8 the second weight is positive and has to be absorbed.
    const double a = 0.8;
    const auto w = bdf2_weights(Alpha(a), 8);
    const double mass = std::max(0.0, w.conv()[2]) + std::max(0.0, w.conv()[3]);
    ASSERT_GT(mass, 0.0);
    const double h = 0.1, ha = std::pow(h, a);
    const double edge = -2.0 * mass / ha;
    EXPECT_FALSE(stability_ratios(SchemeKind::Bdf2, Alpha(a), h, 0.5 * edge, 1.0).contractive_feasible);
    const auto r = stability_ratios(SchemeKind::Bdf2, Alpha(a), h, 2.0 * edge, 1.0);
    EXPECT_TRUE(r.contractive_feasible);
    ASSERT_TRUE(r.rho3.has_value());
    EXPECT_NEAR(*r.rho3, (w.conv()[0] + 2.0 * mass) / (w.conv()[0] - 2.0 * mass - 4.0 * edge * ha), 1e-12);
}

TEST(StabilityRatios, QiaBoundaryIsExactlyOne) {
    const double a = 0.3, h = 0.2, ha = std::pow(h, a);
    const auto row = qia_row(Alpha(a), 8);
    ASSERT_GT(row[2], 0.0);
    const double lambda = -2.0 * row[2] / ha;
    const auto r = stability_ratios(SchemeKind::Qia, Alpha(a), h, lambda, 1.0);
    ASSERT_TRUE(r.rho3.has_value());
    EXPECT_NEAR(*r.rho3, 1.0, 1e-12);
    EXPECT_FALSE(r.contractive_feasible);
    EXPECT_LT(*stability_ratios(SchemeKind::Qia, Alpha(a), h, 1.01 * lambda, 1.0).rho3, 1.0);
}

TEST(DecayIndex, SyntheticPowerLaw) {
    const double h = 0.5;
    std::vector<double> xs, ys;
    for (int n = 0; n <= 400; ++n) {
        xs.push_back(std::pow(1.0 + n * h, -0.5));
        ys.push_back(0.0);
    }
    const auto rep = contractivity_index(scalar_trajectory(h, xs), scalar_trajectory(h, ys));
    EXPECT_FALSE(rep.degenerate);
    EXPECT_TRUE(std::isnan(rep.index[0]));
    EXPECT_TRUE(std::isnan(rep.index_at(1.0)));
    for (double t : {2.0, 50.0, 200.0}) {
        const double ref = 0.5 * (std::log(1.0 + t) - std::log(2.0)) / std::log(t);
        EXPECT_NEAR(rep.index_at(t), ref, 1e-13);
        EXPECT_NEAR(rep.e_at(t), std::pow(1.0 + t, -0.5), 1e-15);
    }
    EXPECT_THROW(rep.index_at(0.3), std::invalid_argument);
}

TEST(DecayIndex, IdenticalTrajectoriesAreDegenerate) {
    const auto tr = scalar_trajectory(0.5, {1.0, 0.5, 0.3, 0.2, 0.1});
    EXPECT_TRUE(contractivity_index(tr, tr).degenerate);
}

TEST(DecayIndex, DissipativityUsesStateNorm) {
    const auto tr = scalar_trajectory(1.0, {3.0, -2.0, 1.0, -0.5, 0.25});
    const auto rep = dissipativity_index(tr);
    EXPECT_NEAR(rep.index_at(4.0), (std::log(2.0) - std::log(0.25)) / std::log(4.0), 1e-14);
    EXPECT_THROW(index_from_series(DecayKind::Dissipativity, {0.0, 1.0}, {1.0}), std::invalid_argument);
}

TEST(DecayIndex, GridAverageNorm) {
    const double x[4] = {1.0, 1.0, 1.0, 1.0};
    EXPECT_DOUBLE_EQ(state_norm(x, 4, NormKind::Euclidean), 2.0);
    EXPECT_DOUBLE_EQ(state_norm(x, 4, NormKind::GridAverage), 1.0);
}

TEST(Absorbing, EntryAndReentry) {
    const auto tr = scalar_trajectory(1.0, {5.0, 3.0, 0.5, 2.0, 0.4, 0.3});
    const auto e = absorbing_entry(tr, 1.0);
    EXPECT_EQ(e.entry, 2u);
    EXPECT_FALSE(e.stays_inside);
    EXPECT_EQ(e.final_entry, 4u);
    const auto never = absorbing_entry(scalar_trajectory(1.0, {5.0, 4.0}), 1.0);
    EXPECT_FALSE(never.entry.has_value());
}

TEST(Absorbing, LorenzEntersBall) {
    const auto p = lorenz_problem({});
    Vector x0(3);
    x0 << 2.0, 1.0, 2.0;
    const auto tr = fbdf_solve(p, SchemeKind::GrunwaldLetnikov, Alpha(0.8), {0.2, 500}, x0);
    const auto e = absorbing_entry(tr, std::sqrt(2.0) + 0.1);
    ASSERT_TRUE(e.entry.has_value());
    EXPECT_TRUE(e.stays_inside);
}

TEST(Nonnegativity, FirstViolation) {
    EXPECT_TRUE(nonnegativity_check(scalar_trajectory(1.0, {1.0, 0.5, -1e-13})).ok);
    const auto bad = nonnegativity_check(scalar_trajectory(1.0, {1.0, 0.5, -1e-13, -1e-11}));
    EXPECT_FALSE(bad.ok);
    EXPECT_EQ(bad.first_violation, 3u);
    Trajectory two;
    two.dimension = 2;
    EXPECT_THROW(nonnegativity_check(two), std::invalid_argument);
}
