#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "fbdf/volterra.hpp"
#include "fbdf/weights.hpp"

using namespace fbdf;

namespace {

std::vector<double> naive_recursion(const VolterraSystem& s, std::size_t n_max) {
    std::vector<double> x{s.x0};
    for (std::size_t n = 0; n < n_max; ++n) {
        double v = s.forcing[n];
        for (std::size_t j = 0; j <= n; ++j) v += s.kernel[n - j] * x[j];
        x.push_back(v);
    }
    return x;
}

}  // namespace

TEST(Volterra, ZeroKernelCopiesForcing) {
    VolterraSystem s{{1.0, 2.0, 3.0, 4.0}, {0.0, 0.0, 0.0, 0.0}, 5.0};
    const auto x = volterra_solve(s, 4);
    ASSERT_EQ(x.size(), 5u);
    EXPECT_EQ(x[0], 5.0);
    for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(x[n + 1], s.forcing[n]);
}

TEST(Volterra, MatchesNaiveRecursion) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    VolterraSystem s;
    s.x0 = 0.7;
    for (int i = 0; i < 400; ++i) {
        s.forcing.push_back(u(rng) * 10.0);
        s.kernel.push_back(u(rng) / (1.0 + i));
    }
    const auto a = volterra_solve(s, 400);
    const auto b = naive_recursion(s, 400);
    for (std::size_t n = 0; n <= 400; ++n) EXPECT_NEAR(a[n], b[n], 1e-12 * std::max(1.0, std::abs(b[n])));
}

TEST(Volterra, Linearity) {
    auto a = power_law_system(0.4, 1.0, 0.3, 500, 1.0);
    auto b = power_law_system(0.4, -2.0, 0.3, 500, 0.5);
    VolterraSystem c = a;
    for (std::size_t i = 0; i < c.forcing.size(); ++i) c.forcing[i] += b.forcing[i];
    c.x0 = a.x0 + b.x0;
    const auto xa = volterra_solve(a, 500), xb = volterra_solve(b, 500), xc = volterra_solve(c, 500);
    for (std::size_t n = 0; n <= 500; ++n) EXPECT_NEAR(xc[n], xa[n] + xb[n], 1e-12);
}

TEST(Volterra, ConstantForcingFixedPoint) {
    VolterraSystem s;
    const double q = 0.6;
    for (int i = 0; i < 200; ++i) {
        s.forcing.push_back(1.0);
        s.kernel.push_back(q * std::pow(0.5, i + 1));
    }
    EXPECT_NEAR(s.rho(), q, 1e-12);
    const auto x = volterra_solve(s, 200);
    EXPECT_NEAR(x.back(), 1.0 / (1.0 - q), 1e-10);
}

TEST(Volterra, KernelMassAgainstEulerMaclaurin) {
    for (double a : {0.3, 0.5, 0.8}) {
        const std::size_t N = 100000;
        double s = 0.0;
        for (std::size_t n = N; n >= 1; --n) s += std::pow(double(n), -(1.0 + a));
        const double Nd = double(N);
        s += std::pow(Nd, -a) / a - 0.5 * std::pow(Nd, -1.0 - a);
        EXPECT_NEAR(power_kernel_mass(a), s, 1e-9);
    }
}

TEST(Volterra, DecayLimit) {
    const double alpha = 0.5, c1 = 1.0, rho = 0.5;
    const double c2 = rho / power_kernel_mass(alpha);
    const auto x = volterra_solve(power_law_system(alpha, c1, c2, 100000), 100000);
    const auto est = asymptotic_limit_estimate(x, alpha);
    EXPECT_TRUE(est.converged);
    EXPECT_NEAR(est.estimate, 2.0, 0.04);
    const auto tr = transformed_limit_estimate(x, alpha);
    EXPECT_NEAR(tr.estimate, est.estimate, est.spread + tr.spread + 1e-6);
}

TEST(LimitEstimate, ExactPowerLaw) {
    std::vector<double> x(2001);
    x[0] = 0.0;
    for (std::size_t n = 1; n < x.size(); ++n) x[n] = 3.0 * std::pow(double(n), -0.6);
    const auto e = asymptotic_limit_estimate(x, 0.6);
    EXPECT_TRUE(e.converged);
    EXPECT_NEAR(e.estimate, 3.0, 1e-10);
}

TEST(LimitEstimate, WrongRateFlagged) {
    std::vector<double> x(20001);
    for (std::size_t n = 1; n < x.size(); ++n) x[n] = std::pow(double(n), -0.3);
    EXPECT_FALSE(asymptotic_limit_estimate(x, 0.6).converged);
    EXPECT_THROW(asymptotic_limit_estimate(std::vector<double>(50, 1.0), 0.5), std::invalid_argument);
}

TEST(WClass, PowerLawMember) {
    for (double a : {0.3, 0.5, 0.9}) {
        std::vector<double> g(20000);
        for (std::size_t n = 0; n < g.size(); ++n) g[n] = std::pow(n + 1.0, -(1.0 + a));
        const auto rep = check_w_class(g, 1.0);
        EXPECT_TRUE(rep.member()) << "alpha=" << a;
        EXPECT_NEAR(rep.tilde_gamma, power_kernel_mass(a), 0.02 * power_kernel_mass(a));
    }
}

TEST(WClass, SlowPowerLawRejected) {
    std::vector<double> g(20000);
    for (std::size_t n = 0; n < g.size(); ++n) g[n] = std::pow(n + 1.0, -0.5);
    const auto rep = check_w_class(g, 1.0);
    EXPECT_FALSE(rep.tilde_gamma_finite);
    EXPECT_FALSE(rep.member());
}

TEST(WClass, GeometricRatio) {
    std::vector<double> g(400);
    for (std::size_t n = 0; n < g.size(); ++n) g[n] = std::pow(2.0, -double(n));
    const auto rep = check_w_class(g, 0.5);
    EXPECT_TRUE(rep.ratio_limit_ok);
    EXPECT_NEAR(rep.ratio_limit, 2.0, 1e-12);
}

TEST(PaleyWiener, SmallMassPasses) {
    const std::vector<double> q{0.2, 0.1, 0.05};
    const auto rep = paley_wiener_check(q);
    EXPECT_EQ(rep.status, PwStatus::Pass);
    EXPECT_NEAR(rep.margin, 0.65, 1e-12);
}

TEST(PaleyWiener, UnitAtOriginFails) {
    const std::vector<double> q{1.0, 0.0, 0.0, 0.0};
    EXPECT_EQ(paley_wiener_check(q).status, PwStatus::Fail);
}

TEST(PaleyWiener, LargeMassAwayFromOne) {
    // 1 - q(zeta) = 1 + 1.5 zeta vanishes at zeta = -2/3, inside the disk.
    EXPECT_EQ(paley_wiener_check(std::vector<double>{0.0, -1.5}).status, PwStatus::Fail);
    // A constant q = -1.5 leaves 1 - q = 2.5 everywhere.
    const auto ok = paley_wiener_check(std::vector<double>{-1.5});
    EXPECT_EQ(ok.status, PwStatus::Pass);
    EXPECT_EQ(ok.winding, 0);
}

TEST(PaleyWiener, GrunwaldLetnikovKernel) {
    const double b = 1.0, h = 0.1, a = 0.5;
    const double s = 2.0 * b * std::pow(h, a);
    const auto w = gl_weights(Alpha(a), 200000);
    std::vector<double> q(w.conv().size() - 1);
    for (std::size_t j = 1; j < w.conv().size(); ++j) q[j - 1] = std::abs(w.conv()[j]) / (1.0 + s);
    const auto rep = paley_wiener_check(q);
    EXPECT_EQ(rep.status, PwStatus::Pass);
    EXPECT_NEAR(rep.margin, s / (1.0 + s), 1e-3);
}
