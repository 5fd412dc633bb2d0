#include <gtest/gtest.h>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>

#include "robin/airy.hpp"
#include "robin/errors.hpp"
#include "robin/lagrange.hpp"
#include "robin/model_operators.hpp"
#include "robin/spectra1d.hpp"

using namespace robin;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: bisection on Boost's Ai over the sign change nearest the guess.
double bisect_airy_zero(double lo, double hi) {
    double flo = boost::math::airy_ai(-lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = boost::math::airy_ai(-mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(Airy, MatchesBoostAcrossTheSwitchPoints) {
    for (double x = -14.0; x <= 7.0; x += 0.137) {
        const AiryValue v = airy_ai(x);
        // Relative 1e-7 on the decaying side past the switch, absolute 2e-11 elsewhere.
        const double tol = x > 5.0 ? 1e-7 : 2e-11;
        const double scale = x > 0 ? std::abs(boost::math::airy_ai(x)) : 1.0;
        EXPECT_NEAR(v.ai, boost::math::airy_ai(x), tol * scale) << x;
        const double dscale = x > 0 ? std::abs(boost::math::airy_ai_prime(x)) : 1.0 + std::sqrt(-x);
        EXPECT_NEAR(v.ai_prime, boost::math::airy_ai_prime(x), tol * dscale) << x;
    }
}

TEST(AiryZeros, MatchBisectionOracle) {
    const auto zeros = airy_zeros(8);
    EXPECT_NEAR(zeros[0], 2.33810741, 1e-8);
    EXPECT_NEAR(zeros[2], 5.52055983, 1e-8);
    for (std::size_t j = 0; j < zeros.size(); ++j)
        EXPECT_NEAR(zeros[j], bisect_airy_zero(zeros[j] - 0.3, zeros[j] + 0.3), 1e-10);
    EXPECT_THROW(airy_zeros(0), PreconditionError);
}

TEST(SlabGround, LargeAlphaLimit) {
    const auto g = slab_ground(10.0, 1.0);
    const double alpha = 10.0;
    EXPECT_LT(g.E1, 0.0);
    EXPECT_LT(g.kappa, alpha);
    EXPECT_NEAR(g.kappa, alpha * std::tanh(g.kappa * 1.0), 1e-12 * alpha);
    EXPECT_LE(std::abs(g.E1 + alpha * alpha), 5.0 * alpha * alpha * std::exp(-alpha));
    EXPECT_LE(std::abs(g.psi0_sq - 2.0 * alpha), 10.0 * alpha * std::exp(-alpha));
    EXPECT_THROW(slab_ground(0.5, 1.0), OutOfRegime);
}

TEST(SlabGround, PsiMatchesDirectQuadrature) {
    const double alpha = 3.0, r = 0.6;
    const auto g = slab_ground(alpha, r);
    // ∫₀^r sinh²(κ(r - t)) dt by composite Simpson.
    const int n = 2000;
    double integral = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = r * i / n;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        integral += w * std::pow(std::sinh(g.kappa * (r - t)), 2);
    }
    integral *= r / (3.0 * n);
    EXPECT_NEAR(g.psi0_sq, std::pow(std::sinh(g.kappa * r), 2) / integral, 1e-9 * g.psi0_sq);
}

TEST(SlabGround, KappaRatioIncreasesTowardOne) {
    double previous = 0.0;
    for (double ar = 1.25; ar < 200.0; ar *= 2.0) {
        const auto g = slab_ground(ar, 1.0);
        const double ratio = g.kappa / ar;
        // 1 - κ/α ≈ 2e^{-2αr} rounds to 0 once αr exceeds about 18.
        if (ar < 15.0) {
            EXPECT_LT(ratio, 1.0);
            EXPECT_GT(ratio, previous);
        } else {
            EXPECT_LE(ratio, 1.0);
            EXPECT_GE(ratio, previous);
        }
        previous = ratio;
    }
    // Just above the threshold the root is below the nominal bracket.
    EXPECT_GT(slab_ground(1.001, 1.0).kappa, 0.0);
}

TEST(SlabGround, MatchesRobinSlabPencil) {
    const double alpha = 10.0, r = 1.0;
    const auto pencil = assemble_form_1d_lagrange(uniform_nodes(0.0, r, 40), 6, [](double) { return 1.0; },
                                                  [](double) { return 0.0; },
                                                  BoundaryCondition::robin_dirichlet(alpha));
    const auto s = lowest_eigs(pencil, 3, -2.0 * alpha * alpha);
    const auto g = slab_ground(alpha, r);
    EXPECT_NEAR(s.eigenvalues[0], g.E1, 1e-6 * alpha * alpha);
    const auto pos = slab_positive_eigs(alpha, r, 2);
    EXPECT_GT(pos[0], 0.0);
    EXPECT_NEAR(s.eigenvalues[1], pos[0], 1e-6 * pos[0]);
    EXPECT_NEAR(s.eigenvalues[2], pos[1], 1e-6 * pos[1]);
}

TEST(SlabPositive, LinearElementsAgreeToOneMillionth) {
    const double alpha = 10.0, r = 1.0;
    const auto s = solve_form_1d(uniform_nodes(0.0, r, 4000), [](double) { return 1.0; },
                                 [](double) { return 0.0; }, BoundaryCondition::robin_dirichlet(alpha), 3);
    const auto pos = slab_positive_eigs(alpha, r, 2);
    EXPECT_NEAR(s.eigenvalues[1], pos[0], 1e-6 * pos[0]);
    EXPECT_NEAR(s.eigenvalues[2], pos[1], 1e-6 * pos[1]);
    EXPECT_NEAR(s.eigenvalues[0], slab_ground(alpha, r).E1, 1e-6 * alpha * alpha);
}

TEST(SlabPositive, NeumannDirichletLimit) {
    const double r = 2.0;
    const auto pos = slab_positive_eigs(1e-9, r, 3);
    for (int n = 1; n <= 3; ++n) EXPECT_NEAR(pos[n - 1], std::pow((n - 0.5) * kPi / r, 2), 1e-7);
    // For αr < 1 the lowest eigenvalue is itself positive and comes from the first branch.
    const auto small = slab_positive_eigs(0.2, 1.0, 1);
    EXPECT_GT(small[0], 0.0);
    EXPECT_LT(small[0], std::pow(kPi / 2.0, 2));
}

TEST(PowerWell, HarmonicHalfLineAndLine) {
    const auto half = power_well_spectrum(2, 1.0, true, 5);
    const auto line = power_well_spectrum(2, 1.0, false, 10);
    for (int n = 1; n <= 5; ++n) {
        EXPECT_NEAR(half.eigenvalues[n - 1], 4.0 * n - 1.0, 1e-6);
        EXPECT_NEAR(line.eigenvalues[n - 1], 2.0 * n - 1.0, 1e-6);
        // Odd oscillator states vanish at 0.
        EXPECT_NEAR(half.eigenvalues[n - 1], line.eigenvalues[2 * n - 1], 1e-6 * half.eigenvalues[n - 1]);
    }
    EXPECT_GT(half.T_box, 0.0);
}

TEST(PowerWell, LinearWellGivesAiryZeros) {
    const auto zeros = airy_zeros(5);
    const auto well = power_well_spectrum(1, 1.0, true, 5);
    for (int n = 0; n < 5; ++n) EXPECT_NEAR(well.eigenvalues[n], zeros[n], 1e-6);
    const auto steep = power_well_spectrum(1, 7.0, true, 3);
    for (int n = 0; n < 3; ++n) EXPECT_NEAR(steep.eigenvalues[n], std::pow(7.0, 2.0 / 3.0) * zeros[n], 1e-6 * steep.eigenvalues[n]);
}

TEST(PowerWell, ScalingLaw) {
    for (int m : {1, 2, 3, 4}) {
        const auto base = power_well_spectrum(m, 1.0, true, 3);
        for (double beta : {0.5, 2.0, 7.0}) {
            const auto scaled = power_well_spectrum(m, beta, true, 3);
            for (int n = 0; n < 3; ++n)
                EXPECT_NEAR(scaled.eigenvalues[n], std::pow(beta, 2.0 / (2.0 + m)) * base.eigenvalues[n],
                            1e-6 * std::abs(scaled.eigenvalues[n]));
        }
    }
}

TEST(PowerWell, Preconditions) {
    EXPECT_THROW(power_well_spectrum(3, 1.0, false, 2), PreconditionError);
    EXPECT_THROW(power_well_spectrum(2, 0.0, true, 2), PreconditionError);
    EXPECT_THROW(power_well_spectrum(2, 1.0, true, 0), PreconditionError);
}
