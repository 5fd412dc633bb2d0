#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "robin/effective_operators.hpp"
#include "robin/errors.hpp"
#include "support/arcs.hpp"

using namespace robin;
using robin::testing::circle_arc;
using robin::testing::endpoint_slope_arc;
using robin::testing::vertex_centred_arc;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(ReferenceArcs, HaveTheIntendedMaximum) {
    const auto endpoint = endpoint_slope_arc(2.0, 1.0);
    const auto info = max_curvature_on_arc(endpoint.geom, endpoint.arc);
    EXPECT_EQ(info.location, MaxLocation::endpoint_0);
    EXPECT_EQ(info.m, 1);
    EXPECT_LT(info.dm, 0.0);
    EXPECT_NEAR(endpoint.geom.at(0.0).k2, 0.0, 1e-9);

    const auto interior = vertex_centred_arc(2.0, 1.0, 2.0);
    const auto info2 = max_curvature_on_arc(interior.geom, interior.arc);
    EXPECT_EQ(info2.location, MaxLocation::interior);
    EXPECT_EQ(info2.m, 2);
    EXPECT_NEAR(info2.s_star, 1.0, 1e-9);
}

TEST(LambdaPrime, CircleAtZeroAlphaIsShiftedDirichlet) {
    const auto c = circle_arc(1.0, kPi);
    const auto s = lambda_prime_eigs(c.geom, c.arc, 0.0, 3);
    for (int n = 1; n <= 3; ++n) EXPECT_NEAR(s.eigenvalues[n - 1], n * n - 0.5, 2e-5 * n * n * n * n);
}

TEST(LambdaPrime, ConstantCurvatureIgnoresAlpha) {
    const auto c = circle_arc(2.0, 3.0);
    for (double alpha : {1.0, 100.0, 1e4}) {
        const auto s = lambda_prime_eigs(c.geom, c.arc, alpha, 2);
        for (int n = 1; n <= 2; ++n)
            EXPECT_NEAR(s.eigenvalues[n - 1], kPi * kPi * n * n / 9.0 - 0.25 / 2.0, 1e-4);
    }
}

TEST(LambdaPrime, StableUnderGridDoubling) {
    const auto c = endpoint_slope_arc(2.0, 1.0);
    const auto interior = vertex_centred_arc(2.0, 1.0, 2.0);
    for (const auto* arc : {&c, &interior}) {
        const double e1 = lambda_prime_eigs(arc->geom, arc->arc, 400.0, 1, 1024).eigenvalues[0];
        const double e2 = lambda_prime_eigs(arc->geom, arc->arc, 400.0, 1, 2048).eigenvalues[0];
        EXPECT_NEAR(e1, e2, 1e-6 * std::abs(e2));
    }
}

TEST(LambdaPrime, MonotoneInAlpha) {
    const auto c = vertex_centred_arc(1.5, 1.0, 2.0);
    std::vector<double> previous;
    for (double alpha : {10.0, 30.0, 90.0, 270.0}) {
        const auto s = lambda_prime_eigs(c.geom, c.arc, alpha, 4);
        if (!previous.empty())
            for (int n = 0; n < 4; ++n) EXPECT_GE(s.eigenvalues[n], previous[n] - 1e-9);
        previous = s.eigenvalues;
    }
}

TEST(LambdaRho, OrderingAndFloor) {
    const auto ellipse = endpoint_slope_arc(1.5, 1.0);
    const auto circle = circle_arc(1.0, 2.0);
    for (const auto* c : {&ellipse, &circle}) {
        const double k_star = max_curvature_on_arc(c->geom, c->arc).k_star;
        const double a = effective_floor_a(c->geom, c->arc, k_star);
        for (double alpha : {10.0, 100.0, 1000.0}) {
            for (double rho : {0.25, 0.5}) {
                const auto prime = lambda_prime_eigs(c->geom, c->arc, alpha, 4);
                const auto torus = lambda_rho_eigs(c->geom, c->arc, alpha, rho, 4);
                for (int n = 0; n < 4; ++n) {
                    EXPECT_LE(torus.eigenvalues[n], prime.eigenvalues[n] + 1e-8);
                    EXPECT_GE(torus.eigenvalues[n], -a - 1e-8);
                }
            }
        }
    }
}

TEST(LambdaRho, GapClosesAsAlphaGrows) {
    // Constant curvature keeps E_n(Λ') = O(1); the gap then closes outright.
    const auto circle = circle_arc(1.0, kPi);
    // With an endpoint maximum E_n grows like α^{2/3} and only the relative gap closes.
    const auto endpoint = endpoint_slope_arc(1.5, 1.0);
    std::vector<double> alphas, gaps, relative;
    for (double alpha = 100.0; alpha <= 1e4 + 1; alpha *= std::sqrt(10.0)) {
        alphas.push_back(alpha);
        const double prime = lambda_prime_eigs(circle.geom, circle.arc, alpha, 1).eigenvalues[0];
        const double torus = lambda_rho_eigs(circle.geom, circle.arc, alpha, 0.25, 1).eigenvalues[0];
        gaps.push_back(prime - torus);
        const double p2 = lambda_prime_eigs(endpoint.geom, endpoint.arc, alpha, 1).eigenvalues[0];
        const double t2 = lambda_rho_eigs(endpoint.geom, endpoint.arc, alpha, 0.25, 1).eigenvalues[0];
        relative.push_back((p2 - t2) / p2);
    }
    EXPECT_LE(fit_exponent(alphas, gaps).slope, 0.0);
    EXPECT_LE(fit_exponent(alphas, relative).slope, 0.0);
}

TEST(LambdaRho, Preconditions) {
    const auto c = circle_arc(1.0, 2.0);
    EXPECT_THROW(lambda_rho_eigs(c.geom, c.arc, 10.0, 1.0, 1), PreconditionError);
    EXPECT_THROW(lambda_rho_eigs(c.geom, c.arc, 0.5, 0.5, 1), PreconditionError);
    EXPECT_THROW(lambda_prime_eigs(c.geom, c.arc, 10.0, 1, 100), PreconditionError);
}

TEST(Apriori, SlopesFollowTheOrderOfTheMaximum) {
    const std::vector<double> alphas = {1e3, 1e4, 1e5, 1e6};
    const auto endpoint = endpoint_slope_arc(2.0, 1.0);
    const auto e = apriori_bound_check(endpoint.geom, endpoint.arc, alphas, 1);
    EXPECT_EQ(e.m, 1);
    EXPECT_NEAR(e.fit.slope, 2.0 / 3.0, 0.05);
    EXPECT_TRUE(e.holds);

    const auto interior = vertex_centred_arc(2.0, 1.0, 2.0);
    const auto i = apriori_bound_check(interior.geom, interior.arc, alphas, 1);
    EXPECT_EQ(i.m, 2);
    EXPECT_NEAR(i.fit.slope, 0.5, 0.05);
    EXPECT_TRUE(i.holds);

    const auto circle = circle_arc(1.0, kPi);
    const auto c = apriori_bound_check(circle.geom, circle.arc, alphas, 1);
    EXPECT_NEAR(c.fit.slope, 0.0, 1e-9);
}

TEST(FitExponent, ExactAndNoisyPowerLaws) {
    std::vector<double> xs = {1, 2, 4, 8, 16};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(3.0 * x * x);
    const auto exact = fit_exponent(xs, ys);
    EXPECT_NEAR(exact.slope, 2.0, 1e-12);
    EXPECT_NEAR(exact.intercept, std::log(3.0), 1e-12);
    EXPECT_NEAR(exact.r2, 1.0, 1e-12);

    const double noise[] = {0.01, -0.008, 0.004, -0.01, 0.007};
    ys.clear();
    for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(2.0 * std::pow(xs[i], -0.25) * (1.0 + noise[i]));
    EXPECT_NEAR(fit_exponent(xs, ys).slope, -0.25, 0.05);

    const std::vector<double> one = {1.0};
    EXPECT_THROW(fit_exponent(one, one), PreconditionError);
    ys[2] = -1.0;
    EXPECT_THROW(fit_exponent(xs, ys), FitFailure);
}
