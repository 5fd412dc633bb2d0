#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "robin/errors.hpp"
#include "robin/lagrange.hpp"
#include "robin/mesh.hpp"

using namespace robin;

namespace {
constexpr double kPi = std::numbers::pi;
const Coefficient one = [](double) { return 1.0; };
const Coefficient zero = [](double) { return 0.0; };
}  // namespace

TEST(LagrangeBasis, PartitionOfUnityAndExactDerivatives) {
    for (int p : {1, 2, 4, 7}) {
        const LagrangeBasis b = lagrange_basis(p);
        for (std::size_t g = 0; g < b.qpoints.size(); ++g) {
            EXPECT_NEAR(b.phi.col(static_cast<Eigen::Index>(g)).sum(), 1.0, 1e-13);
            EXPECT_NEAR(b.dphi.col(static_cast<Eigen::Index>(g)).sum(), 0.0, 1e-11);
            // Interpolating x^p reproduces it, and its slope.
            double value = 0.0, slope = 0.0;
            for (int i = 0; i <= p; ++i) {
                value += std::pow(b.nodes[static_cast<std::size_t>(i)], p) * b.phi(i, static_cast<Eigen::Index>(g));
                slope += std::pow(b.nodes[static_cast<std::size_t>(i)], p) * b.dphi(i, static_cast<Eigen::Index>(g));
            }
            const double x = b.qpoints[g];
            EXPECT_NEAR(value, std::pow(x, p), 1e-12);
            EXPECT_NEAR(slope, p * std::pow(x, p - 1), 1e-10);
        }
    }
}

TEST(LagrangeAssembly, HighOrderDirichletLaplacianIsSpectrallyAccurate) {
    const auto breaks = uniform_nodes(0.0, kPi, 10);
    const auto pencil = assemble_form_1d_lagrange(breaks, 6, one, zero, BoundaryCondition::dirichlet());
    EXPECT_EQ(pencil.dof(), 59);
    const auto s = lowest_eigs(pencil, 4, -1.0);
    for (int n = 1; n <= 4; ++n) EXPECT_NEAR(s.eigenvalues[n - 1], n * n, 1e-9 * n * n);
}

TEST(LagrangeAssembly, DegreeOneMatchesLinearElements) {
    const auto nodes = uniform_nodes(0.0, 2.0, 40);
    const Coefficient q = [](double x) { return x * x; };
    const auto p1 = assemble_form_1d(nodes, one, q, BoundaryCondition::robin_dirichlet(2.0));
    const auto lg = assemble_form_1d_lagrange(nodes, 1, one, q, BoundaryCondition::robin_dirichlet(2.0));
    const Eigen::MatrixXd dk = Eigen::MatrixXd(p1.K) - Eigen::MatrixXd(lg.K);
    const Eigen::MatrixXd dm = Eigen::MatrixXd(p1.M) - Eigen::MatrixXd(lg.M);
    EXPECT_LE(dk.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE(dm.cwiseAbs().maxCoeff(), 1e-13);
}

TEST(LagrangeAssembly, PeriodicKeepsDoubleEigenvalues) {
    const double L = 3.0;
    const auto pencil = assemble_form_1d_lagrange(uniform_nodes(0.0, L, 12), 5, one, zero,
                                                  BoundaryCondition::periodic());
    const auto s = lowest_eigs(pencil, 5, -1.0);
    const double w = 2.0 * kPi / L;
    EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-10);
    EXPECT_NEAR(s.eigenvalues[1], w * w, 1e-8);
    EXPECT_NEAR(s.eigenvalues[2], w * w, 1e-8);
    EXPECT_NEAR(s.eigenvalues[3], 4 * w * w, 1e-7);
    EXPECT_NEAR(s.eigenvalues[4], 4 * w * w, 1e-7);
}

TEST(LagrangeAssembly, ElementNodesIncludeBreaks) {
    const std::vector<double> breaks = {0.0, 1.0, 3.0};
    const auto nodes = element_nodes(breaks, 3);
    ASSERT_EQ(nodes.size(), 7u);
    EXPECT_EQ(nodes[0], 0.0);
    EXPECT_EQ(nodes[3], 1.0);
    EXPECT_EQ(nodes[6], 3.0);
    EXPECT_NEAR(nodes[1], 0.5 - 0.5 / std::sqrt(5.0), 1e-14);
}

TEST(GradedNodes, RespectsSizesAndRequiredPoints) {
    MeshSpec spec;
    spec.h_max = 0.2;
    spec.growth = 0.3;
    spec.zones = {{1.0, 1e-3}};
    const std::vector<double> required = {2.5};
    const auto nodes = graded_nodes(0.0, 4.0, spec, required);
    EXPECT_EQ(nodes.front(), 0.0);
    EXPECT_EQ(nodes.back(), 4.0);
    EXPECT_NE(std::find(nodes.begin(), nodes.end(), 2.5), nodes.end());
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double h = nodes[i + 1] - nodes[i];
        EXPECT_GT(h, 0.0);
        const double mid = 0.5 * (nodes[i] + nodes[i + 1]);
        EXPECT_LE(h, 1.05 * spec.size_at(mid) + 1e-12);
    }
    // The finest cell sits near the zone centre.
    double h_min = 1.0, at = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (nodes[i + 1] - nodes[i] < h_min) {
            h_min = nodes[i + 1] - nodes[i];
            at = nodes[i];
        }
    EXPECT_NEAR(at, 1.0, 0.01);
    EXPECT_LE(h_min, 1.1e-3);
}

TEST(GradedNodes, PeriodicDistanceWrapsAround) {
    MeshSpec spec;
    spec.h_max = 0.5;
    spec.zones = {{0.0, 0.01}};
    spec.period = 5.0;
    EXPECT_NEAR(spec.size_at(4.99), 0.01 + 0.25 * 0.01, 1e-12);
    const auto nodes = graded_nodes(0.0, 5.0, spec);
    EXPECT_LT(nodes.back() - nodes[nodes.size() - 2], 0.02);
}

TEST(GeometricNodes, FirstCellAndRatio) {
    const auto nodes = geometric_nodes(0.3, 1e-3, 1.3, 0.05);
    EXPECT_EQ(nodes.front(), 0.0);
    EXPECT_EQ(nodes.back(), 0.3);
    EXPECT_NEAR(nodes[1], 1e-3, 1e-15);
    for (std::size_t i = 1; i + 2 < nodes.size(); ++i)
        EXPECT_LE((nodes[i + 1] - nodes[i]) / (nodes[i] - nodes[i - 1]), 1.3 + 1e-12);
    EXPECT_THROW(geometric_nodes(0.0, 1e-3, 1.3, 0.05), PreconditionError);
}
