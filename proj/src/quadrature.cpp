#include "robin/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace robin {
namespace {

// Symmetric Jacobi matrix with zero diagonal and the given off-diagonal entries.
QuadratureRule golub_welsch(const std::vector<double>& offdiag, double mu0) {
    const auto n = static_cast<Eigen::Index>(offdiag.size() + 1);
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        jacobi(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
        jacobi(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    QuadratureRule rule;
    for (Eigen::Index i = 0; i < n; ++i) {
        rule.nodes.push_back(solver.eigenvalues()(i));
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights.push_back(mu0 * v0 * v0);
    }
    // Exact symmetry about 0.
    for (Eigen::Index i = 0; i < n / 2; ++i) {
        const auto a = static_cast<std::size_t>(i);
        const auto b = static_cast<std::size_t>(n - 1 - i);
        const double x = 0.5 * (rule.nodes[b] - rule.nodes[a]);
        const double w = 0.5 * (rule.weights[a] + rule.weights[b]);
        rule.nodes[a] = -x;
        rule.nodes[b] = x;
        rule.weights[a] = w;
        rule.weights[b] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

double legendre(int n, double x) {
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = x;
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    if (n == 1) return {{0.0}, {2.0}};
    std::vector<double> beta;
    for (int k = 1; k < n; ++k) beta.push_back(k / std::sqrt(4.0 * k * k - 1.0));
    return golub_welsch(beta, 2.0);
}

QuadratureRule gauss_lobatto(int n) {
    if (n < 2) throw std::invalid_argument("gauss_lobatto: n must be at least 2");
    QuadratureRule rule;
    rule.nodes.push_back(-1.0);
    if (n > 2) {
        // Interior nodes are the zeros of P'_{n-1}, i.e. Gauss–Jacobi(1,1) nodes.
        if (n == 3) {
            rule.nodes.push_back(0.0);
        } else {
            std::vector<double> beta;
            for (int k = 1; k < n - 2; ++k)
                beta.push_back(std::sqrt(k * (k + 2.0) / ((2.0 * k + 1.0) * (2.0 * k + 3.0))));
            const QuadratureRule inner = golub_welsch(beta, 4.0 / 3.0);
            rule.nodes.insert(rule.nodes.end(), inner.nodes.begin(), inner.nodes.end());
        }
    }
    rule.nodes.push_back(1.0);
    const double scale = 2.0 / (n * (n - 1.0));
    for (double x : rule.nodes) {
        const double p = legendre(n - 1, x);
        rule.weights.push_back(scale / (p * p));
    }
    return rule;
}

}  // namespace robin
