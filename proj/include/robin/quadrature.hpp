#pragma once

#include <vector>

namespace robin {

/// Nodes and weights of a quadrature rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss–Legendre rule (Golub–Welsch).
QuadratureRule gauss_legendre(int n);

/// n-point Gauss–Lobatto–Legendre rule; includes both endpoints, n >= 2.
QuadratureRule gauss_lobatto(int n);

}  // namespace robin
