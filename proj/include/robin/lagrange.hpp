#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "robin/quadrature.hpp"
#include "robin/spectra1d.hpp"

namespace robin {

/// Nodal Lagrange basis on Gauss–Lobatto points of [0, 1], tabulated at Gauss points.
struct LagrangeBasis {
    int degree = 1;
    std::vector<double> nodes;   ///< GLL points mapped to [0, 1]
    std::vector<double> qpoints;  ///< Gauss points on [0, 1]
    std::vector<double> qweights;
    Eigen::MatrixXd phi;   ///< phi(i, g): basis i at quadrature point g
    Eigen::MatrixXd dphi;  ///< derivative on [0, 1]

    int size() const { return degree + 1; }
};

/// quad_points defaults to degree + 3, exact for polynomial coefficients up to degree 4.
LagrangeBasis lagrange_basis(int degree, int quad_points = 0);

/// Node positions of a degree-p element mesh: element i spans [breaks[i], breaks[i+1]] and
/// contributes its interior GLL points. Size (breaks.size() - 1)·p + 1.
std::vector<double> element_nodes(std::span<const double> breaks, int degree);

/// Degree-p continuous Lagrange discretization of ∫ a|f'|² + q|f|² on the element mesh
/// given by `breaks`. Boundary conditions act on the first and last node as in
/// assemble_form_1d.
SymmetricPencil assemble_form_1d_lagrange(std::span<const double> breaks, int degree,
                                          const Coefficient& a, const Coefficient& q,
                                          const BoundaryCondition& bc);

}  // namespace robin
