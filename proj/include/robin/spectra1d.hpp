#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace robin {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Discretized quadratic form pair (stiffness K, mass M), both symmetric, M positive definite.
struct SymmetricPencil {
    SparseMatrix K;
    SparseMatrix M;
    Eigen::Index bandwidth = 0;

    Eigen::Index dof() const { return K.rows(); }
};

/// Lowest eigenpairs of a pencil in ascending order (repeated according to multiplicity).
struct Spectrum {
    std::vector<double> eigenvalues;
    std::optional<Eigen::MatrixXd> eigenvectors;  ///< M-orthonormal columns
    Eigen::Index dof = 0;
    double h_min = 0.0;
    double h_max = 0.0;
    /// ‖K v − λ M v‖ measured in the M⁻¹ norm, one entry per eigenpair.
    std::vector<double> residual_norms;
};

struct EigenOptions {
    /// Pencils up to this size go to the dense generalized solver.
    Eigen::Index dense_threshold = 400;
    double tol_res = 1e-9;
    int max_iter = 2000;
    int block_size = 2;
    bool want_vectors = true;
};

/// n smallest eigenvalues of K v = λ M v. `shift` must lie strictly below the spectrum.
Spectrum lowest_eigs(const SymmetricPencil& pencil, int n, double shift,
                     const EigenOptions& options = {});

/// Lower bound on the spectrum from Gershgorin discs of K and M.
double gershgorin_lower_bound(const SymmetricPencil& pencil);

Eigen::Index compute_bandwidth(const SparseMatrix& matrix);

enum class BoundaryKind { dirichlet, periodic, robin_dirichlet };

/// Boundary condition of a 1D form on [x_0, x_N].
///
/// periodic identifies x_N with x_0; robin_dirichlet adds −β|f(x_0)|² and removes x_N.
struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::dirichlet;
    double beta = 0.0;

    static BoundaryCondition dirichlet() { return {BoundaryKind::dirichlet, 0.0}; }
    static BoundaryCondition periodic() { return {BoundaryKind::periodic, 0.0}; }
    static BoundaryCondition robin_dirichlet(double beta) {
        return {BoundaryKind::robin_dirichlet, beta};
    }
};

/// Index of node i of an n_nodes list in the reduced unknowns, or -1 when the boundary
/// condition eliminates it.
Eigen::Index dof_of(std::size_t i, std::size_t n_nodes, const BoundaryCondition& bc);
Eigen::Index dof_count(std::size_t n_nodes, const BoundaryCondition& bc);

using Coefficient = std::function<double(double)>;

/// Piecewise-linear discretization of ∫ a|f'|² + q|f|² on the node list (strictly increasing,
/// at least 8 nodes). Coefficients are sampled at element-interior Gauss points, so jumps
/// placed on nodes are resolved exactly.
SymmetricPencil assemble_form_1d(std::span<const double> nodes, const Coefficient& a,
                                 const Coefficient& q, const BoundaryCondition& bc);

/// Node positions of the degrees of freedom kept by assemble_form_1d.
std::vector<double> dof_positions_1d(std::span<const double> nodes, const BoundaryCondition& bc);

/// Spectrum of an assembled 1D form with h metadata filled from the node list.
Spectrum solve_form_1d(std::span<const double> nodes, const Coefficient& a, const Coefficient& q,
                       const BoundaryCondition& bc, int n, const EigenOptions& options = {});

std::vector<double> uniform_nodes(double a, double b, int cells);

}  // namespace robin
