#include "robin/lagrange.hpp"

#include <cmath>
#include <string>

#include "robin/errors.hpp"

namespace robin {

LagrangeBasis lagrange_basis(int degree, int quad_points) {
    if (degree < 1 || degree > 12) throw PreconditionError("Lagrange degree must lie in [1, 12]");
    if (quad_points <= 0) quad_points = degree + 3;
    LagrangeBasis basis;
    basis.degree = degree;
    const QuadratureRule gll = gauss_lobatto(degree + 1);
    for (double x : gll.nodes) basis.nodes.push_back(0.5 * (x + 1.0));
    basis.nodes.front() = 0.0;
    basis.nodes.back() = 1.0;
    const QuadratureRule gauss = gauss_legendre(quad_points);
    for (std::size_t g = 0; g < gauss.nodes.size(); ++g) {
        basis.qpoints.push_back(0.5 * (gauss.nodes[g] + 1.0));
        basis.qweights.push_back(0.5 * gauss.weights[g]);
    }

    const int n = degree + 1;
    basis.phi.resize(n, quad_points);
    basis.dphi.resize(n, quad_points);
    const auto& xs = basis.nodes;
    for (int g = 0; g < quad_points; ++g) {
        const double x = basis.qpoints[static_cast<std::size_t>(g)];
        for (int i = 0; i < n; ++i) {
            const double xi = xs[static_cast<std::size_t>(i)];
            double value = 1.0;
            double slope = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double xj = xs[static_cast<std::size_t>(j)];
                // product rule, accumulated
                slope = slope * (x - xj) / (xi - xj) + value / (xi - xj);
                value *= (x - xj) / (xi - xj);
            }
            basis.phi(i, g) = value;
            basis.dphi(i, g) = slope;
        }
    }
    return basis;
}

std::vector<double> element_nodes(std::span<const double> breaks, int degree) {
    const LagrangeBasis basis = lagrange_basis(degree, 1);
    std::vector<double> nodes;
    for (std::size_t e = 0; e + 1 < breaks.size(); ++e) {
        const double h = breaks[e + 1] - breaks[e];
        for (int i = 0; i < degree; ++i)
            nodes.push_back(breaks[e] + h * basis.nodes[static_cast<std::size_t>(i)]);
    }
    nodes.push_back(breaks.back());
    return nodes;
}

SymmetricPencil assemble_form_1d_lagrange(std::span<const double> breaks, int degree,
                                          const Coefficient& a, const Coefficient& q,
                                          const BoundaryCondition& bc) {
    if (breaks.size() < 3) throw BadGrid("an element mesh needs at least 2 elements");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (!std::isfinite(breaks[i]) || !(breaks[i + 1] > breaks[i]))
            throw BadGrid("element breaks must be finite and strictly increasing");
    const LagrangeBasis basis = lagrange_basis(degree);
    const std::size_t n_nodes = (breaks.size() - 1) * static_cast<std::size_t>(degree) + 1;
    if (n_nodes < 8) throw BadGrid("a 1D grid needs at least 8 nodes");
    const Eigen::Index dof = dof_count(n_nodes, bc);
    const int nb = basis.size();
    const auto nq = static_cast<int>(basis.qpoints.size());

    std::vector<Eigen::Triplet<double>> k_entries;
    std::vector<Eigen::Triplet<double>> m_entries;
    Eigen::MatrixXd local_k(nb, nb);
    Eigen::MatrixXd local_m(nb, nb);
    for (std::size_t e = 0; e + 1 < breaks.size(); ++e) {
        const double x0 = breaks[e];
        const double h = breaks[e + 1] - x0;
        local_k.setZero();
        local_m.setZero();
        for (int g = 0; g < nq; ++g) {
            const double x = x0 + h * basis.qpoints[static_cast<std::size_t>(g)];
            const double w = h * basis.qweights[static_cast<std::size_t>(g)];
            const double av = a(x) * w / (h * h);
            const double qv = q(x) * w;
            for (int i = 0; i < nb; ++i)
                for (int j = 0; j < nb; ++j) {
                    local_k(i, j) += av * basis.dphi(i, g) * basis.dphi(j, g) +
                                     qv * basis.phi(i, g) * basis.phi(j, g);
                    local_m(i, j) += w * basis.phi(i, g) * basis.phi(j, g);
                }
        }
        for (int i = 0; i < nb; ++i) {
            const Eigen::Index gi = dof_of(e * static_cast<std::size_t>(degree) + static_cast<std::size_t>(i), n_nodes, bc);
            if (gi < 0) continue;
            for (int j = 0; j < nb; ++j) {
                const Eigen::Index gj = dof_of(e * static_cast<std::size_t>(degree) + static_cast<std::size_t>(j), n_nodes, bc);
                if (gj < 0) continue;
                // Symmetrized so that K = Kᵀ holds bit for bit.
                k_entries.emplace_back(gi, gj, 0.5 * (local_k(i, j) + local_k(j, i)));
                m_entries.emplace_back(gi, gj, 0.5 * (local_m(i, j) + local_m(j, i)));
            }
        }
    }
    if (bc.kind == BoundaryKind::robin_dirichlet) k_entries.emplace_back(0, 0, -bc.beta);

    SymmetricPencil pencil;
    pencil.K.resize(dof, dof);
    pencil.M.resize(dof, dof);
    pencil.K.setFromTriplets(k_entries.begin(), k_entries.end());
    pencil.M.setFromTriplets(m_entries.begin(), m_entries.end());
    pencil.K.makeCompressed();
    pencil.M.makeCompressed();
    pencil.bandwidth = compute_bandwidth(pencil.K);
    return pencil;
}

}  // namespace robin
