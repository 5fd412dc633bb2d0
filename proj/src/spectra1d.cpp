#include "robin/spectra1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "robin/errors.hpp"
#include "robin/quadrature.hpp"

namespace robin {
namespace {

void check_nodes(std::span<const double> nodes) {
    if (nodes.size() < 8) throw BadGrid("a 1D grid needs at least 8 nodes");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i]) || !(nodes[i + 1] > nodes[i]))
            throw BadGrid("grid nodes must be finite and strictly increasing");
    }
}

}  // namespace

Eigen::Index dof_of(std::size_t i, std::size_t n_nodes, const BoundaryCondition& bc) {
    const std::size_t last = n_nodes - 1;
    switch (bc.kind) {
        case BoundaryKind::dirichlet:
            return (i == 0 || i == last) ? -1 : static_cast<Eigen::Index>(i - 1);
        case BoundaryKind::periodic:
            return i == last ? 0 : static_cast<Eigen::Index>(i);
        case BoundaryKind::robin_dirichlet:
            return i == last ? -1 : static_cast<Eigen::Index>(i);
    }
    return -1;
}

Eigen::Index dof_count(std::size_t n_nodes, const BoundaryCondition& bc) {
    switch (bc.kind) {
        case BoundaryKind::dirichlet: return static_cast<Eigen::Index>(n_nodes) - 2;
        case BoundaryKind::periodic:
        case BoundaryKind::robin_dirichlet: return static_cast<Eigen::Index>(n_nodes) - 1;
    }
    return 0;
}

std::vector<double> uniform_nodes(double a, double b, int cells) {
    std::vector<double> nodes(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i) nodes[static_cast<std::size_t>(i)] = a + (b - a) * i / cells;
    nodes.back() = b;
    return nodes;
}

SymmetricPencil assemble_form_1d(std::span<const double> nodes, const Coefficient& a,
                                 const Coefficient& q, const BoundaryCondition& bc) {
    check_nodes(nodes);
    static const QuadratureRule rule = gauss_legendre(3);
    const std::size_t n_nodes = nodes.size();
    const Eigen::Index dof = dof_count(n_nodes, bc);

    std::vector<Eigen::Triplet<double>> k_entries;
    std::vector<Eigen::Triplet<double>> m_entries;
    k_entries.reserve(4 * n_nodes + 1);
    m_entries.reserve(4 * n_nodes);
    for (std::size_t e = 0; e + 1 < n_nodes; ++e) {
        const double x0 = nodes[e];
        const double h = nodes[e + 1] - x0;
        double a_int = 0.0;
        double q00 = 0.0;
        double q01 = 0.0;
        double q11 = 0.0;
        for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
            const double xi = 0.5 * (rule.nodes[g] + 1.0);
            const double w = 0.5 * rule.weights[g] * h;
            const double x = x0 + xi * h;
            const double qv = q(x);
            a_int += w * a(x);
            q00 += w * qv * (1.0 - xi) * (1.0 - xi);
            q01 += w * qv * (1.0 - xi) * xi;
            q11 += w * qv * xi * xi;
        }
        const double stiff = a_int / (h * h);
        const double local_k[2][2] = {{stiff + q00, -stiff + q01}, {-stiff + q01, stiff + q11}};
        const double local_m[2][2] = {{h / 3.0, h / 6.0}, {h / 6.0, h / 3.0}};
        const Eigen::Index ids[2] = {dof_of(e, n_nodes, bc), dof_of(e + 1, n_nodes, bc)};
        for (int i = 0; i < 2; ++i) {
            if (ids[i] < 0) continue;
            for (int j = 0; j < 2; ++j) {
                if (ids[j] < 0) continue;
                k_entries.emplace_back(ids[i], ids[j], local_k[i][j]);
                m_entries.emplace_back(ids[i], ids[j], local_m[i][j]);
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

std::vector<double> dof_positions_1d(std::span<const double> nodes, const BoundaryCondition& bc) {
    check_nodes(nodes);
    std::vector<double> positions(static_cast<std::size_t>(dof_count(nodes.size(), bc)));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Eigen::Index id = dof_of(i, nodes.size(), bc);
        if (id >= 0 && !(bc.kind == BoundaryKind::periodic && i == nodes.size() - 1))
            positions[static_cast<std::size_t>(id)] = nodes[i];
    }
    return positions;
}

Spectrum solve_form_1d(std::span<const double> nodes, const Coefficient& a, const Coefficient& q,
                       const BoundaryCondition& bc, int n, const EigenOptions& options) {
    const SymmetricPencil pencil = assemble_form_1d(nodes, a, q, bc);
    const double shift = gershgorin_lower_bound(pencil) - 1.0;
    Spectrum spectrum = lowest_eigs(pencil, n, shift, options);
    double h_min = nodes.back() - nodes.front();
    double h_max = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        h_min = std::min(h_min, nodes[i + 1] - nodes[i]);
        h_max = std::max(h_max, nodes[i + 1] - nodes[i]);
    }
    spectrum.h_min = h_min;
    spectrum.h_max = h_max;
    return spectrum;
}

}  // namespace robin
