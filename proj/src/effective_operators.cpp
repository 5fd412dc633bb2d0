#include "robin/effective_operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "robin/errors.hpp"
#include "robin/mesh.hpp"

namespace robin {
namespace {

void check_grid(int n_grid) {
    if (n_grid < 256) throw PreconditionError("effective operators need n_grid >= 256");
}

Spectrum solve_on(std::span<const double> nodes, const Coefficient& q, const BoundaryCondition& bc,
                  int n) {
    return solve_form_1d(nodes, [](double) { return 1.0; }, q, bc, n);
}

}  // namespace

double effective_floor_a(const SampledGeometry& geom, const RobinArc& arc, double k_star) {
    double a = 0.0;
    for (std::size_t i = 0; i < geom.size() && geom.s_grid[i] <= arc.ell; ++i) {
        const double k = geom.k[i];
        a = std::max(a, std::abs(k_star * k_star - 2.0 * k * k_star - k * k) / 4.0);
    }
    const double k_end = geom.at(arc.ell).k;
    return std::max(a, std::abs(k_star * k_star - 2.0 * k_end * k_star - k_end * k_end) / 4.0);
}

std::vector<double> lambda_prime_nodes(const RobinArc& arc, const CurvatureMaxInfo& info,
                                       double alpha, int n_grid) {
    check_grid(n_grid);
    MeshSpec spec;
    spec.h_max = arc.ell / n_grid;
    spec.growth = 0.1;
    if (info.location != MaxLocation::constant && alpha > 0.0) {
        // Unresolved orders are flatter than 2; the quartic length is the safe choice.
        const int m = info.m > 0 ? info.m : 4;
        const double length = std::pow(alpha, -1.0 / (m + 2.0));
        const double h = length / (0.5 * n_grid);
        if (h < spec.h_max) spec.zones.push_back({info.s_star, h, 8.0 * length});
    }
    return graded_nodes(0.0, arc.ell, spec);
}

Spectrum lambda_prime_eigs(const SampledGeometry& geom, const RobinArc& arc, double alpha, int n,
                           int n_grid) {
    if (!(alpha >= 0.0)) throw PreconditionError("lambda_prime_eigs needs α >= 0");
    const CurvatureMaxInfo info = max_curvature_on_arc(geom, arc);
    const std::vector<double> nodes = lambda_prime_nodes(arc, info, alpha, n_grid);
    const EffectivePotential potential{alpha, info.k_star};
    return solve_on(nodes, [&](double s) { return potential.on_arc(geom.at(s).k); },
                    BoundaryCondition::dirichlet(), n);
}

Spectrum lambda_rho_eigs(const SampledGeometry& geom, const RobinArc& arc, double alpha,
                         double rho, int n, int n_grid) {
    if (!(rho > 0.0 && rho < 1.0)) throw PreconditionError("lambda_rho_eigs needs ρ ∈ (0, 1)");
    if (!(alpha >= 1.0)) throw PreconditionError("lambda_rho_eigs needs α >= 1");
    const CurvatureMaxInfo info = max_curvature_on_arc(geom, arc);
    std::vector<double> nodes = lambda_prime_nodes(arc, info, alpha, n_grid);

    // Outside Γ the penalty P = α^{2-ρ} confines eigenfunctions to a layer of width P^{-1/2}
    // at each junction.
    const double penalty = std::pow(alpha, 2.0 - rho);
    const double layer = 1.0 / std::sqrt(penalty);
    MeshSpec outside;
    outside.h_max = arc.ell / n_grid;
    outside.growth = 0.25;
    outside.zones = {{arc.ell, std::min(outside.h_max, layer / 16.0), 2.0 * layer},
                     {geom.L, std::min(outside.h_max, layer / 16.0), 2.0 * layer}};
    const std::vector<double> tail = graded_nodes(arc.ell, geom.L, outside);
    nodes.insert(nodes.end(), tail.begin() + 1, tail.end());

    const EffectivePotential potential{alpha, info.k_star};
    const double ell = arc.ell;
    return solve_on(nodes,
                    [&](double s) {
                        return (s > 0.0 && s < ell) ? potential.on_arc(geom.at(s).k) : penalty;
                    },
                    BoundaryCondition::periodic(), n);
}

AprioriCheck apriori_bound_check(const SampledGeometry& geom, const RobinArc& arc,
                                 std::span<const double> alpha_grid, int n, int n_grid) {
    const CurvatureMaxInfo info = max_curvature_on_arc(geom, arc);
    AprioriCheck check;
    check.m = info.m;
    if (info.location != MaxLocation::constant && info.m == 0)
        throw PreconditionError("apriori_bound_check needs a resolved curvature-maximum order");
    check.bound = info.location == MaxLocation::constant ? 0.0 : 2.0 / (2.0 + info.m);
    for (double alpha : alpha_grid)
        check.eigenvalues.push_back(
            lambda_prime_eigs(geom, arc, alpha, n, n_grid).eigenvalues[static_cast<std::size_t>(n - 1)]);
    try {
        check.fit = fit_exponent(alpha_grid, check.eigenvalues);
    } catch (const FitFailure&) {
        // Constant curvature with a non-positive spectrum: the bound is trivial.
        if (info.location != MaxLocation::constant) throw;
        check.fit = {};
    }
    check.holds = check.fit.slope <= check.bound + 0.05;
    return check;
}

}  // namespace robin
