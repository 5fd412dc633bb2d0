#pragma once

#include <span>
#include <vector>

#include "robin/fit.hpp"
#include "robin/geometry.hpp"
#include "robin/spectra1d.hpp"

namespace robin {

/// Potential of the effective operators on Γ: αU + V with U = k_* - k and
/// V = (k_*² - 2kk_* - k²)/4.
struct EffectivePotential {
    double alpha = 0.0;
    double k_star = 0.0;
    double on_arc(double k) const {
        return alpha * (k_star - k) + (k_star * k_star - 2.0 * k * k_star - k * k) / 4.0;
    }
};

/// a = sup over the samples of Γ of |k_*² - 2kk_* - k²|/4, so that V ≥ -a.
double effective_floor_a(const SampledGeometry& geom, const RobinArc& arc, double k_star);

/// Nodes of the Λ' mesh on [0, ℓ]: spacing ℓ/n_grid, refined to (semiclassical length)/(n_grid/2)
/// over a few semiclassical lengths α^{-1/(m+2)} around s_*.
std::vector<double> lambda_prime_nodes(const RobinArc& arc, const CurvatureMaxInfo& info,
                                       double alpha, int n_grid);

/// Λ'_α: -f'' + (αU + V)f on (0, ℓ), Dirichlet at both ends. n_grid ≥ 256.
Spectrum lambda_prime_eigs(const SampledGeometry& geom, const RobinArc& arc, double alpha, int n,
                           int n_grid = 1024);

/// Λ_{α,ρ}: periodic operator on [0, L) with αU + V on (0, ℓ) and α^{2-ρ} outside.
/// Its mesh contains every Λ' node, so the discrete ordering E_n(Λ_ρ) ≤ E_n(Λ') is exact.
Spectrum lambda_rho_eigs(const SampledGeometry& geom, const RobinArc& arc, double alpha,
                         double rho, int n, int n_grid = 1024);

struct AprioriCheck {
    ExponentFit fit;
    int m = 0;
    double bound = 0.0;  ///< 2/(2+m), or 0 for constant curvature
    bool holds = false;  ///< slope ≤ bound + 0.05
    std::vector<double> eigenvalues;
};

/// Log-log slope of E_n(Λ'_α) over the α grid.
AprioriCheck apriori_bound_check(const SampledGeometry& geom, const RobinArc& arc,
                                 std::span<const double> alpha_grid, int n, int n_grid = 1024);

}  // namespace robin
