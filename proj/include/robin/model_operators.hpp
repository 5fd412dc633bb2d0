#pragma once

#include <vector>

#include <Eigen/Core>

namespace robin {

/// Ground state of the slab operator -f'' on (0, r), -f'(0) = αf(0), f(r) = 0.
struct SlabGroundState {
    double alpha = 0.0;
    double r = 0.0;
    double kappa = 0.0;  ///< κ = α tanh(κr)
    double E1 = 0.0;     ///< -κ²
    double psi0_sq = 0.0;  ///< |ψ(0)|² of the L²-normalized ground state
};

/// Requires αr > 1.
SlabGroundState slab_ground(double alpha, double r);

/// The n lowest positive slab eigenvalues k², k = α tan(kr).
std::vector<double> slab_positive_eigs(double alpha, double r, int n);

/// Spectrum of -f'' + β|t|^m f on the half-line (Dirichlet at 0) or on the whole line.
struct PowerWellSpectrum {
    int m = 0;
    double beta = 0.0;
    bool halfline = true;
    std::vector<double> eigenvalues;
    double T_box = 0.0;
    Eigen::Index dof = 0;
};

PowerWellSpectrum power_well_spectrum(int m, double beta, bool halfline, int n);

/// a_1 < … < a_n with Ai(-a_j) = 0.
std::vector<double> airy_zeros(int n);

}  // namespace robin
