#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "robin/geometry.hpp"
#include "robin/spectra1d.hpp"

namespace robin {

/// Largest admissible strip depth: min(0.5/‖k‖∞, 0.45·half the bottleneck distance).
double tube_radius(const SampledGeometry& geom);

/// Φ(s, t) = γ(s) - tν(s). OutOfTube unless 0 ≤ t < R_tube.
Vec2 tubular_map(const SampledGeometry& geom, double s, double t);

/// V(s, t) = tk''/(2J³) + 5t²k'²/(4J⁴) + k²/(4J²), J = 1 - tk.
double potential_V(const CurvePoint& point, double t);
double potential_V(const SampledGeometry& geom, double s, double t);

/// Smallest A with |V - k²/4| ≤ At and |J⁻² - 1| ≤ At over a probe grid of [0, L) × (0, R],
/// times 1.1.
double bound_constant_A(const SampledGeometry& geom, double R_probe);
/// Same on raw samples of k, k', k''.
double bound_constant_A(std::span<const double> k, std::span<const double> k1,
                        std::span<const double> k2, double R_probe);

enum class StripVariant { P, P_plus, P_minus };

std::string_view to_string(StripVariant variant);
StripVariant parse_strip_variant(std::string_view text);

struct StripOptions {
    int n_s = 0;   ///< minimum number of s nodes; the graded mesh is bisected until reached
    int n_t = 32;  ///< minimum number of t nodes
    int degree_s = 3;
    int degree_t = 5;
    /// Extra uniform bisections of both meshes (self-refinement studies).
    int refine = 0;
};

/// Element breaks of the strip mesh. Depends only on geometry, arc, α, σ and the options,
/// so all three variants share it.
struct StripMesh {
    std::vector<double> s_breaks;  ///< [0, L], contains ℓ
    std::vector<double> t_breaks;  ///< [0, r]
    int degree_s = 3;
    int degree_t = 5;
    double r = 0.0;
    double sigma = 0.0;

    std::size_t s_nodes() const { return (s_breaks.size() - 1) * static_cast<std::size_t>(degree_s); }
    std::size_t t_nodes() const { return (t_breaks.size() - 1) * static_cast<std::size_t>(degree_t) + 1; }
};

StripMesh make_strip_mesh(const SampledGeometry& geom, const RobinArc& arc, double alpha,
                          double sigma, const StripOptions& options = {});

struct StripResult {
    Spectrum spectrum;
    StripMesh mesh;
    double A = 0.0;  ///< constant used by the bracketing variants
};

/// Lowest n eigenvalues of the strip form (or a bracketing variant) on Π_r, r = α^{-σ}.
StripResult strip_eigs(const SampledGeometry& geom, const RobinArc& arc, double alpha,
                       double sigma, StripVariant variant, int n, const StripOptions& options = {});

}  // namespace robin
