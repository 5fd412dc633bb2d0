#pragma once

#include <optional>
#include <span>
#include <vector>

namespace robin {

/// Local refinement request: cell size h within `width` of `center`.
struct MeshZone {
    double center = 0.0;
    double h = 0.0;
    double width = 0.0;
};

/// Cell-size field h(x) = min(h_max, min_i h_i + growth·max(0, dist(x, c_i) - w_i)).
struct MeshSpec {
    double h_max = 0.1;
    double growth = 0.25;
    std::vector<MeshZone> zones;
    /// Distances are measured on the circle of this length when set.
    std::optional<double> period;

    double size_at(double x) const;
};

/// Strictly increasing nodes from a to b equidistributing ∫dx/h(x). Every `required` point
/// inside (a, b) becomes a node.
std::vector<double> graded_nodes(double a, double b, const MeshSpec& spec,
                                 std::span<const double> required = {});

/// Nodes on [0, depth] with first cell ≤ h_first, growing geometrically by at most `ratio`
/// per cell and capped at h_max.
std::vector<double> geometric_nodes(double depth, double h_first, double ratio, double h_max);

}  // namespace robin
