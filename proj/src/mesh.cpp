#include "robin/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "robin/errors.hpp"

namespace robin {

double MeshSpec::size_at(double x) const {
    double h = h_max;
    for (const MeshZone& zone : zones) {
        double d = std::abs(x - zone.center);
        if (period) {
            d = std::fmod(d, *period);
            d = std::min(d, *period - d);
        }
        h = std::min(h, zone.h + growth * std::max(0.0, d - zone.width));
    }
    return h;
}

std::vector<double> graded_nodes(double a, double b, const MeshSpec& spec,
                                 std::span<const double> required) {
    if (!(b > a)) throw PreconditionError("graded_nodes needs a < b");
    if (!(spec.h_max > 0.0) || !(spec.growth > 0.0))
        throw PreconditionError("graded_nodes needs positive h_max and growth");
    for (const MeshZone& zone : spec.zones)
        if (!(zone.h > 0.0)) throw PreconditionError("mesh zone size must be positive");

    std::vector<double> breaks = {a, b};
    for (double x : required)
        if (x > a && x < b) breaks.push_back(x);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    double h_min = spec.h_max;
    for (const MeshZone& zone : spec.zones) h_min = std::min(h_min, zone.h);

    std::vector<double> nodes = {a};
    for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
        const double x0 = breaks[piece];
        const double x1 = breaks[piece + 1];
        // Cumulative ∫dx/h on a sampling grid fine enough to resolve the smallest cell.
        const auto samples = static_cast<std::size_t>(
            std::clamp(std::ceil(8.0 * (x1 - x0) / h_min), 64.0, 4.0e6));
        std::vector<double> xs(samples + 1);
        std::vector<double> cum(samples + 1, 0.0);
        for (std::size_t i = 0; i <= samples; ++i)
            xs[i] = x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(samples);
        xs.back() = x1;
        for (std::size_t i = 0; i < samples; ++i) {
            const double xm = 0.5 * (xs[i] + xs[i + 1]);
            cum[i + 1] = cum[i] + (xs[i + 1] - xs[i]) / spec.size_at(xm);
        }
        const auto cells = static_cast<std::size_t>(std::max(1.0, std::ceil(cum.back() - 1e-9)));
        std::size_t j = 0;
        for (std::size_t c = 1; c < cells; ++c) {
            const double target = cum.back() * static_cast<double>(c) / static_cast<double>(cells);
            while (cum[j + 1] < target) ++j;
            const double f = (target - cum[j]) / (cum[j + 1] - cum[j]);
            nodes.push_back(xs[j] + f * (xs[j + 1] - xs[j]));
        }
        nodes.push_back(x1);
    }
    return nodes;
}

std::vector<double> geometric_nodes(double depth, double h_first, double ratio, double h_max) {
    if (!(depth > 0.0) || !(h_first > 0.0) || !(ratio >= 1.0) || !(h_max >= h_first))
        throw PreconditionError("geometric_nodes: need depth, h_first > 0, ratio >= 1, h_max >= h_first");
    std::vector<double> nodes = {0.0};
    double h = h_first;
    while (nodes.back() + h < depth) {
        nodes.push_back(nodes.back() + h);
        h = std::min(h * ratio, h_max);
    }
    // Merge a sliver last cell into its neighbour.
    if (nodes.size() > 1 && depth - nodes.back() < 0.5 * (nodes.back() - nodes[nodes.size() - 2]))
        nodes.pop_back();
    nodes.push_back(depth);
    return nodes;
}

}  // namespace robin
