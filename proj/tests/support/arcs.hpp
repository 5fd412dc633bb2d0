#pragma once

// Reference Robin arcs shared by the unit tests and the acceptance binary.

#include <cmath>

#include "robin/geometry.hpp"

namespace robin::testing {

struct ArcCase {
    SampledGeometry geom;
    RobinArc arc;
};

inline ArcCase circle_arc(double radius, double ell, int n_s = 1024) {
    ArcCase c{arclength_resample(BoundaryCurve::circle(radius), n_s), {}};
    c.arc = make_arc(c.geom, ell);
    return c;
}

// Ellipse arc starting where k'' = 0 on the way down from the sharp vertex, so the maximum
// sits at s = 0 with m = 1 and the quadratic correction vanishes. Γ ends at `fraction` of the
// way to the mirror point where k climbs back to k(0).
inline ArcCase endpoint_slope_arc(double a, double b, double fraction = 0.8, int n_s = 2048) {
    const auto base = arclength_resample(BoundaryCurve::ellipse(a, b), n_s);
    double lo = 1e-6, hi = base.L / 4.0;  // k'' < 0 at the vertex, > 0 at the flat end
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (base.at(mid).k2 < 0.0 ? lo : hi) = mid;
    }
    const double s_inflection = 0.5 * (lo + hi);
    const double phase = base.curve->theta_at(s_inflection);
    ArcCase c{arclength_resample(BoundaryCurve::ellipse(a, b, phase), n_s), {}};
    const double mirror = base.L / 2.0 - 2.0 * s_inflection;
    c.arc = make_arc(c.geom, fraction * mirror);
    return c;
}

// Ellipse arc of length ell centred on the sharp vertex θ = 0: interior maximum, m = 2.
inline ArcCase vertex_centred_arc(double a, double b, double ell, int n_s = 2048) {
    const auto base = arclength_resample(BoundaryCurve::ellipse(a, b), n_s);
    const double phase = base.curve->theta_at(base.L - ell / 2.0);
    ArcCase c{arclength_resample(BoundaryCurve::ellipse(a, b, phase), n_s), {}};
    c.arc = make_arc(c.geom, ell);
    return c;
}

}  // namespace robin::testing
