#include "robin/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "robin/errors.hpp"
#include "robin/quadrature.hpp"

namespace robin {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Derivatives of order 0..4 of Σ (a_j cos jθ + b_j sin jθ).
std::array<double, 5> series_derivatives(const std::vector<FourierMode>& modes, double theta) {
    std::array<double, 5> d{};
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double jd = static_cast<double>(j);
        const double c = std::cos(jd * theta);
        const double s = std::sin(jd * theta);
        const double a = modes[j].cos_coeff;
        const double b = modes[j].sin_coeff;
        // d/dθ cycles (cos, sin) -> (-sin, cos) -> (-cos, -sin) -> (sin, -cos).
        const double v0 = a * c + b * s;
        const double v1 = -a * s + b * c;
        double jp = 1.0;
        for (int order = 0; order < 5; ++order) {
            const double sign = (order % 4 < 2) ? 1.0 : -1.0;
            const double base = (order % 2 == 0) ? v0 : v1;
            d[static_cast<std::size_t>(order)] += sign * jp * base;
            jp *= jd;
        }
    }
    return d;
}

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
    auto cross = [](const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); };
    const Vec2 r = p2 - p1;
    const Vec2 s = q2 - q1;
    const double denom = cross(r, s);
    if (denom == 0.0) return false;
    const double t = cross(q1 - p1, s) / denom;
    const double u = cross(q1 - p1, r) / denom;
    return t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0;
}

double parse_number(std::string_view text) {
    std::string copy(text);
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(copy, &pos);
    } catch (const std::exception&) {
        throw PreconditionError("cannot parse number '" + copy + "'");
    }
    if (pos != copy.size()) throw PreconditionError("cannot parse number '" + copy + "'");
    return value;
}

}  // namespace

BoundaryCurve BoundaryCurve::from_fourier(std::vector<FourierMode> fourier_x,
                                          std::vector<FourierMode> fourier_y,
                                          double phase_origin) {
    const std::size_t n = std::max(fourier_x.size(), fourier_y.size());
    fourier_x.resize(n);
    fourier_y.resize(n);
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (double v : {fourier_x[j].cos_coeff, fourier_x[j].sin_coeff, fourier_y[j].cos_coeff,
                         fourier_y[j].sin_coeff}) {
            if (!std::isfinite(v)) throw PreconditionError("non-finite Fourier coefficient");
            if (j > 0) scale = std::max(scale, std::abs(v));
        }
    }
    if (!std::isfinite(phase_origin)) throw PreconditionError("non-finite phase origin");
    if (scale == 0.0) throw DegenerateCurve("all non-constant Fourier modes vanish");

    BoundaryCurve curve;
    curve.fourier_x_ = std::move(fourier_x);
    curve.fourier_y_ = std::move(fourier_y);
    curve.phase_origin_ = phase_origin;

    // Regularity and orientation on a dense probe grid.
    const int probes = static_cast<int>(std::max<std::size_t>(512, 32 * n));
    const double eps_reg = 1e-10 * scale;
    double area2 = 0.0;
    std::vector<Vec2> polygon;
    polygon.reserve(static_cast<std::size_t>(probes));
    for (int i = 0; i < probes; ++i) {
        const double theta = kTwoPi * i / probes;
        const auto d = curve.derivatives(theta);
        if (d[1].norm() < eps_reg)
            throw DegenerateCurve("|dγ/dθ| vanishes near θ = " + std::to_string(theta));
        area2 += d[0].x() * d[1].y() - d[0].y() * d[1].x();
        polygon.push_back(d[0]);
    }
    if (area2 < 0.0) curve.orientation_ = -1;

    for (int i = 0; i < probes; ++i) {
        const Vec2& p1 = polygon[static_cast<std::size_t>(i)];
        const Vec2& p2 = polygon[static_cast<std::size_t>((i + 1) % probes)];
        for (int j = i + 2; j < probes; ++j) {
            if (i == 0 && j == probes - 1) continue;
            const Vec2& q1 = polygon[static_cast<std::size_t>(j)];
            const Vec2& q2 = polygon[static_cast<std::size_t>((j + 1) % probes)];
            if (segments_intersect(p1, p2, q1, q2))
                throw DegenerateCurve("curve is not simple on the probe grid");
        }
    }
    return curve;
}

BoundaryCurve BoundaryCurve::circle(double radius, double phase_origin) {
    if (!(radius > 0.0)) throw PreconditionError("circle radius must be positive");
    return from_fourier({{0.0, 0.0}, {radius, 0.0}}, {{0.0, 0.0}, {0.0, radius}}, phase_origin);
}

BoundaryCurve BoundaryCurve::ellipse(double a, double b, double phase_origin) {
    if (!(a > 0.0) || !(b > 0.0)) throw PreconditionError("ellipse semi-axes must be positive");
    return from_fourier({{0.0, 0.0}, {a, 0.0}}, {{0.0, 0.0}, {0.0, b}}, phase_origin);
}

BoundaryCurve BoundaryCurve::from_shape(std::string_view descriptor, double phase_origin) {
    const auto colon = descriptor.find(':');
    if (colon == std::string_view::npos)
        throw PreconditionError("shape descriptor needs the form name:params");
    const std::string_view name = descriptor.substr(0, colon);
    const std::string_view params = descriptor.substr(colon + 1);
    if (name == "circle") return circle(parse_number(params), phase_origin);
    if (name == "ellipse") {
        const auto comma = params.find(',');
        if (comma == std::string_view::npos)
            throw PreconditionError("ellipse descriptor needs ellipse:a,b");
        return ellipse(parse_number(params.substr(0, comma)),
                       parse_number(params.substr(comma + 1)), phase_origin);
    }
    throw PreconditionError("unknown shape '" + std::string(name) + "'");
}

std::array<Vec2, 5> BoundaryCurve::derivatives(double theta) const {
    const double angle = phase_origin_ + orientation_ * theta;
    const auto dx = series_derivatives(fourier_x_, angle);
    const auto dy = series_derivatives(fourier_y_, angle);
    std::array<Vec2, 5> d;
    double sign = 1.0;
    for (std::size_t i = 0; i < 5; ++i) {
        d[i] = sign * Vec2(dx[i], dy[i]);
        sign *= orientation_;
    }
    return d;
}

Vec2 BoundaryCurve::position(double theta) const {
    const double angle = phase_origin_ + orientation_ * theta;
    return {series_derivatives(fourier_x_, angle)[0], series_derivatives(fourier_y_, angle)[0]};
}

namespace {

const QuadratureRule& arclength_rule() {
    static const QuadratureRule rule = gauss_legendre(12);
    return rule;
}

}  // namespace

ArclengthCurve::ArclengthCurve(BoundaryCurve curve, int panels) : curve_(std::move(curve)) {
    if (panels <= 0) panels = static_cast<int>(std::max<std::size_t>(512, 32 * curve_.n_modes()));
    panel_theta_.resize(static_cast<std::size_t>(panels) + 1);
    panel_s_.resize(static_cast<std::size_t>(panels) + 1);
    panel_s_[0] = 0.0;
    for (int p = 0; p <= panels; ++p) panel_theta_[static_cast<std::size_t>(p)] = kTwoPi * p / panels;
    for (std::size_t p = 0; p + 1 < panel_theta_.size(); ++p)
        panel_s_[p + 1] = panel_s_[p] + arclength_between(panel_theta_[p], panel_theta_[p + 1]);
    length_ = panel_s_.back();
}

double ArclengthCurve::arclength_between(double theta0, double theta1) const {
    const auto& rule = arclength_rule();
    const double half = 0.5 * (theta1 - theta0);
    const double mid = 0.5 * (theta1 + theta0);
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        sum += rule.weights[q] * curve_.derivatives(mid + half * rule.nodes[q])[1].norm();
    return half * sum;
}

double ArclengthCurve::theta_at(double s) const {
    s = std::fmod(s, length_);
    if (s < 0.0) s += length_;
    const auto it = std::upper_bound(panel_s_.begin(), panel_s_.end(), s);
    auto p = static_cast<std::size_t>(std::distance(panel_s_.begin(), it));
    p = std::clamp<std::size_t>(p, 1, panel_s_.size() - 1) - 1;
    const double s0 = panel_s_[p];
    const double s1 = panel_s_[p + 1];
    const double t0 = panel_theta_[p];
    const double t1 = panel_theta_[p + 1];
    double theta = t0 + (s - s0) / (s1 - s0) * (t1 - t0);
    const double tol = 1e-15 * std::max(1.0, length_);
    for (int iter = 0; iter < 50; ++iter) {
        const double residual = s0 + arclength_between(t0, theta) - s;
        const double speed = curve_.derivatives(theta)[1].norm();
        const double step = residual / speed;
        theta -= step;
        if (std::abs(residual) <= tol || std::abs(step) <= 1e-16 * kTwoPi) return theta;
    }
    throw ConvergenceFailure("arclength inversion did not converge at s = " + std::to_string(s));
}

CurvePoint ArclengthCurve::at(double s) const {
    const double theta = theta_at(s);
    const auto d = curve_.derivatives(theta);
    const Vec2& p1 = d[1];
    const Vec2& p2 = d[2];
    const Vec2& p3 = d[3];
    const Vec2& p4 = d[4];

    // k = N D^{-3/2} with N = x'y'' - y'x'', D = |γ'|²; derivatives by the chain rule.
    const double n0 = p1.x() * p2.y() - p1.y() * p2.x();
    const double n1 = p1.x() * p3.y() - p1.y() * p3.x();
    const double n2 = p2.x() * p3.y() + p1.x() * p4.y() - p2.y() * p3.x() - p1.y() * p4.x();
    const double d0 = p1.squaredNorm();
    const double d1 = 2.0 * p1.dot(p2);
    const double d2 = 2.0 * (p2.squaredNorm() + p1.dot(p3));
    const double speed = std::sqrt(d0);
    const double dm32 = 1.0 / (d0 * speed);
    const double dm52 = dm32 / d0;
    const double dm72 = dm52 / d0;

    const double k = n0 * dm32;
    const double k_theta = n1 * dm32 - 1.5 * n0 * d1 * dm52;
    const double k_thetatheta = n2 * dm32 - 3.0 * n1 * d1 * dm52 + 3.75 * n0 * d1 * d1 * dm72 -
                                1.5 * n0 * d2 * dm52;
    const double speed_theta = d1 / (2.0 * speed);

    CurvePoint point;
    point.s = s;
    point.gamma = d[0];
    point.tangent = p1 / speed;
    point.nu = Vec2(point.tangent.y(), -point.tangent.x());
    point.k = k;
    point.k1 = k_theta / speed;
    point.k2 = (k_thetatheta * speed - k_theta * speed_theta) / (d0 * speed);
    return point;
}

SampledGeometry arclength_resample(const BoundaryCurve& curve, int n_s) {
    if (n_s < 64) throw PreconditionError("arclength_resample needs n_s >= 64");
    auto arclength = std::make_shared<const ArclengthCurve>(curve);
    SampledGeometry geom;
    geom.curve = arclength;
    geom.L = arclength->length();
    geom.h_s = geom.L / n_s;
    const auto n = static_cast<std::size_t>(n_s);
    geom.s_grid.resize(n);
    geom.gamma.resize(n);
    geom.nu.resize(n);
    geom.k.resize(n);
    geom.k1.resize(n);
    geom.k2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = geom.h_s * static_cast<double>(i);
        const CurvePoint p = arclength->at(s);
        geom.s_grid[i] = s;
        geom.gamma[i] = p.gamma;
        geom.nu[i] = p.nu;
        geom.k[i] = p.k;
        geom.k1[i] = p.k1;
        geom.k2[i] = p.k2;
    }
    return geom;
}

RobinArc make_arc(const SampledGeometry& geom, double ell) {
    if (!(ell > 0.0) || !(ell < geom.L))
        throw PreconditionError("arc length ell must lie in (0, L) with L = " +
                                std::to_string(geom.L));
    return RobinArc{ell};
}

std::string_view to_string(MaxLocation location) {
    switch (location) {
        case MaxLocation::interior: return "interior";
        case MaxLocation::endpoint_0: return "endpoint_0";
        case MaxLocation::endpoint_ell: return "endpoint_ell";
        case MaxLocation::constant: return "constant";
    }
    return "unknown";
}

namespace {

struct Candidate {
    double s;
    double k;
    MaxLocation location;
};

// Newton iteration on k'(s) = 0 inside [lo, hi].
double refine_interior_max(const SampledGeometry& geom, double s0, double lo, double hi) {
    double s = std::clamp(s0, lo, hi);
    for (int iter = 0; iter < 60; ++iter) {
        const CurvePoint p = geom.at(s);
        if (p.k2 >= 0.0) break;
        const double next = std::clamp(s - p.k1 / p.k2, lo, hi);
        if (std::abs(next - s) <= 1e-15 * std::max(1.0, geom.L)) {
            s = next;
            break;
        }
        s = next;
    }
    return s;
}

}  // namespace

CurvatureMaxInfo max_curvature_on_arc(const SampledGeometry& geom, const RobinArc& arc,
                                      const GeometryTolerances& tol) {
    make_arc(geom, arc.ell);
    std::vector<double> s;
    std::vector<double> k;
    for (std::size_t i = 0; i < geom.size() && geom.s_grid[i] < arc.ell; ++i) {
        s.push_back(geom.s_grid[i]);
        k.push_back(geom.k[i]);
    }
    if (s.size() < 32)
        throw PreconditionError("the arc must cover at least 32 geometry samples");
    const CurvePoint end = geom.at(arc.ell);
    if (arc.ell - s.back() > 1e-12 * geom.L) {
        s.push_back(arc.ell);
        k.push_back(end.k);
    } else {
        k.back() = end.k;
        s.back() = arc.ell;
    }
    const std::size_t n = s.size();

    const auto [kmin_it, kmax_it] = std::minmax_element(k.begin(), k.end());
    if (*kmax_it - *kmin_it <= tol.geo) {
        CurvatureMaxInfo info;
        info.k_star = *kmax_it;
        info.s_star = 0.5 * arc.ell;
        info.location = MaxLocation::constant;
        return info;
    }

    std::vector<Candidate> candidates;
    const CurvePoint start = geom.at(0.0);
    if (k[0] >= k[1]) {
        if (start.k1 <= tol.deriv) {
            candidates.push_back({0.0, start.k, MaxLocation::endpoint_0});
        } else {
            const double sr = refine_interior_max(geom, 0.5 * s[1], 0.0, s[1]);
            candidates.push_back({sr, geom.at(sr).k, MaxLocation::interior});
        }
    }
    if (k[n - 1] >= k[n - 2]) {
        if (end.k1 >= -tol.deriv) {
            candidates.push_back({arc.ell, end.k, MaxLocation::endpoint_ell});
        } else {
            const double sr = refine_interior_max(geom, 0.5 * (s[n - 2] + s[n - 1]), s[n - 2], s[n - 1]);
            candidates.push_back({sr, geom.at(sr).k, MaxLocation::interior});
        }
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(k[i] >= k[i - 1] && k[i] >= k[i + 1])) continue;
        if (k[i] == k[i - 1] && i > 1) continue;  // plateau already seen
        // Vertex of the parabola through the three samples, then Newton polish.
        const double h0 = s[i] - s[i - 1];
        const double h1 = s[i + 1] - s[i];
        const double d0 = (k[i] - k[i - 1]) / h0;
        const double d1 = (k[i + 1] - k[i]) / h1;
        const double curv = (d1 - d0) / (0.5 * (h0 + h1));
        double guess = s[i];
        if (curv < 0.0) guess = s[i] - 0.5 * (d0 + d1) / curv;
        const double sr = refine_interior_max(geom, guess, s[i - 1], s[i + 1]);
        candidates.push_back({sr, geom.at(sr).k, MaxLocation::interior});
    }
    if (candidates.empty()) throw ConvergenceFailure("no curvature maximum located on the arc");

    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.k > b.k; });
    const Candidate best = candidates.front();
    for (std::size_t c = 1; c < candidates.size(); ++c) {
        if (std::abs(candidates[c].s - best.s) <= 2.0 * geom.h_s) continue;
        if (best.k - candidates[c].k <= tol.geo)
            throw AmbiguousMaximum("curvature maxima at s = " + std::to_string(best.s) +
                                   " and s = " + std::to_string(candidates[c].s) +
                                   " agree within tolerance");
        break;
    }

    CurvatureMaxInfo info;
    info.k_star = best.k;
    info.s_star = best.s;
    info.location = best.location;
    const CurvePoint p = geom.at(best.s);
    if (best.location != MaxLocation::interior && std::abs(p.k1) > tol.deriv) {
        info.m = 1;
        info.dm = p.k1;
    } else if (std::abs(p.k2) > tol.deriv) {
        info.m = 2;
        info.dm = p.k2;
    }
    return info;
}

double turning_number(const SampledGeometry& geom) {
    double sum = 0.0;
    for (double v : geom.k) sum += v;
    return sum * geom.h_s / kTwoPi;
}

double max_abs_curvature(const SampledGeometry& geom) {
    double m = 0.0;
    for (double v : geom.k) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace robin
