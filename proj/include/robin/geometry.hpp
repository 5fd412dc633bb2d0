#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace robin {

using Vec2 = Eigen::Vector2d;

/// One term a·cos(jθ) + b·sin(jθ) of a coordinate series; j is the index in the list.
struct FourierMode {
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

/// Smooth closed planar curve given by truncated Fourier series of x(θ) and y(θ).
///
/// The curve is traversed counter-clockwise starting from the angle `phase_origin`;
/// a clockwise input is reversed on construction so that the outward normal satisfies
/// det(ν, γ') = 1.
class BoundaryCurve {
public:
    static BoundaryCurve from_fourier(std::vector<FourierMode> fourier_x,
                                      std::vector<FourierMode> fourier_y,
                                      double phase_origin = 0.0);
    static BoundaryCurve circle(double radius, double phase_origin = 0.0);
    static BoundaryCurve ellipse(double a, double b, double phase_origin = 0.0);
    /// "circle:R" or "ellipse:a,b".
    static BoundaryCurve from_shape(std::string_view descriptor, double phase_origin = 0.0);

    /// Position and its first four derivatives with respect to the curve parameter.
    std::array<Vec2, 5> derivatives(double theta) const;
    Vec2 position(double theta) const;

    const std::vector<FourierMode>& fourier_x() const { return fourier_x_; }
    const std::vector<FourierMode>& fourier_y() const { return fourier_y_; }
    double phase_origin() const { return phase_origin_; }
    int orientation() const { return orientation_; }
    std::size_t n_modes() const { return fourier_x_.size(); }

private:
    BoundaryCurve() = default;

    std::vector<FourierMode> fourier_x_;
    std::vector<FourierMode> fourier_y_;
    double phase_origin_ = 0.0;
    int orientation_ = 1;
};

/// Frame and curvature data at one arclength position.
struct CurvePoint {
    double s = 0.0;
    Vec2 gamma = Vec2::Zero();
    Vec2 tangent = Vec2::Zero();
    Vec2 nu = Vec2::Zero();  ///< outward unit normal
    double k = 0.0;          ///< signed curvature, γ'' = -k ν
    double k1 = 0.0;         ///< dk/ds
    double k2 = 0.0;         ///< d²k/ds²
};

/// Arclength view of a BoundaryCurve. Evaluation at arbitrary s solves θ(s) by Newton
/// iteration on the exactly integrated arclength.
class ArclengthCurve {
public:
    explicit ArclengthCurve(BoundaryCurve curve, int panels = 0);

    double length() const { return length_; }
    const BoundaryCurve& curve() const { return curve_; }

    /// Parameter value θ with arclength s (s is reduced modulo the length).
    double theta_at(double s) const;
    CurvePoint at(double s) const;

private:
    double arclength_between(double theta0, double theta1) const;

    BoundaryCurve curve_;
    std::vector<double> panel_theta_;
    std::vector<double> panel_s_;
    double length_ = 0.0;
};

/// Arclength-uniform samples of the boundary.
struct SampledGeometry {
    std::vector<double> s_grid;
    std::vector<Vec2> gamma;
    std::vector<Vec2> nu;
    std::vector<double> k;
    std::vector<double> k1;
    std::vector<double> k2;
    double L = 0.0;
    double h_s = 0.0;
    std::shared_ptr<const ArclengthCurve> curve;

    std::size_t size() const { return s_grid.size(); }
    CurvePoint at(double s) const { return curve->at(s); }
};

SampledGeometry arclength_resample(const BoundaryCurve& curve, int n_s);

/// The Robin part Γ = γ((0, ell)) of the boundary.
struct RobinArc {
    double ell = 0.0;
};

RobinArc make_arc(const SampledGeometry& geom, double ell);

enum class MaxLocation { interior, endpoint_0, endpoint_ell, constant };

std::string_view to_string(MaxLocation location);

struct CurvatureMaxInfo {
    double k_star = 0.0;
    double s_star = 0.0;
    MaxLocation location = MaxLocation::constant;
    /// Order of the first non-vanishing derivative at s_star; 0 when it could not be
    /// resolved (a flat maximum of order > 2) or for constant curvature.
    int m = 0;
    double dm = 0.0;
};

struct GeometryTolerances {
    double geo = 1e-8;
    double deriv = 1e-6;
};

CurvatureMaxInfo max_curvature_on_arc(const SampledGeometry& geom, const RobinArc& arc,
                                      const GeometryTolerances& tol = {});

/// (1/2π) ∮ k ds, by the trapezoidal rule on the sample grid.
double turning_number(const SampledGeometry& geom);

double max_abs_curvature(const SampledGeometry& geom);

}  // namespace robin
