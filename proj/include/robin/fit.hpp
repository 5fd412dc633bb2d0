#pragma once

#include <span>

namespace robin {

/// y ≈ e^intercept · x^slope by least squares on (log x, log y).
struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Needs at least 3 points, positive xs; FitFailure on a non-positive y.
ExponentFit fit_exponent(std::span<const double> xs, std::span<const double> ys);

}  // namespace robin
