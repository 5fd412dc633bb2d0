#include "robin/fit.hpp"

#include <cmath>
#include <string>

#include "robin/errors.hpp"

namespace robin {

ExponentFit fit_exponent(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw PreconditionError("fit_exponent: xs and ys differ in length");
    if (xs.size() < 3) throw PreconditionError("fit_exponent needs at least 3 points");
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) throw PreconditionError("fit_exponent needs positive abscissae");
        if (!(ys[i] > 0.0))
            throw FitFailure("non-positive value " + std::to_string(ys[i]) + " at x = " +
                             std::to_string(xs[i]));
        mx += std::log(xs[i]);
        my += std::log(ys[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = std::log(xs[i]) - mx;
        const double dy = std::log(ys[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw PreconditionError("fit_exponent needs distinct abscissae");
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace robin
