#include "robin/model_operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "robin/airy.hpp"
#include "robin/errors.hpp"
#include "robin/lagrange.hpp"
#include "robin/spectra1d.hpp"

namespace robin {
namespace {

constexpr double kPi = std::numbers::pi;

// Root of f on [lo, hi] given a sign change; toms748 then a Newton polish.
template <class F>
double bracketed_root(F f, double lo, double hi, const char* what) {
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw ConvergenceFailure(std::string(what) + ": root is not bracketed");
    boost::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iterations);
    if (iterations >= 200) throw ConvergenceFailure(std::string(what) + ": root search stalled");
    return 0.5 * (a + b);
}

// Degree and element size for the power wells; the eigenfunctions are entire, so
// high-order elements converge geometrically.
constexpr int kWellDegree = 8;

std::vector<double> well_eigenvalues(int m, double beta, bool halfline, int n, double T,
                                     int elements, Eigen::Index& dof) {
    const double a = halfline ? 0.0 : -T;
    const std::vector<double> breaks = uniform_nodes(a, T, elements);
    const SymmetricPencil pencil = assemble_form_1d_lagrange(
        breaks, kWellDegree, [](double) { return 1.0; },
        [=](double t) { return beta * std::pow(std::abs(t), m); }, BoundaryCondition::dirichlet());
    dof = pencil.dof();
    return lowest_eigs(pencil, n, -1.0).eigenvalues;
}

}  // namespace

SlabGroundState slab_ground(double alpha, double r) {
    if (!(alpha > 0.0) || !(r > 0.0)) throw PreconditionError("slab_ground needs α, r > 0");
    if (!(alpha * r > 1.0))
        throw OutOfRegime("slab_ground needs αr > 1 (got " + std::to_string(alpha * r) + ")");
    const auto g = [=](double kappa) { return kappa - alpha * std::tanh(kappa * r); };
    double lo = 0.5 * alpha * std::tanh(alpha * r);
    // Near αr = 1 the root drops below the nominal bracket; g < 0 for small κ.
    while (g(lo) >= 0.0 && lo > 1e-300) lo *= 0.5;
    double kappa = bracketed_root(g, lo, alpha, "slab_ground");
    for (int it = 0; it < 3; ++it) {
        const double th = std::tanh(kappa * r);
        const double dg = 1.0 - alpha * r * (1.0 - th * th);
        if (dg == 0.0) break;
        const double step = g(kappa) / dg;
        if (!(std::abs(step) < 1e-8 * kappa)) break;
        kappa -= step;
    }
    SlabGroundState state;
    state.alpha = alpha;
    state.r = r;
    state.kappa = kappa;
    state.E1 = -kappa * kappa;
    // sinh²(κr) / (sinh(2κr)/(4κ) - r/2), rewritten with q = e^{-2κr} so that large κr is safe.
    const double x = kappa * r;
    const double one_minus_q = -std::expm1(-2.0 * x);
    const double one_minus_q2 = -std::expm1(-4.0 * x);
    state.psi0_sq = 2.0 * kappa * one_minus_q * one_minus_q /
                    (one_minus_q2 - 4.0 * x * std::exp(-2.0 * x));
    return state;
}

std::vector<double> slab_positive_eigs(double alpha, double r, int n) {
    if (!(alpha >= 0.0) || !(r > 0.0) || n < 1)
        throw PreconditionError("slab_positive_eigs needs α >= 0, r > 0, n >= 1");
    // Eigenfunctions sin(k(r - t)); the Robin condition reads k cos(kr) = α sin(kr).
    const auto h = [=](double k) { return k * std::cos(k * r) - alpha * std::sin(k * r); };
    std::vector<double> out;
    // Branch j: kr ∈ (jπ, jπ + π/2). Branch 0 only carries a positive root when αr < 1.
    for (int j = alpha * r < 1.0 ? 0 : 1; static_cast<int>(out.size()) < n; ++j) {
        const double lo = j == 0 ? 1e-9 / r : j * kPi / r;
        const double hi = (j * kPi + kPi / 2.0) / r;
        const double k = bracketed_root(h, lo, hi, "slab_positive_eigs");
        out.push_back(k * k);
    }
    return out;
}

PowerWellSpectrum power_well_spectrum(int m, double beta, bool halfline, int n) {
    if (n < 1 || m < 1 || !(beta > 0.0))
        throw PreconditionError("power_well_spectrum needs n >= 1, m >= 1, β > 0");
    if (!halfline && m % 2 != 0) throw PreconditionError("whole-line wells need even m");

    // WKB estimate of E_n by scaling: E_n ≈ β^{2/(m+2)}·(c·n)^{2m/(m+2)}, generous on purpose.
    const double scale = std::pow(beta, 2.0 / (m + 2.0));
    const double e_estimate = scale * std::pow(2.5 * n + 1.0, 2.0 * m / (m + 2.0));
    double T = std::pow(10.0 * e_estimate / beta, 1.0 / m);
    // Element size resolving the shortest local wavelength 2π/√(10E) with degree-8 elements.
    double h = std::min(1.0, 2.0 / std::sqrt(10.0 * e_estimate));

    PowerWellSpectrum result;
    result.m = m;
    result.beta = beta;
    result.halfline = halfline;
    auto elements_for = [&](double T_box, double size) {
        return std::max(8, static_cast<int>(std::ceil((halfline ? T_box : 2.0 * T_box) / size)));
    };
    Eigen::Index dof = 0;
    std::vector<double> previous = well_eigenvalues(m, beta, halfline, n, T, elements_for(T, h), dof);
    for (int level = 0; level < 6; ++level) {
        const double T_next = 1.25 * T;
        const double h_next = 0.7 * h;
        Eigen::Index dof_next = 0;
        const std::vector<double> current =
            well_eigenvalues(m, beta, halfline, n, T_next, elements_for(T_next, h_next), dof_next);
        double change = 0.0;
        for (int i = 0; i < n; ++i)
            change = std::max(change, std::abs(current[static_cast<std::size_t>(i)] -
                                               previous[static_cast<std::size_t>(i)]) /
                                          std::abs(current[static_cast<std::size_t>(i)]));
        T = T_next;
        h = h_next;
        if (change <= 1e-8) {
            result.eigenvalues = current;
            result.T_box = T;
            result.dof = dof_next;
            return result;
        }
        previous = current;
    }
    throw NoConvergence("power_well_spectrum did not stabilize to 1e-8 (m = " + std::to_string(m) +
                        ", β = " + std::to_string(beta) + ")");
}

std::vector<double> airy_zeros(int n) {
    if (n < 1) throw PreconditionError("airy_zeros needs n >= 1");
    std::vector<double> zeros;
    for (int j = 1; j <= n; ++j) {
        // a_j ≈ T(3π(4j - 1)/8), T(t) = t^{2/3}(1 + 5/48 t^{-2} - 5/36 t^{-4}).
        const double t = 3.0 * kPi * (4.0 * j - 1.0) / 8.0;
        const double t2 = 1.0 / (t * t);
        double a = std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / 48.0 * t2 - 5.0 / 36.0 * t2 * t2);
        for (int it = 0; it < 50; ++it) {
            const AiryValue v = airy_ai(-a);
            // d/da Ai(-a) = -Ai'(-a)
            const double step = v.ai / (-v.ai_prime);
            a -= step;
            if (std::abs(step) < 1e-15 * a) break;
        }
        // The seed error is far below the zero spacing, so a sign change must straddle a.
        const double delta = 1e-6;
        if ((airy_ai(-a + delta).ai > 0.0) == (airy_ai(-a - delta).ai > 0.0))
            throw ConvergenceFailure("airy zero " + std::to_string(j) + " failed the bracket check");
        zeros.push_back(a);
    }
    return zeros;
}

}  // namespace robin
