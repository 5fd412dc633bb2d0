#include "robin/strip2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "robin/errors.hpp"
#include "robin/lagrange.hpp"
#include "robin/mesh.hpp"

namespace robin {
namespace {

// max(|V - k²/4|, |J⁻² - 1|)/t at one point; the t → 0 limit when t = 0.
double bound_ratio(double k, double k1, double k2, double t) {
    if (t == 0.0) return std::max(std::abs(0.5 * k2 + 0.5 * k * k * k), std::abs(2.0 * k));
    const CurvePoint p{0.0, Vec2::Zero(), Vec2::Zero(), Vec2::Zero(), k, k1, k2};
    const double J = 1.0 - t * k;
    return std::max(std::abs(potential_V(p, t) - 0.25 * k * k), std::abs(1.0 / (J * J) - 1.0)) / t;
}

std::vector<double> bisect(const std::vector<double>& breaks) {
    std::vector<double> out = {breaks.front()};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        out.push_back(0.5 * (breaks[i] + breaks[i + 1]));
        out.push_back(breaks[i + 1]);
    }
    return out;
}

}  // namespace

double tube_radius(const SampledGeometry& geom) {
    const double kmax = max_abs_curvature(geom);
    double radius = kmax > 0.0 ? 0.5 / kmax : 0.5 * geom.L;
    // Bottleneck: closest approach of points whose arclength separation exceeds π/‖k‖∞.
    const std::size_t stride = std::max<std::size_t>(1, geom.size() / 512);
    const double separation = kmax > 0.0 ? std::numbers::pi / kmax : 0.25 * geom.L;
    double closest = INFINITY;
    for (std::size_t i = 0; i < geom.size(); i += stride)
        for (std::size_t j = i + stride; j < geom.size(); j += stride) {
            double ds = std::abs(geom.s_grid[j] - geom.s_grid[i]);
            ds = std::min(ds, geom.L - ds);
            if (ds < separation) continue;
            closest = std::min(closest, (geom.gamma[i] - geom.gamma[j]).norm());
        }
    if (std::isfinite(closest)) radius = std::min(radius, 0.45 * 0.5 * closest);
    return radius;
}

Vec2 tubular_map(const SampledGeometry& geom, double s, double t) {
    const double R = tube_radius(geom);
    if (!(t >= 0.0) || !(t < R))
        throw OutOfTube("t = " + std::to_string(t) + " outside [0, " + std::to_string(R) + ")");
    const CurvePoint p = geom.at(s);
    return p.gamma - t * p.nu;
}

double potential_V(const CurvePoint& point, double t) {
    const double J = 1.0 - t * point.k;
    if (!(J > 0.0)) throw OutOfTube("1 - tk(s) must be positive (t = " + std::to_string(t) + ")");
    const double J2 = J * J;
    return t * point.k2 / (2.0 * J2 * J) + 5.0 * t * t * point.k1 * point.k1 / (4.0 * J2 * J2) +
           point.k * point.k / (4.0 * J2);
}

double potential_V(const SampledGeometry& geom, double s, double t) {
    return potential_V(geom.at(s), t);
}

double bound_constant_A(std::span<const double> k, std::span<const double> k1,
                        std::span<const double> k2, double R_probe) {
    if (k.size() != k1.size() || k.size() != k2.size())
        throw PreconditionError("bound_constant_A: sample arrays differ in length");
    if (!(R_probe > 0.0)) throw PreconditionError("bound_constant_A needs R_probe > 0");
    constexpr int kProbes = 256;
    double A = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i)
        for (int j = 0; j <= kProbes; ++j)
            A = std::max(A, bound_ratio(k[i], k1[i], k2[i], R_probe * j / kProbes));
    return 1.1 * A;
}

double bound_constant_A(const SampledGeometry& geom, double R_probe) {
    if (!(R_probe < tube_radius(geom)))
        throw OutOfTube("R_probe must lie below the tube radius");
    return bound_constant_A(geom.k, geom.k1, geom.k2, R_probe);
}

std::string_view to_string(StripVariant variant) {
    switch (variant) {
        case StripVariant::P: return "p";
        case StripVariant::P_plus: return "p+";
        case StripVariant::P_minus: return "p-";
    }
    return "?";
}

StripVariant parse_strip_variant(std::string_view text) {
    if (text == "p" || text == "P") return StripVariant::P;
    if (text == "p+" || text == "P_plus") return StripVariant::P_plus;
    if (text == "p-" || text == "P_minus") return StripVariant::P_minus;
    throw PreconditionError("unknown strip variant '" + std::string(text) + "'");
}

StripMesh make_strip_mesh(const SampledGeometry& geom, const RobinArc& arc, double alpha,
                          double sigma, const StripOptions& options) {
    if (!(alpha > 0.0)) throw PreconditionError("strip needs α > 0");
    if (!(sigma > 0.0 && sigma < 1.0)) throw PreconditionError("strip needs σ ∈ (0, 1)");
    if (options.degree_s < 1 || options.degree_t < 1)
        throw PreconditionError("strip element degrees must be positive");
    StripMesh mesh;
    mesh.degree_s = options.degree_s;
    mesh.degree_t = options.degree_t;
    mesh.sigma = sigma;
    mesh.r = std::pow(alpha, -sigma);
    const double R = tube_radius(geom);
    if (!(mesh.r < R))
        throw OutOfTube("strip depth r = " + std::to_string(mesh.r) + " is not below R_tube = " +
                        std::to_string(R));

    // t: the boundary layer decays like e^{-αt}; first element 1/(2α), growth 1.5.
    mesh.t_breaks = geometric_nodes(mesh.r, std::min(0.5 / alpha, mesh.r / 4.0), 1.5, mesh.r / 3.0);
    auto t_nodes_within = [&](double depth) {
        std::size_t count = 1;
        for (std::size_t e = 0; e + 1 < mesh.t_breaks.size(); ++e)
            if (mesh.t_breaks[e + 1] <= depth) count += static_cast<std::size_t>(mesh.degree_t);
        return count;
    };
    while (mesh.t_nodes() < static_cast<std::size_t>(std::max(options.n_t, 32)) ||
           t_nodes_within(1.0 / alpha) < 8)
        mesh.t_breaks = bisect(mesh.t_breaks);

    // s: junction layers of width ~1/α at 0 and ℓ, the semiclassical zone at s_*, and a
    // coarse background that still resolves sin(πs/ℓ).
    const CurvatureMaxInfo info = max_curvature_on_arc(geom, arc);
    MeshSpec spec;
    spec.h_max = std::min(arc.ell / 12.0, geom.L / 24.0);
    spec.growth = 0.3;
    spec.period = geom.L;
    spec.zones.push_back({0.0, std::min(spec.h_max, 0.25 / alpha), 0.0});
    spec.zones.push_back({arc.ell, std::min(spec.h_max, 0.25 / alpha), 0.0});
    if (info.location != MaxLocation::constant) {
        const int m = info.m > 0 ? info.m : 4;
        const double length = std::pow(alpha, -1.0 / (m + 2.0));
        spec.zones.push_back({info.s_star, std::min(spec.h_max, length / 4.0), 3.0 * length});
    }
    const double required[] = {arc.ell};
    mesh.s_breaks = graded_nodes(0.0, geom.L, spec, required);
    while (mesh.s_nodes() < static_cast<std::size_t>(std::max(options.n_s, 16)))
        mesh.s_breaks = bisect(mesh.s_breaks);
    for (int i = 0; i < options.refine; ++i) {
        mesh.s_breaks = bisect(mesh.s_breaks);
        mesh.t_breaks = bisect(mesh.t_breaks);
    }
    return mesh;
}

StripResult strip_eigs(const SampledGeometry& geom, const RobinArc& arc, double alpha,
                       double sigma, StripVariant variant, int n, const StripOptions& options) {
    StripResult result;
    result.mesh = make_strip_mesh(geom, arc, alpha, sigma, options);
    const StripMesh& mesh = result.mesh;
    const double r = mesh.r;
    const LagrangeBasis bs = lagrange_basis(mesh.degree_s);
    const LagrangeBasis bt = lagrange_basis(mesh.degree_t);
    const std::size_t n_es = mesh.s_breaks.size() - 1;
    const std::size_t n_et = mesh.t_breaks.size() - 1;
    const std::size_t qs = bs.qpoints.size();
    const std::size_t qt = bt.qpoints.size();

    // Curvature data at every s quadrature point.
    std::vector<CurvePoint> points(n_es * qs);
    for (std::size_t e = 0; e < n_es; ++e) {
        const double h = mesh.s_breaks[e + 1] - mesh.s_breaks[e];
        for (std::size_t g = 0; g < qs; ++g)
            points[e * qs + g] = geom.at(mesh.s_breaks[e] + h * bs.qpoints[g]);
    }

    // A must dominate at the assembly points too, so the discrete forms are ordered exactly.
    double A = bound_constant_A(geom, r);
    for (const CurvePoint& p : points)
        for (std::size_t et = 0; et < n_et; ++et)
            for (std::size_t g = 0; g < qt; ++g) {
                const double t = mesh.t_breaks[et] + (mesh.t_breaks[et + 1] - mesh.t_breaks[et]) * bt.qpoints[g];
                A = std::max(A, bound_ratio(p.k, p.k1, p.k2, t));
            }
    result.A = A;
    if (variant == StripVariant::P_minus && !(1.0 - A * r > 0.0))
        throw OutOfRegime("1 - Ar = " + std::to_string(1.0 - A * r) + " is not positive");

    const auto ps = static_cast<std::size_t>(mesh.degree_s);
    const auto pt = static_cast<std::size_t>(mesh.degree_t);
    const std::size_t Ns = mesh.s_nodes();       // periodic
    const std::size_t Nt = mesh.t_nodes() - 1;  // t = r removed
    const auto dof = static_cast<Eigen::Index>(Ns * Nt);
    auto global = [&](std::size_t es, std::size_t i, std::size_t et, std::size_t j) -> Eigen::Index {
        const std::size_t is = (es * ps + i) % Ns;
        const std::size_t it = et * pt + j;
        if (it >= Nt) return -1;
        return static_cast<Eigen::Index>(is * Nt + it);
    };

    const std::size_t nbs = ps + 1, nbt = pt + 1, nloc = nbs * nbt;
    std::vector<Eigen::Triplet<double>> k_entries, m_entries;
    k_entries.reserve(n_es * n_et * nloc * nloc);
    m_entries.reserve(n_es * n_et * nloc * nloc);
    Eigen::MatrixXd lk(nloc, nloc), lm(nloc, nloc);
    double q_min = INFINITY;
    double b_max = 0.0;
    for (std::size_t es = 0; es < n_es; ++es) {
        const double hs = mesh.s_breaks[es + 1] - mesh.s_breaks[es];
        const double s_mid = mesh.s_breaks[es] + 0.5 * hs;
        const bool robin = s_mid < arc.ell;
        for (std::size_t et = 0; et < n_et; ++et) {
            const double t0 = mesh.t_breaks[et];
            const double ht = mesh.t_breaks[et + 1] - t0;
            lk.setZero();
            lm.setZero();
            for (std::size_t gs = 0; gs < qs; ++gs) {
                const CurvePoint& p = points[es * qs + gs];
                for (std::size_t gt = 0; gt < qt; ++gt) {
                    const double t = t0 + ht * bt.qpoints[gt];
                    const double w = hs * ht * bs.qweights[gs] * bt.qweights[gt];
                    double a = 0.0, q = 0.0;
                    switch (variant) {
                        case StripVariant::P: {
                            const double J = 1.0 - t * p.k;
                            a = 1.0 / (J * J);
                            q = -potential_V(p, t);
                            break;
                        }
                        case StripVariant::P_plus:
                            a = 1.0 + A * r;
                            q = A * r - 0.25 * p.k * p.k;
                            break;
                        case StripVariant::P_minus:
                            a = 1.0 - A * r;
                            q = -A * r - 0.25 * p.k * p.k;
                            break;
                    }
                    q_min = std::min(q_min, q);
                    for (std::size_t i = 0; i < nbs; ++i)
                        for (std::size_t j = 0; j < nbt; ++j) {
                            const std::size_t I = i * nbt + j;
                            const double ui = bs.phi(i, gs) * bt.phi(j, gt);
                            const double dsi = bs.dphi(i, gs) / hs * bt.phi(j, gt);
                            const double dti = bs.phi(i, gs) * bt.dphi(j, gt) / ht;
                            for (std::size_t i2 = 0; i2 < nbs; ++i2)
                                for (std::size_t j2 = 0; j2 < nbt; ++j2) {
                                    const std::size_t I2 = i2 * nbt + j2;
                                    if (I2 < I) continue;
                                    const double uj = bs.phi(i2, gs) * bt.phi(j2, gt);
                                    const double dsj = bs.dphi(i2, gs) / hs * bt.phi(j2, gt);
                                    const double dtj = bs.phi(i2, gs) * bt.dphi(j2, gt) / ht;
                                    lk(I, I2) += w * (a * dsi * dsj + dti * dtj + q * ui * uj);
                                    lm(I, I2) += w * ui * uj;
                                }
                        }
                }
            }
            // Boundary term -∫_0^ℓ (α + k/2)|v(s, 0)|² on the t = 0 edge; only j = 0 is nonzero there.
            if (robin && et == 0) {
                for (std::size_t gs = 0; gs < qs; ++gs) {
                    const double b = alpha + 0.5 * points[es * qs + gs].k;
                    b_max = std::max(b_max, b);
                    const double w = hs * bs.qweights[gs];
                    for (std::size_t i = 0; i < nbs; ++i)
                        for (std::size_t i2 = i; i2 < nbs; ++i2)
                            lk(i * nbt, i2 * nbt) -= w * b * bs.phi(i, gs) * bs.phi(i2, gs);
                }
            }
            for (std::size_t I = 0; I < nloc; ++I) {
                const Eigen::Index gi = global(es, I / nbt, et, I % nbt);
                if (gi < 0) continue;
                for (std::size_t I2 = I; I2 < nloc; ++I2) {
                    const Eigen::Index gj = global(es, I2 / nbt, et, I2 % nbt);
                    if (gj < 0) continue;
                    k_entries.emplace_back(gi, gj, lk(I, I2));
                    m_entries.emplace_back(gi, gj, lm(I, I2));
                    if (gi != gj || I != I2) {
                        k_entries.emplace_back(gj, gi, lk(I, I2));
                        m_entries.emplace_back(gj, gi, lm(I, I2));
                    }
                }
            }
        }
    }

    SymmetricPencil pencil;
    pencil.K.resize(dof, dof);
    pencil.M.resize(dof, dof);
    pencil.K.setFromTriplets(k_entries.begin(), k_entries.end());
    pencil.M.setFromTriplets(m_entries.begin(), m_entries.end());
    pencil.K.makeCompressed();
    pencil.M.makeCompressed();
    pencil.bandwidth = compute_bandwidth(pencil.K);

    // Lower bound of the discrete form: the 1D Robin–Dirichlet ground state is above -b²,
    // the potential above q_min, and both carry over to the Galerkin subspace.
    const double shift = -b_max * b_max + std::min(q_min, 0.0) - 1.0;
    result.spectrum = lowest_eigs(pencil, n, shift);
    result.spectrum.h_min = INFINITY;
    result.spectrum.h_max = 0.0;
    for (std::size_t e = 0; e < n_es; ++e) {
        const double h = (mesh.s_breaks[e + 1] - mesh.s_breaks[e]) / mesh.degree_s;
        result.spectrum.h_min = std::min(result.spectrum.h_min, h);
        result.spectrum.h_max = std::max(result.spectrum.h_max, h);
    }
    return result;
}

}  // namespace robin
