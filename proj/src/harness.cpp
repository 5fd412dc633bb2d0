#include "robin/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>
#include <tuple>

#include "robin/effective_operators.hpp"
#include "robin/errors.hpp"
#include "robin/model_operators.hpp"
#include "robin/strip2d.hpp"

namespace robin {
namespace {

using nlohmann::json;

std::vector<FourierMode> parse_modes(const json& list, const char* key) {
    if (!list.is_array() || list.empty()) throw SpecError(std::string(key) + " must be a non-empty array");
    std::vector<FourierMode> modes;
    for (const auto& pair : list) {
        if (!pair.is_array() || pair.size() != 2)
            throw SpecError(std::string(key) + " entries must be [cos, sin] pairs");
        modes.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return modes;
}

json modes_json(const std::vector<FourierMode>& modes) {
    json out = json::array();
    for (const auto& m : modes) out.push_back({m.cos_coeff, m.sin_coeff});
    return out;
}

// Model eigenvalues are shared by every row; compute each (m, halfline) family once.
std::vector<double> model_eigenvalues(int m, bool halfline, int n) {
    static std::mutex mutex;
    static std::map<std::tuple<int, bool>, std::vector<double>> cache;
    std::lock_guard lock(mutex);
    auto& values = cache[{m, halfline}];
    if (static_cast<int>(values.size()) < n) {
        // Airy zeros are exact for the linear half-line well; ask for a few extra levels so
        // later calls with slightly larger n reuse the entry.
        const int want = std::max(n, 4);
        values = (m == 1 && halfline) ? airy_zeros(want)
                                      : power_well_spectrum(m, 1.0, halfline, want).eigenvalues;
    }
    return values;
}

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

ProblemSpec parse_problem_spec(const json& config) {
    ProblemSpec spec;
    try {
        if (!config.is_object()) throw SpecError("config must be a JSON object");
        if (!config.contains("geometry")) throw SpecError("missing geometry");
        const json& g = config.at("geometry");
        if (g.is_string()) {
            spec.geometry.shape = g.get<std::string>();
        } else if (g.is_object()) {
            if (g.contains("shape")) spec.geometry.shape = g.at("shape").get<std::string>();
            if (g.contains("fourier_x") || g.contains("fourier_y")) {
                if (!spec.geometry.shape.empty()) throw SpecError("give either shape or Fourier series, not both");
                spec.geometry.fourier_x = parse_modes(g.value("fourier_x", json()), "fourier_x");
                spec.geometry.fourier_y = parse_modes(g.value("fourier_y", json()), "fourier_y");
            }
            spec.geometry.phase_origin = g.value("phase_origin", 0.0);
            spec.geometry.n_samples = g.value("n_samples", spec.geometry.n_samples);
            if (g.contains("ell")) spec.ell = g.at("ell").get<double>();
        } else {
            throw SpecError("geometry must be a shape string or an object");
        }
        if (config.contains("ell")) spec.ell = config.at("ell").get<double>();
        if (!config.contains("alpha_grid")) throw SpecError("missing alpha_grid");
        spec.alpha_grid = config.at("alpha_grid").get<std::vector<double>>();
        spec.sigma = config.value("sigma", spec.sigma);
        spec.rho = config.value("rho", spec.rho);
        spec.n_max = config.value("n_max", spec.n_max);
        if (config.contains("grids")) {
            const json& grids = config.at("grids");
            spec.n_s = grids.value("n_s", spec.n_s);
            spec.n_t = grids.value("n_t", spec.n_t);
            spec.n_1d = grids.value("n_1d", spec.n_1d);
        }
        spec.allow_any_m = config.value("allow_any_m", false);
        if (config.contains("output")) spec.output_dir = config.at("output").get<std::string>();
    } catch (const json::exception& e) {
        throw SpecError(std::string("malformed config: ") + e.what());
    }
    validate(spec);
    return spec;
}

ProblemSpec load_problem_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open " + path.string());
    json config;
    try {
        in >> config;
    } catch (const json::exception& e) {
        throw SpecError(path.string() + ": " + e.what());
    }
    return parse_problem_spec(config);
}

void validate(const ProblemSpec& spec) {
    if (spec.geometry.shape.empty() && spec.geometry.fourier_x.empty())
        throw SpecError("geometry needs a shape or Fourier series");
    if (!(spec.ell > 0.0)) throw SpecError("ell must be positive");
    if (spec.alpha_grid.size() < 3) throw SpecError("alpha_grid needs at least 3 values");
    for (std::size_t i = 0; i < spec.alpha_grid.size(); ++i) {
        if (!(spec.alpha_grid[i] > 0.0) || !std::isfinite(spec.alpha_grid[i]))
            throw SpecError("alpha_grid values must be positive and finite");
        if (i > 0 && !(spec.alpha_grid[i] > spec.alpha_grid[i - 1]))
            throw SpecError("alpha_grid must be strictly ascending");
    }
    if (!(spec.sigma > 0.0 && spec.sigma < 1.0)) throw SpecError("sigma must lie in (0, 1)");
    if (!(spec.rho > 0.0 && spec.rho < 1.0)) throw SpecError("rho must lie in (0, 1)");
    if (spec.n_max < 1) throw SpecError("n_max must be at least 1");
    if (spec.n_s < 0 || spec.n_t < 2) throw SpecError("grids.n_s must be ≥ 0 and grids.n_t ≥ 2");
    if (spec.n_1d < 256) throw SpecError("grids.n_1d must be at least 256");
    if (spec.geometry.n_samples < 64) throw SpecError("geometry.n_samples must be at least 64");
}

json to_json(const ProblemSpec& spec) {
    json g;
    if (!spec.geometry.shape.empty()) {
        g["shape"] = spec.geometry.shape;
    } else {
        g["fourier_x"] = modes_json(spec.geometry.fourier_x);
        g["fourier_y"] = modes_json(spec.geometry.fourier_y);
    }
    g["phase_origin"] = spec.geometry.phase_origin;
    g["n_samples"] = spec.geometry.n_samples;
    json out;
    out["geometry"] = g;
    out["ell"] = spec.ell;
    out["alpha_grid"] = spec.alpha_grid;
    out["sigma"] = spec.sigma;
    out["rho"] = spec.rho;
    out["n_max"] = spec.n_max;
    out["grids"] = {{"n_s", spec.n_s}, {"n_t", spec.n_t}, {"n_1d", spec.n_1d}};
    out["allow_any_m"] = spec.allow_any_m;
    return out;
}

ProblemGeometry build_geometry(const GeometrySpec& spec, double ell) {
    const BoundaryCurve curve =
        spec.shape.empty() ? BoundaryCurve::from_fourier(spec.fourier_x, spec.fourier_y, spec.phase_origin)
                           : BoundaryCurve::from_shape(spec.shape, spec.phase_origin);
    ProblemGeometry out{arclength_resample(curve, spec.n_samples), {}, {}};
    out.arc = make_arc(out.geom, ell);
    out.info = max_curvature_on_arc(out.geom, out.arc);
    return out;
}

std::string regime_name(MaxLocation location) {
    switch (location) {
        case MaxLocation::constant: return "constant";
        case MaxLocation::interior: return "interior_max";
        case MaxLocation::endpoint_0:
        case MaxLocation::endpoint_ell: return "endpoint_max";
    }
    return "constant";
}

double predict(const CurvatureMaxInfo& info, double ell, double alpha, int n, bool allow_any_m) {
    if (n < 1) throw PreconditionError("predict needs n ≥ 1");
    if (!(alpha > 0.0) || !(ell > 0.0)) throw PreconditionError("predict needs α > 0 and ℓ > 0");
    const double k = info.k_star;
    const double base = -alpha * alpha - k * alpha;
    if (info.location == MaxLocation::constant) {
        const double pi_n = std::numbers::pi * n / ell;
        return base - 0.5 * k * k + pi_n * pi_n;
    }
    const int m = info.m;
    const bool interior = info.location == MaxLocation::interior;
    if (m < 1) throw UnsupportedRegime("order of the curvature maximum is unresolved");
    if (interior && m % 2 == 1)
        throw UnsupportedRegime("odd order " + std::to_string(m) + " cannot give an interior maximum");
    const bool validated = interior ? m == 2 : (m == 1 || m == 2);
    if (!validated && !allow_any_m)
        throw UnsupportedRegime("order m = " + std::to_string(m) + " is outside the validated set");
    // Reflect s -> ℓ - s at the far end so the derivative is taken going into Γ.
    const double derivative =
        info.location == MaxLocation::endpoint_ell && m % 2 == 1 ? -info.dm : info.dm;
    const double coeff = -derivative / factorial(m);
    if (!(coeff > 0.0))
        throw UnsupportedRegime("curvature does not decrease away from its maximum");
    const double model = model_eigenvalues(m, !interior, n)[static_cast<std::size_t>(n - 1)];
    const double exponent = 2.0 / (m + 2.0);
    return base + std::pow(coeff, exponent) * model * std::pow(alpha, exponent);
}

AsymptoticReport run_sweep(const ProblemSpec& spec, int workers) {
    validate(spec);
    const ProblemGeometry pg = build_geometry(spec.geometry, spec.ell);
    AsymptoticReport report;
    report.spec = spec;
    report.info = pg.info;
    report.L = pg.geom.L;
    report.tube_radius = tube_radius(pg.geom);
    const std::string regime = regime_name(pg.info.location);
    const int n_max = spec.n_max;
    const std::size_t n_alpha = spec.alpha_grid.size();

    report.rows.resize(n_alpha * static_cast<std::size_t>(n_max));
    report.alphas.resize(n_alpha);

    StripOptions options;
    options.n_s = spec.n_s;
    options.n_t = spec.n_t;

    auto run_alpha = [&](std::size_t i) {
        const double alpha = spec.alpha_grid[i];
        AlphaRecord& rec = report.alphas[i];
        rec.alpha = alpha;
        const double r = std::pow(alpha, -spec.sigma);
        for (int n = 1; n <= n_max; ++n) {
            ReportRow& row = report.rows[i * static_cast<std::size_t>(n_max) + static_cast<std::size_t>(n - 1)];
            row = {alpha, n, nan(), nan(), nan(), nan(), nan(), regime, 0, 0, r};
        }
        try {
            const StripResult strip = strip_eigs(pg.geom, pg.arc, alpha, spec.sigma, StripVariant::P, n_max, options);
            const Spectrum lp = lambda_prime_eigs(pg.geom, pg.arc, alpha, n_max, spec.n_1d);
            const Spectrum lr = lambda_rho_eigs(pg.geom, pg.arc, alpha, spec.rho, n_max, spec.n_1d);
            rec.A = strip.A;
            rec.strip_dof = strip.spectrum.dof;
            rec.strip_h_min = strip.spectrum.h_min;
            rec.strip_h_max = strip.spectrum.h_max;
            rec.lambda_prime_dof = lp.dof;
            rec.lambda_rho_dof = lr.dof;
            rec.sandwich_slack = 10.0 * std::max(std::pow(alpha, -spec.sigma), std::pow(alpha, -0.25));
            for (int n = 1; n <= n_max; ++n) {
                const auto j = static_cast<std::size_t>(n - 1);
                ReportRow& row = report.rows[i * static_cast<std::size_t>(n_max) + j];
                row.E_strip = strip.spectrum.eigenvalues[j];
                row.E_lambda_prime = lp.eigenvalues[j];
                row.E_lambda_rho = lr.eigenvalues[j];
                row.n_s = static_cast<int>(strip.mesh.s_nodes());
                row.n_t = static_cast<int>(strip.mesh.t_nodes());
                try {
                    row.E_predicted = predict(pg.info, spec.ell, alpha, n, spec.allow_any_m);
                    row.residual = row.E_strip - row.E_predicted;
                } catch (const UnsupportedRegime& e) {
                    if (rec.error.empty()) rec.error = e.what();
                }
                const double shifted = row.E_strip + alpha * alpha + pg.info.k_star * alpha;
                rec.sandwich_ok.push_back(shifted >= row.E_lambda_rho - rec.sandwich_slack &&
                                          shifted <= row.E_lambda_prime + rec.sandwich_slack);
            }
            rec.ok = true;
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.error = e.what();
        }
    };

    const int pool = std::max(1, std::min<int>(workers, static_cast<int>(n_alpha)));
    if (pool == 1) {
        for (std::size_t i = 0; i < n_alpha; ++i) run_alpha(i);
    } else {
        // Largest α first: those rows are the slowest.
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> threads;
        for (int w = 0; w < pool; ++w) {
            threads.emplace_back([&] {
                for (std::size_t j = next++; j < n_alpha; j = next++) run_alpha(n_alpha - 1 - j);
            });
        }
    }

    for (const auto& rec : report.alphas)
        for (bool ok : rec.sandwich_ok) report.sandwich_violations += ok ? 0 : 1;

    for (int n = 1; n <= n_max; ++n) {
        FittedExponent fe;
        fe.n = n;
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < n_alpha; ++i) {
            const ReportRow& row = report.rows[i * static_cast<std::size_t>(n_max) + static_cast<std::size_t>(n - 1)];
            if (std::isfinite(row.residual)) {
                xs.push_back(row.alpha);
                ys.push_back(std::abs(row.residual));
            }
        }
        try {
            fe.fit = fit_exponent(xs, ys);
        } catch (const Error& e) {
            fe.error = e.what();
        }
        report.fitted_exponents.push_back(fe);
    }
    return report;
}

}  // namespace robin
