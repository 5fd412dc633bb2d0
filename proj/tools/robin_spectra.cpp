// Command-line front end: sweeps, model spectra, effective operators, strip solves and
// geometry inspection. CSV goes to stdout, diagnostics to stderr.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "robin/effective_operators.hpp"
#include "robin/errors.hpp"
#include "robin/harness.hpp"
#include "robin/model_operators.hpp"
#include "robin/strip2d.hpp"

namespace {

using namespace robin;

struct GeometryArgs {
    std::string shape = "circle:1";
    double phase = 0.0;
    double ell = 0.0;
    int samples = 2048;

    void attach(CLI::App* app, bool need_ell) {
        app->add_option("--shape", shape, "circle:R or ellipse:a,b")->capture_default_str();
        app->add_option("--phase", phase, "parameter angle where s = 0")->capture_default_str();
        auto* opt = app->add_option("--ell", ell, "length of the Robin arc");
        if (need_ell) opt->required();
        app->add_option("--samples", samples, "arclength samples")->capture_default_str();
    }

    ProblemGeometry build() const {
        GeometrySpec g;
        g.shape = shape;
        g.phase_origin = phase;
        g.n_samples = samples;
        return build_geometry(g, ell);
    }
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void print_spectrum(const std::vector<double>& values) {
    std::cout << "n,eigenvalue\n";
    for (std::size_t i = 0; i < values.size(); ++i) std::cout << i + 1 << ',' << num(values[i]) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra of the Robin Laplacian with a strong negative parameter"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "sweep α from a JSON config and write report.csv/report.json");
    std::string config_path;
    std::string out_dir;
    int workers = 1;
    bool allow_any_m = false;
    run->add_option("--config", config_path, "problem config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory (default: config 'output', else CSV on stdout)");
    run->add_option("--workers", workers, "concurrent α rows")->capture_default_str()->check(CLI::PositiveNumber);
    run->add_flag("--allow-any-m", allow_any_m, "predict for unvalidated orders of the maximum");

    // models
    auto* models = app.add_subcommand("models", "model operator spectra");
    std::string op;
    double alpha = 0.0, r = 0.0, beta = 1.0;
    int m = 2, n = 5;
    models->add_option("--op", op, "slab | power | airy | line")
        ->required()
        ->check(CLI::IsMember({"slab", "power", "airy", "line"}));
    models->add_option("--alpha", alpha, "slab Robin parameter");
    models->add_option("--r", r, "slab width");
    models->add_option("--m", m, "power of the well")->capture_default_str();
    models->add_option("--beta", beta, "well strength")->capture_default_str();
    models->add_option("-n,--n", n, "number of eigenvalues")->capture_default_str();

    // effective
    auto* effective = app.add_subcommand("effective", "effective 1D operators on the Robin arc");
    GeometryArgs eff_geo;
    eff_geo.attach(effective, true);
    double rho = 0.25;
    int n_grid = 1024;
    effective->add_option("--alpha", alpha, "Robin parameter")->required();
    effective->add_option("--rho", rho, "penalty exponent")->capture_default_str();
    effective->add_option("-n,--n", n, "number of eigenvalues")->capture_default_str();
    effective->add_option("--n-grid", n_grid, "base resolution")->capture_default_str();

    // strip
    auto* strip = app.add_subcommand("strip", "2D strip form or a bracketing variant");
    GeometryArgs strip_geo;
    strip_geo.attach(strip, true);
    double sigma = 0.5;
    std::string variant = "p";
    StripOptions options;
    strip->add_option("--alpha", alpha, "Robin parameter")->required();
    strip->add_option("--sigma", sigma, "strip depth r = alpha^-sigma")->capture_default_str();
    strip->add_option("--variant", variant, "p | p+ | p-")
        ->capture_default_str()
        ->check(CLI::IsMember({"p", "p+", "p-"}));
    strip->add_option("-n,--n", n, "number of eigenvalues")->capture_default_str();
    strip->add_option("--n-s", options.n_s, "minimum s nodes")->capture_default_str();
    strip->add_option("--n-t", options.n_t, "minimum t nodes")->capture_default_str();
    strip->add_option("--refine", options.refine, "extra bisections of both meshes")->capture_default_str();

    // geometry
    auto* geometry = app.add_subcommand("geometry", "boundary samples or a summary");
    GeometryArgs geo;
    geo.attach(geometry, false);
    bool inspect = false;
    geometry->add_flag("--inspect", inspect, "print a JSON summary instead of samples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            ProblemSpec spec = load_problem_spec(config_path);
            if (allow_any_m) spec.allow_any_m = true;
            const AsymptoticReport report = run_sweep(spec, workers);
            const auto dir = !out_dir.empty() ? std::filesystem::path(out_dir) : spec.output_dir.value_or("");
            if (dir.empty()) {
                std::cout << report_csv(report);
            } else {
                write_report(report, dir);
                std::cerr << "wrote " << (dir / "report.csv").string() << " and report.json\n";
            }
            int failed = 0;
            for (const auto& rec : report.alphas) {
                if (!rec.ok) {
                    ++failed;
                    std::cerr << "alpha " << rec.alpha << " failed: " << rec.error << '\n';
                }
            }
            if (report.sandwich_violations > 0)
                std::cerr << report.sandwich_violations << " sandwich violation(s)\n";
            return failed == 0 ? 0 : 3;
        }
        if (*models) {
            if (op == "slab") {
                const auto g = slab_ground(alpha, r);
                std::cout << "alpha,r,kappa,E1,psi0_sq\n"
                          << num(g.alpha) << ',' << num(g.r) << ',' << num(g.kappa) << ',' << num(g.E1) << ','
                          << num(g.psi0_sq) << '\n';
            } else if (op == "airy") {
                print_spectrum(airy_zeros(n));
            } else {
                const auto s = power_well_spectrum(m, beta, op == "power", n);
                print_spectrum(s.eigenvalues);
                std::cerr << "box T = " << s.T_box << ", dof = " << s.dof << '\n';
            }
            return 0;
        }
        if (*effective) {
            const auto pg = eff_geo.build();
            const auto lp = lambda_prime_eigs(pg.geom, pg.arc, alpha, n, n_grid);
            const auto lr = lambda_rho_eigs(pg.geom, pg.arc, alpha, rho, n, n_grid);
            std::cout << "n,E_lambda_prime,E_lambda_rho\n";
            for (int i = 0; i < n; ++i)
                std::cout << i + 1 << ',' << num(lp.eigenvalues[i]) << ',' << num(lr.eigenvalues[i]) << '\n';
            std::cerr << "k_star = " << pg.info.k_star << ", dof = " << lp.dof << " / " << lr.dof << '\n';
            return 0;
        }
        if (*strip) {
            const auto pg = strip_geo.build();
            const auto res = strip_eigs(pg.geom, pg.arc, alpha, sigma, parse_strip_variant(variant), n, options);
            print_spectrum(res.spectrum.eigenvalues);
            std::cerr << "r = " << res.mesh.r << ", A = " << res.A << ", nodes = " << res.mesh.s_nodes() << " x "
                      << res.mesh.t_nodes() << ", dof = " << res.spectrum.dof << '\n';
            return 0;
        }
        if (*geometry) {
            const auto sampled = arclength_resample(BoundaryCurve::from_shape(geo.shape, geo.phase), geo.samples);
            if (!inspect) {
                std::cout << "s,x,y,k,k1,k2\n";
                for (std::size_t i = 0; i < sampled.size(); ++i)
                    std::cout << num(sampled.s_grid[i]) << ',' << num(sampled.gamma[i].x()) << ','
                              << num(sampled.gamma[i].y()) << ',' << num(sampled.k[i]) << ',' << num(sampled.k1[i])
                              << ',' << num(sampled.k2[i]) << '\n';
                return 0;
            }
            nlohmann::json out;
            out["shape"] = geo.shape;
            out["phase_origin"] = geo.phase;
            out["L"] = sampled.L;
            out["turning_number"] = turning_number(sampled);
            out["max_abs_curvature"] = max_abs_curvature(sampled);
            out["tube_radius"] = tube_radius(sampled);
            if (geo.ell > 0.0) {
                const auto arc = make_arc(sampled, geo.ell);
                const auto info = max_curvature_on_arc(sampled, arc);
                out["ell"] = geo.ell;
                out["k_star"] = info.k_star;
                out["s_star"] = info.s_star;
                out["location"] = std::string(to_string(info.location));
                out["m"] = info.m;
                out["dm"] = info.dm;
            }
            std::cout << out.dump(2) << '\n';
            return 0;
        }
    } catch (const robin::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 0;
}
