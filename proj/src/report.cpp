#include <cmath>
#include <cstdio>
#include <fstream>

#include "robin/errors.hpp"
#include "robin/harness.hpp"

namespace robin {
namespace {

using nlohmann::json;

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// JSON has no NaN; failed quantities become null.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string report_csv(const AsymptoticReport& report) {
    std::string out = "alpha,n,E_strip,E_lambda_prime,E_lambda_rho,E_predicted,residual,regime,n_s,n_t,r\n";
    for (const auto& row : report.rows) {
        out += fmt(row.alpha) + ',' + std::to_string(row.n) + ',' + fmt(row.E_strip) + ',' +
               fmt(row.E_lambda_prime) + ',' + fmt(row.E_lambda_rho) + ',' + fmt(row.E_predicted) + ',' +
               fmt(row.residual) + ',' + row.regime + ',' + std::to_string(row.n_s) + ',' +
               std::to_string(row.n_t) + ',' + fmt(row.r) + '\n';
    }
    return out;
}

json report_metadata(const AsymptoticReport& report) {
    json meta;
    meta["spec"] = to_json(report.spec);
    meta["geometry"] = {
        {"L", report.L},
        {"tube_radius", report.tube_radius},
        {"k_star", report.info.k_star},
        {"s_star", report.info.s_star},
        {"location", std::string(to_string(report.info.location))},
        {"regime", regime_name(report.info.location)},
        {"m", report.info.m},
        {"dm", report.info.dm},
    };
    json alphas = json::array();
    for (const auto& rec : report.alphas) {
        json a;
        a["alpha"] = rec.alpha;
        a["ok"] = rec.ok;
        if (!rec.error.empty()) a["error"] = rec.error;
        a["A"] = rec.A;
        a["strip"] = {{"dof", rec.strip_dof}, {"h_min", rec.strip_h_min}, {"h_max", rec.strip_h_max}};
        a["lambda_prime_dof"] = rec.lambda_prime_dof;
        a["lambda_rho_dof"] = rec.lambda_rho_dof;
        a["sandwich_slack"] = rec.sandwich_slack;
        a["sandwich_ok"] = rec.sandwich_ok;
        alphas.push_back(a);
    }
    meta["alphas"] = alphas;
    json fits = json::array();
    for (const auto& fe : report.fitted_exponents) {
        json f;
        f["n"] = fe.n;
        if (fe.fit) {
            f["slope"] = number_or_null(fe.fit->slope);
            f["intercept"] = number_or_null(fe.fit->intercept);
            f["r2"] = number_or_null(fe.fit->r2);
        } else {
            f["error"] = fe.error;
        }
        fits.push_back(f);
    }
    meta["fitted_exponents"] = fits;
    meta["sandwich_violations"] = report.sandwich_violations;
    meta["notes"] = {
        "constant-curvature prediction uses pi^2 n^2 / ell^2 for the Dirichlet term",
        "effective decomposition uses -alpha^2 - k_star*alpha",
        "interior prediction uses the derivative at the maximiser s_star",
        "fitted slopes are measured |residual| decay rates, not asserted bounds",
    };
    return meta;
}

void write_report(const AsymptoticReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream csv(dir / "report.csv", std::ios::binary);
        if (!csv) throw SpecError("cannot write " + (dir / "report.csv").string());
        csv << report_csv(report);
    }
    std::ofstream js(dir / "report.json", std::ios::binary);
    if (!js) throw SpecError("cannot write " + (dir / "report.json").string());
    js << report_metadata(report).dump(2) << '\n';
}

}  // namespace robin
