#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "robin/fit.hpp"
#include "robin/geometry.hpp"

namespace robin {

/// Either a named shape ("circle:R", "ellipse:a,b") or explicit Fourier coefficients.
struct GeometrySpec {
    std::string shape;
    std::vector<FourierMode> fourier_x;
    std::vector<FourierMode> fourier_y;
    double phase_origin = 0.0;
    int n_samples = 2048;
};

struct ProblemSpec {
    GeometrySpec geometry;
    double ell = 0.0;
    std::vector<double> alpha_grid;
    double sigma = 0.5;
    double rho = 0.25;
    int n_max = 1;
    int n_s = 0;      ///< minimum strip s nodes
    int n_t = 32;     ///< minimum strip t nodes
    int n_1d = 1024;  ///< resolution of the effective operators
    bool allow_any_m = false;
    std::optional<std::filesystem::path> output_dir;
};

/// Throws SpecError on a malformed or inconsistent config.
ProblemSpec parse_problem_spec(const nlohmann::json& config);
ProblemSpec load_problem_spec(const std::filesystem::path& path);
void validate(const ProblemSpec& spec);
nlohmann::json to_json(const ProblemSpec& spec);

struct ProblemGeometry {
    SampledGeometry geom;
    RobinArc arc;
    CurvatureMaxInfo info;
};

ProblemGeometry build_geometry(const GeometrySpec& spec, double ell);

/// "constant", "interior_max" or "endpoint_max".
std::string regime_name(MaxLocation location);

/// Leading-order asymptotics of the n-th eigenvalue. Validated orders are m ∈ {1, 2} at an
/// endpoint and m = 2 in the interior; others raise UnsupportedRegime unless allow_any_m.
double predict(const CurvatureMaxInfo& info, double ell, double alpha, int n,
               bool allow_any_m = false);

struct ReportRow {
    double alpha = 0.0;
    int n = 0;
    double E_strip = 0.0;
    double E_lambda_prime = 0.0;
    double E_lambda_rho = 0.0;
    double E_predicted = 0.0;
    double residual = 0.0;
    std::string regime;
    int n_s = 0;
    int n_t = 0;
    double r = 0.0;
};

/// Per-α bookkeeping that does not fit the CSV.
struct AlphaRecord {
    double alpha = 0.0;
    bool ok = false;
    std::string error;
    double A = 0.0;
    long long strip_dof = 0;
    double strip_h_min = 0.0;
    double strip_h_max = 0.0;
    long long lambda_prime_dof = 0;
    long long lambda_rho_dof = 0;
    /// One entry per n: lower ≤ E_strip + α² + k_*α ≤ upper with the slack applied.
    std::vector<bool> sandwich_ok;
    double sandwich_slack = 0.0;
};

struct FittedExponent {
    int n = 0;
    std::optional<ExponentFit> fit;
    std::string error;
};

struct AsymptoticReport {
    ProblemSpec spec;
    CurvatureMaxInfo info;
    double L = 0.0;
    double tube_radius = 0.0;
    std::vector<ReportRow> rows;  ///< α-major, n-minor; failed rows carry NaN values
    std::vector<AlphaRecord> alphas;
    std::vector<FittedExponent> fitted_exponents;
    int sandwich_violations = 0;
};

/// Rows run concurrently on `workers` threads; the result does not depend on the worker count.
AsymptoticReport run_sweep(const ProblemSpec& spec, int workers = 1);

std::string report_csv(const AsymptoticReport& report);
nlohmann::json report_metadata(const AsymptoticReport& report);
/// Writes report.csv and report.json into dir.
void write_report(const AsymptoticReport& report, const std::filesystem::path& dir);

}  // namespace robin
