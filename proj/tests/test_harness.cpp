#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "robin/errors.hpp"
#include "robin/harness.hpp"
#include "robin/model_operators.hpp"

using namespace robin;
using nlohmann::json;

namespace {

CurvatureMaxInfo max_info(MaxLocation where, int m, double dm, double k_star = 1.0) {
    CurvatureMaxInfo info;
    info.location = where;
    info.m = m;
    info.dm = dm;
    info.k_star = k_star;
    return info;
}

json circle_config() {
    return json::parse(R"({"geometry": {"shape": "circle:1"}, "ell": 3.141592653589793,
                           "alpha_grid": [20, 40, 80], "sigma": 0.5, "rho": 0.25, "n_max": 2,
                           "grids": {"n_s": 0, "n_t": 32, "n_1d": 512}})");
}

}  // namespace

TEST(Predict, CircleExample) {
    const auto info = max_info(MaxLocation::constant, 0, 0.0);
    EXPECT_NEAR(predict(info, std::numbers::pi, 100.0, 1), -10099.5, 1e-9);
    EXPECT_NEAR(predict(info, std::numbers::pi, 100.0, 3), -10100.5 + 9.0, 1e-9);
}

TEST(Predict, EndpointLinearUsesAiryZeros) {
    const double alpha = 1000.0;
    const auto info = max_info(MaxLocation::endpoint_0, 1, -0.8, 2.0);
    const auto a = airy_zeros(2);
    for (int n = 1; n <= 2; ++n) {
        const double expected = -alpha * alpha - 2.0 * alpha + a[n - 1] * std::pow(0.8, 2.0 / 3.0) * std::pow(alpha, 2.0 / 3.0);
        EXPECT_NEAR(predict(info, 1.0, alpha, n), expected, 1e-7 * alpha * alpha);
    }
    // Mirrored arc: k increases towards s = ℓ.
    const auto far = max_info(MaxLocation::endpoint_ell, 1, 0.8, 2.0);
    EXPECT_DOUBLE_EQ(predict(far, 1.0, alpha, 1), predict(info, 1.0, alpha, 1));
}

TEST(Predict, QuadraticEndpointAndInterior) {
    const double alpha = 400.0;
    const double k2 = -6.0;
    for (int n = 1; n <= 3; ++n) {
        const double c = std::sqrt(-k2 / 2.0) * std::sqrt(alpha);
        EXPECT_NEAR(predict(max_info(MaxLocation::endpoint_0, 2, k2), 1.0, alpha, n),
                    -alpha * alpha - alpha + (4.0 * n - 1.0) * c, 1e-6);
        EXPECT_NEAR(predict(max_info(MaxLocation::interior, 2, k2), 1.0, alpha, n),
                    -alpha * alpha - alpha + (2.0 * n - 1.0) * c, 1e-6);
    }
}

TEST(Predict, UnsupportedOrders) {
    EXPECT_THROW(predict(max_info(MaxLocation::endpoint_0, 3, -1.0), 1.0, 100.0, 1), UnsupportedRegime);
    EXPECT_NO_THROW(predict(max_info(MaxLocation::endpoint_0, 3, -1.0), 1.0, 100.0, 1, true));
    EXPECT_THROW(predict(max_info(MaxLocation::interior, 4, -1.0), 1.0, 100.0, 1), UnsupportedRegime);
    EXPECT_THROW(predict(max_info(MaxLocation::interior, 3, -1.0), 1.0, 100.0, 1, true), UnsupportedRegime);
    EXPECT_THROW(predict(max_info(MaxLocation::interior, 0, 0.0), 1.0, 100.0, 1), UnsupportedRegime);
}

TEST(Spec, ParsesShapeAndFourierForms) {
    const auto spec = parse_problem_spec(circle_config());
    EXPECT_EQ(spec.geometry.shape, "circle:1");
    EXPECT_EQ(spec.n_max, 2);
    EXPECT_EQ(spec.n_1d, 512);

    auto config = circle_config();
    config["geometry"] = json::parse(R"({"fourier_x": [[0, 0], [2, 0]], "fourier_y": [[0, 0], [0, 1]],
                                         "phase_origin": 0.3, "ell": 1.5})");
    config.erase("ell");
    const auto fourier = parse_problem_spec(config);
    EXPECT_EQ(fourier.geometry.fourier_x.size(), 2u);
    EXPECT_DOUBLE_EQ(fourier.ell, 1.5);
    EXPECT_DOUBLE_EQ(fourier.geometry.phase_origin, 0.3);
}

TEST(Spec, RejectsInvalidConfigs) {
    auto bad = circle_config();
    bad["alpha_grid"] = json::array();
    EXPECT_THROW(parse_problem_spec(bad), SpecError);
    bad = circle_config();
    bad["alpha_grid"] = {40, 20, 80};
    EXPECT_THROW(parse_problem_spec(bad), SpecError);
    bad = circle_config();
    bad["sigma"] = 1.0;
    EXPECT_THROW(parse_problem_spec(bad), SpecError);
    bad = circle_config();
    bad["n_max"] = 0;
    EXPECT_THROW(parse_problem_spec(bad), SpecError);
    bad = circle_config();
    bad["alpha_grid"] = "many";
    EXPECT_THROW(parse_problem_spec(bad), SpecError);
    bad = circle_config();
    bad.erase("geometry");
    EXPECT_THROW(parse_problem_spec(bad), SpecError);
}

TEST(Sweep, CircleRowsAreCompleteAndConsistent) {
    const auto spec = parse_problem_spec(circle_config());
    const auto report = run_sweep(spec, 2);
    ASSERT_EQ(report.rows.size(), 6u);
    EXPECT_EQ(report.sandwich_violations, 0);
    for (const auto& row : report.rows) {
        EXPECT_EQ(row.regime, "constant");
        EXPECT_GE(row.E_lambda_prime - row.E_lambda_rho, 0.0);
        EXPECT_EQ(row.residual, row.E_strip - row.E_predicted);
        EXPECT_DOUBLE_EQ(row.r, std::pow(row.alpha, -0.5));
    }
    for (int n = 1; n <= 2; ++n) {
        double prev = 1e300;
        for (std::size_t i = 0; i < 3; ++i) {
            const double res = std::abs(report.rows[2 * i + static_cast<std::size_t>(n - 1)].residual);
            EXPECT_LT(res, prev);
            prev = res;
        }
        ASSERT_TRUE(report.fitted_exponents[static_cast<std::size_t>(n - 1)].fit);
        EXPECT_LT(report.fitted_exponents[static_cast<std::size_t>(n - 1)].fit->slope, 0.0);
    }
}

TEST(Sweep, FailedRowIsRecordedAndRunContinues) {
    auto config = circle_config();
    config["alpha_grid"] = {1.0, 20.0, 40.0};  // r = 1 does not fit in the unit circle's tube
    config["n_max"] = 1;
    const auto report = run_sweep(parse_problem_spec(config), 1);
    ASSERT_EQ(report.rows.size(), 3u);
    EXPECT_FALSE(report.alphas[0].ok);
    EXPECT_NE(report.alphas[0].error.find("OutOfTube"), std::string::npos);
    EXPECT_TRUE(std::isnan(report.rows[0].E_strip));
    EXPECT_TRUE(report.alphas[1].ok);
    EXPECT_TRUE(std::isfinite(report.rows[2].residual));
    EXPECT_NE(report_csv(report).find("1,1,nan"), std::string::npos);
}

TEST(Sweep, CsvIndependentOfWorkerCount) {
    const auto spec = parse_problem_spec(circle_config());
    EXPECT_EQ(report_csv(run_sweep(spec, 1)), report_csv(run_sweep(spec, 3)));
}

TEST(Report, WritesCsvAndMetadata) {
    const auto spec = parse_problem_spec(circle_config());
    const auto report = run_sweep(spec, 3);
    const auto dir = std::filesystem::temp_directory_path() / "robin_harness_test";
    std::filesystem::remove_all(dir);
    write_report(report, dir);
    std::ifstream csv(dir / "report.csv");
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "alpha,n,E_strip,E_lambda_prime,E_lambda_rho,E_predicted,residual,regime,n_s,n_t,r");
    std::ifstream js(dir / "report.json");
    const json meta = json::parse(js);
    EXPECT_EQ(meta["geometry"]["regime"], "constant");
    EXPECT_EQ(meta["alphas"].size(), 3u);
    EXPECT_EQ(meta["fitted_exponents"].size(), 2u);
    EXPECT_EQ(parse_problem_spec(meta["spec"]).alpha_grid, spec.alpha_grid);
    std::filesystem::remove_all(dir);
}
