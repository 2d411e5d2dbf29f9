#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cranjt/config.hpp"
#include "cranjt/experiments.hpp"

using namespace cranjt;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kTinyCoverage = R"(
[experiment]
kind = coverage_curve
output_dir = {OUT}

[params]
lambda_r = 9.55e-5
lambda_u = 9.55e-5
antennas = 1
alpha = 3
r0 = 1
r1 = 100
noise_w = 0

[sweep]
antennas_values = 1
theta_db_min = -5
theta_db_max = 10
theta_db_step = 5

[mc]
n_realizations = 400
master_seed = 17
workers = {WORKERS}

[analysis]
z_moment_mode = printed
match_mc_window = true
)";

std::string instantiate(std::string text, const std::string& out, int workers) {
    const auto sub = [&](const std::string& key, const std::string& value) {
        const auto pos = text.find(key);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, key.size(), value);
    };
    sub("{OUT}", out);
    sub("{WORKERS}", std::to_string(workers));
    return text;
}

}  // namespace

TEST_CASE("minimal config picks up every documented default") {
    const ExperimentSpec spec = parse_config_text(
        "[params]\nlambda_r = 1e-4\nlambda_u = 2e-5\nalpha = 3\n", "inline");
    CHECK(spec.kind == "coverage_curve");
    CHECK(spec.n_realizations == 10000);
    CHECK(spec.master_seed == 1);
    CHECK(spec.policy.tail_mass_eps == 1e-6);
    CHECK(spec.z_moment_mode == "empirical");
    CHECK(spec.match_mc_window == true);
    CHECK(spec.params.lambda_r == 1e-4);
}

TEST_CASE("unknown keys and sections are rejected with their location") {
    CHECK_THROWS_WITH_AS(parse_config_text("[params]\nbogus = 1\n", "inline"),
                         doctest::Contains("params.bogus"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("[nope]\nx = 1\n", "inline"),
                         doctest::Contains("unknown section"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("[params]\nlambda_r = 1e-4\nalpha = fast\n", "inline"),
                         doctest::Contains("line 3"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[analysis]\nz_moment_mode = quick\n", "inline"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("lambda_r = 1\n", "inline"), ConfigError);
}

TEST_CASE("config round-trips through the manifest") {
    ExperimentSpec spec;
    spec.kind = "se_map";
    spec.output_dir = "/tmp/xyz";
    spec.params.lambda_r = 1.27e-4;
    spec.params.alpha = 2.01;
    spec.lambda_r_values = {1e-5, 2e-5, 3.33e-5};
    spec.lambda_u_values = {4e-6};
    spec.antennas_values = {1, 2, 4};
    spec.n_realizations = 123;
    spec.master_seed = 987654321;
    spec.policy.quad_rel_tol = 2.5e-7;
    spec.z_moment_mode = "printed";
    spec.match_mc_window = false;

    const std::string manifest = to_manifest(spec);
    const ExperimentSpec back = parse_config_text(manifest, "manifest");
    CHECK(back == spec);
    CHECK(to_manifest(back) == manifest);
}

TEST_CASE("run sections in emitted manifests are ignored on re-parse") {
    ExperimentSpec spec;
    const std::string manifest = to_manifest(spec) + "\n[run]\nversion = 0.1.0\nwall_seconds = 3\n";
    const ExperimentSpec back = parse_config_text(manifest, "manifest");
    CHECK(back == spec);
}

TEST_CASE("experiment outputs are byte-identical across worker counts") {
    namespace fs = std::filesystem;
    const std::string out1 = (fs::temp_directory_path() / "cranjt_w1").string();
    const std::string out2 = (fs::temp_directory_path() / "cranjt_w2").string();
    fs::remove_all(out1);
    fs::remove_all(out2);

    const ExperimentSpec s1 = parse_config_text(instantiate(kTinyCoverage, out1, 1), "w1");
    const ExperimentSpec s2 = parse_config_text(instantiate(kTinyCoverage, out2, 2), "w2");
    REQUIRE(run_experiment(s1).exit_code == 0);
    REQUIRE(run_experiment(s2).exit_code == 0);

    CHECK(read_file(out1 + "/coverage_curve.csv") == read_file(out2 + "/coverage_curve.csv"));
    CHECK(read_file(out1 + "/coverage_gap.csv") == read_file(out2 + "/coverage_gap.csv"));

    const std::string csv = read_file(out1 + "/coverage_curve.csv");
    CHECK(csv.rfind("antennas,theta_db,theta,source,value,half_width\n", 0) == 0);
    const std::string manifest = read_file(out1 + "/manifest.txt");
    CHECK(manifest.find("[run]") != std::string::npos);
    CHECK(manifest.find("master_seed = 17") != std::string::npos);
}

TEST_CASE("missing config files raise a config error") {
    CHECK_THROWS_AS(parse_config("/nonexistent/nowhere.ini"), ConfigError);
}

TEST_CASE("theta grids are inclusive and evenly spaced") {
    const std::vector<double> grid = theta_db_grid(-10.0, 20.0, 1.0);
    CHECK(grid.size() == 31);
    CHECK(grid.front() == -10.0);
    CHECK(grid.back() == 20.0);
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
}
