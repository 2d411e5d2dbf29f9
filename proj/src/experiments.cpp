#include "cranjt/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cranjt/coverage.hpp"
#include "cranjt/montecarlo.hpp"
#include "cranjt/quadrature.hpp"
#include "cranjt/validation.hpp"

namespace cranjt {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
    out << body;
}

SimWindow experiment_window(const ExperimentSpec& spec, const NetworkParams& p) {
    return {spec.window_radius > 0.0 ? spec.window_radius : default_window_radius(p)};
}

// Ten-realization probe of the finite-window approximation: relative change
// of the mean aggregate interference when the window is doubled.
double window_bias_probe(const NetworkParams& p, const SimWindow& window, std::uint64_t seed) {
    const auto mean_interference = [&](double radius, std::uint64_t salt) {
        double acc = 0.0;
        for (std::uint64_t i = 0; i < 10; ++i) {
            std::mt19937_64 rng(stream_seed({seed ^ salt, i}));
            NetworkRealization real;
            do {
                real.rrhs = sample_ppp(p.lambda_r, {radius}, rng);
            } while ([&] {
                for (const Vec2& x : real.rrhs.pts)
                    if (norm(x) < p.r0) return true;
                return false;
            }());
            real.users = sample_users(p.lambda_u, {radius - p.r1}, real.rrhs, p.r0, rng);
            real.users.pts.insert(real.users.pts.begin(), Vec2{0.0, 0.0});
            const Assignment assign = build_assignment(real.rrhs, real.users, p.r1);
            real.fading = sample_fading(static_cast<int>(real.rrhs.size()),
                                        static_cast<int>(real.users.size()), p.antennas, rng);
            const PowerSplit s = received_power_mode(real, assign, 0, SimMode::exact, p, rng);
            acc += s.inset + s.outset;
        }
        return acc / 10.0;
    };
    const double base = mean_interference(window.radius, 0);
    const double doubled = mean_interference(2.0 * window.radius, 0x9e3779b9ULL);
    if (doubled <= 0.0) return 0.0;
    return (doubled - base) / doubled;
}

AnalyticOptions analytic_options(const ExperimentSpec& spec, const SimWindow& window,
                                 bool matched) {
    AnalyticOptions opt;
    opt.z_mode = z_mode_from_string(spec.z_moment_mode);
    opt.workers = spec.workers;
    if (matched && spec.match_mc_window) {
        opt.pi2_user_window = window.radius - spec.params.r1;
        opt.pi2_r_max = window.radius;
    }
    return opt;
}

std::string run_coverage_curve(const ExperimentSpec& spec, std::vector<std::string>& outputs,
                               std::vector<std::string>& diag) {
    const std::vector<double> grid_db =
        theta_db_grid(spec.theta_db_min, spec.theta_db_max, spec.theta_db_step);
    std::vector<double> thetas(grid_db.size());
    for (std::size_t i = 0; i < grid_db.size(); ++i) thetas[i] = db_to_linear(grid_db[i]);

    std::vector<int> antennas = spec.antennas_values;
    if (antennas.empty()) antennas = {spec.params.antennas};

    std::ostringstream csv, gaps;
    csv << "antennas,theta_db,theta,source,value,half_width\n";
    gaps << "antennas,theta_db_at_max,value,source\n";
    double overall_gap = 0.0;
    for (int m : antennas) {
        NetworkParams p = spec.params;
        p.antennas = m;
        const SimWindow window = experiment_window(spec, p);
        const SeedSpec seed{stream_seed({spec.master_seed, static_cast<std::uint64_t>(m)}), 0};

        const SinrSamples samples = simulate_sinr(p, SimMode::exact, spec.n_realizations, window,
                                                  seed, {spec.workers, ZMomentMode::printed});
        const CoverageCurve emp = empirical_coverage(samples, thetas);
        const AnalyticCoverage analytic(p, spec.policy, analytic_options(spec, window, true));
        const CoverageCurve ana = analytic.curve(thetas);

        double max_gap = 0.0, at_db = grid_db.front();
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            csv << m << "," << num(grid_db[i]) << "," << num(thetas[i]) << ",analytic,"
                << num(ana.probs[i]) << "," << num(ana.half_width[i]) << "\n";
            csv << m << "," << num(grid_db[i]) << "," << num(thetas[i]) << ",empirical,"
                << num(emp.probs[i]) << "," << num(emp.half_width[i]) << "\n";
            const double g = std::abs(ana.probs[i] - emp.probs[i]);
            if (g > max_gap) {
                max_gap = g;
                at_db = grid_db[i];
            }
        }
        gaps << m << "," << num(at_db) << "," << num(max_gap) << ",cross_validation\n";
        overall_gap = std::max(overall_gap, max_gap);
        diag.push_back("antennas_" + std::to_string(m) +
                       "_truncation_residual = " + num(ana.truncation_residual));
        diag.push_back("antennas_" + std::to_string(m) + "_window_bias_probe = " +
                       num(window_bias_probe(p, window, spec.master_seed)));
    }
    const std::string curve_path = spec.output_dir + "/coverage_curve.csv";
    const std::string gap_path = spec.output_dir + "/coverage_gap.csv";
    write_file(curve_path, csv.str());
    write_file(gap_path, gaps.str());
    outputs = {curve_path, gap_path};
    return "coverage_curve: max analytic-vs-empirical gap " + num(overall_gap);
}

std::string run_ratio_map(const ExperimentSpec& spec, std::vector<std::string>& outputs,
                          std::vector<std::string>& diag) {
    std::vector<double> lrs = spec.lambda_r_values;
    std::vector<double> lus = spec.lambda_u_values;
    if (lrs.empty()) lrs = {spec.params.lambda_r};
    if (lus.empty()) lus = {spec.params.lambda_u};

    std::ostringstream csv;
    csv << "lambda_r,lambda_u,mean_rrh_per_zone,mean_user_per_zone,value,se,mean_of_ratio,zero_outset,source\n";
    long degenerate_cells = 0;
    for (double lr : lrs) {
        for (double lu : lus) {
            NetworkParams p = spec.params;
            p.lambda_r = lr;
            p.lambda_u = lu;
            const SimWindow window = experiment_window(spec, p);
            const SeedSpec seed{
                stream_seed({spec.master_seed,
                             stream_seed({static_cast<std::uint64_t>(lr * 1e12),
                                          static_cast<std::uint64_t>(lu * 1e12)})}),
                0};
            const InterferenceRatioResult res = interference_ratio(
                p, spec.n_realizations, window, seed, {spec.workers, ZMomentMode::printed});
            if (!std::isfinite(res.ratio)) ++degenerate_cells;
            csv << num(lr) << "," << num(lu) << ","
                << num(annulus_mean(lr, p.r0, p.r1)) << "," << num(annulus_mean(lu, p.r0, p.r1))
                << "," << num(res.ratio) << "," << num(res.se_ratio) << ","
                << num(res.mean_of_ratio) << "," << res.zero_outset << ",empirical\n";
        }
    }
    const std::string path = spec.output_dir + "/interference_ratio.csv";
    write_file(path, csv.str());
    outputs = {path};
    diag.push_back("degenerate_cells = " + std::to_string(degenerate_cells));
    return "interference_ratio_map: " + std::to_string(lrs.size() * lus.size()) + " cells";
}

std::string run_se_map(const ExperimentSpec& spec, std::vector<std::string>& outputs,
                       std::vector<std::string>& diag) {
    std::vector<double> lrs = spec.lambda_r_values;
    std::vector<double> lus = spec.lambda_u_values;
    if (lrs.empty()) lrs = {spec.params.lambda_r};
    if (lus.empty()) lus = {spec.params.lambda_u};

    std::ostringstream csv;
    csv << "lambda_r,lambda_u,mean_rrh_per_zone,mean_user_per_zone,value,truncation_residual,source\n";
    for (double lr : lrs) {
        for (double lu : lus) {
            NetworkParams p = spec.params;
            p.lambda_r = lr;
            p.lambda_u = lu;
            AnalyticOptions opt;
            opt.z_mode = z_mode_from_string(spec.z_moment_mode);
            opt.workers = spec.workers;
            const AnalyticCoverage analytic(p, spec.policy, opt);
            const double se = analytic.mean_se();
            csv << num(lr) << "," << num(lu) << "," << num(annulus_mean(lr, p.r0, p.r1)) << ","
                << num(annulus_mean(lu, p.r0, p.r1)) << "," << num(se) << ","
                << num(analytic.cf_context().truncation_residual()) << ",analytic\n";
        }
    }
    const std::string path = spec.output_dir + "/se_map.csv";
    write_file(path, csv.str());
    outputs = {path};
    diag.push_back("cells = " + std::to_string(lrs.size() * lus.size()));
    return "se_map: " + std::to_string(lrs.size() * lus.size()) + " cells";
}

std::string run_validation(const ExperimentSpec& spec, std::vector<std::string>& outputs,
                           std::vector<std::string>& diag, int& exit_code) {
    const std::vector<ValidationCheck> checks = run_validation_suite();
    std::ostringstream csv;
    csv << "check,status,value,bound,detail,source\n";
    int failures = 0;
    for (const auto& c : checks) {
        csv << c.name << "," << (c.pass ? "pass" : "FAIL") << "," << num(c.value) << ","
            << num(c.bound) << "," << c.detail << ",validation\n";
        if (!c.pass) ++failures;
    }
    const std::string path = spec.output_dir + "/validation.csv";
    write_file(path, csv.str());
    outputs = {path};
    diag.push_back("failures = " + std::to_string(failures));
    if (failures > 0) exit_code = 3;
    return "validation_suite: " + std::to_string(checks.size() - failures) + "/" +
           std::to_string(checks.size()) + " checks passed";
}

}  // namespace

std::vector<double> theta_db_grid(double db_min, double db_max, double db_step) {
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((db_max - db_min) / db_step + 1e-9));
    for (int i = 0; i <= n; ++i) out.push_back(db_min + i * db_step);
    return out;
}

double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

RunResult run_experiment(const ExperimentSpec& spec) {
    validate(spec.params);
    validate(spec.policy);
    std::filesystem::create_directories(spec.output_dir);
    const auto t0 = std::chrono::steady_clock::now();

    RunResult res;
    std::vector<std::string> diag;
    try {
        if (spec.kind == "coverage_curve")
            res.summary = run_coverage_curve(spec, res.outputs, diag);
        else if (spec.kind == "interference_ratio_map")
            res.summary = run_ratio_map(spec, res.outputs, diag);
        else if (spec.kind == "se_map")
            res.summary = run_se_map(spec, res.outputs, diag);
        else if (spec.kind == "validation_suite")
            res.summary = run_validation(spec, res.outputs, diag, res.exit_code);
        else
            throw ConfigError("unknown experiment kind '" + spec.kind + "'");
    } catch (const QuadratureError& e) {
        res.exit_code = 2;
        res.summary = std::string("numeric failure: ") + e.what();
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream manifest;
    manifest << to_manifest(spec);
    manifest << "\n[run]\n";
    manifest << "version = " << kVersion << "\n";
    manifest << "wall_seconds = " << num(wall) << "\n";
    manifest << "summary = " << res.summary << "\n";
    for (const std::string& d : diag) manifest << d << "\n";
    write_file(spec.output_dir + "/manifest.txt", manifest.str());
    return res;
}

}  // namespace cranjt
