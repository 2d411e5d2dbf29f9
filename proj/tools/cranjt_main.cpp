#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cranjt/config.hpp"
#include "cranjt/experiments.hpp"
#include "cranjt/quadrature.hpp"
#include "cranjt/validation.hpp"

namespace {

std::uint64_t seed_override(std::uint64_t fallback) {
    const char* env = std::getenv("CRANJT_MASTER_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw cranjt::ConfigError("CRANJT_MASTER_SEED is not a valid integer");
    }
}

int run(const std::string& config_path) {
    cranjt::ExperimentSpec spec = cranjt::parse_config(config_path);
    spec.master_seed = seed_override(spec.master_seed);
    const cranjt::RunResult res = cranjt::run_experiment(spec);
    std::cout << res.summary << "\n";
    for (const auto& path : res.outputs) std::cout << "wrote " << path << "\n";
    return res.exit_code;
}

int validate_cmd() {
    const auto checks = cranjt::run_validation_suite();
    int failures = 0;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  |value| = " << c.value
                  << " bound = " << c.bound << "  (" << c.detail << ")\n";
        if (!c.pass) ++failures;
    }
    std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " checks failed")
              << "\n";
    return failures == 0 ? 0 : 3;
}

int show_defaults() {
    std::cout << cranjt::to_manifest(cranjt::ExperimentSpec{});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage and spectral-efficiency evaluator for distance-based joint transmission"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
    run_cmd->add_option("config", config_path, "path to the experiment config")->required();
    CLI::App* val_cmd = app.add_subcommand("validate", "run the quick oracle checks");
    CLI::App* def_cmd = app.add_subcommand("show-defaults", "print the default config");

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) return run(config_path);
        if (val_cmd->parsed()) return validate_cmd();
        if (def_cmd->parsed()) return show_defaults();
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const cranjt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const cranjt::QuadratureError& e) {
        std::cerr << "numeric failure: " << e.what() << " (residual " << e.residual << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
