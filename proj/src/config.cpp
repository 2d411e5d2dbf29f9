#include "cranjt/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace cranjt {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct KeyRef {
    std::string section;
    std::string key;
    std::string value;
    int line;
};

[[noreturn]] void fail(const KeyRef& ref, const std::string& what) {
    throw ConfigError(what + " for key '" + ref.section + "." + ref.key + "' (line " +
                      std::to_string(ref.line) + ")");
}

[[noreturn]] void fail_unknown(const KeyRef& ref) {
    throw ConfigError("unknown key '" + ref.section + "." + ref.key + "' (line " +
                      std::to_string(ref.line) + ")");
}

double parse_double(const KeyRef& ref) {
    try {
        std::size_t used = 0;
        const double v = std::stod(ref.value, &used);
        if (used != ref.value.size()) fail(ref, "malformed numeric value '" + ref.value + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(ref, "malformed numeric value '" + ref.value + "'");
    }
}

long parse_long(const KeyRef& ref) {
    try {
        std::size_t used = 0;
        const long v = std::stol(ref.value, &used);
        if (used != ref.value.size()) fail(ref, "malformed integer value '" + ref.value + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(ref, "malformed integer value '" + ref.value + "'");
    }
}

std::uint64_t parse_u64(const KeyRef& ref) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(ref.value, &used);
        if (used != ref.value.size()) fail(ref, "malformed integer value '" + ref.value + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(ref, "malformed integer value '" + ref.value + "'");
    }
}

bool parse_bool(const KeyRef& ref) {
    if (ref.value == "true" || ref.value == "1") return true;
    if (ref.value == "false" || ref.value == "0") return false;
    fail(ref, "malformed boolean value '" + ref.value + "'");
}

template <typename T, typename Elem>
std::vector<T> parse_list(const KeyRef& ref, Elem elem) {
    std::vector<T> out;
    std::stringstream ss(ref.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        KeyRef one{ref.section, ref.key, trim(item), ref.line};
        if (one.value.empty()) fail(ref, "empty list element");
        out.push_back(elem(one));
    }
    if (out.empty()) fail(ref, "empty list");
    return out;
}

}  // namespace

ZMomentMode z_mode_from_string(const std::string& name) {
    if (name == "printed") return ZMomentMode::printed;
    if (name == "empirical") return ZMomentMode::empirical;
    throw ConfigError("unknown z_moment_mode '" + name + "' (expected printed or empirical)");
}

ExperimentSpec parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentSpec spec;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ": malformed section header (line " +
                                  std::to_string(lineno) + ")");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "experiment" && section != "params" && section != "sweep" &&
                section != "mc" && section != "policy" && section != "analysis" && section != "run")
                throw ConfigError(origin + ": unknown section '" + section + "' (line " +
                                  std::to_string(lineno) + ")");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ": expected key = value (line " + std::to_string(lineno) +
                              ")");
        KeyRef ref{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
        if (section == "run") continue;  // output-only metadata
        if (section.empty())
            throw ConfigError(origin + ": key '" + ref.key + "' outside any section (line " +
                              std::to_string(lineno) + ")");

        if (section == "experiment") {
            if (ref.key == "kind") {
                if (ref.value != "coverage_curve" && ref.value != "interference_ratio_map" &&
                    ref.value != "se_map" && ref.value != "validation_suite")
                    fail(ref, "unknown experiment kind '" + ref.value + "'");
                spec.kind = ref.value;
            } else if (ref.key == "output_dir") {
                spec.output_dir = ref.value;
            } else {
                fail_unknown(ref);
            }
        } else if (section == "params") {
            if (ref.key == "lambda_r") spec.params.lambda_r = parse_double(ref);
            else if (ref.key == "lambda_u") spec.params.lambda_u = parse_double(ref);
            else if (ref.key == "antennas") spec.params.antennas = static_cast<int>(parse_long(ref));
            else if (ref.key == "alpha") spec.params.alpha = parse_double(ref);
            else if (ref.key == "r0") spec.params.r0 = parse_double(ref);
            else if (ref.key == "r1") spec.params.r1 = parse_double(ref);
            else if (ref.key == "noise_w") spec.params.noise_w = parse_double(ref);
            else fail_unknown(ref);
        } else if (section == "sweep") {
            if (ref.key == "antennas_values")
                spec.antennas_values = parse_list<int>(ref, [](const KeyRef& r) {
                    return static_cast<int>(parse_long(r));
                });
            else if (ref.key == "lambda_r_values")
                spec.lambda_r_values = parse_list<double>(ref, parse_double);
            else if (ref.key == "lambda_u_values")
                spec.lambda_u_values = parse_list<double>(ref, parse_double);
            else if (ref.key == "theta_db_min") spec.theta_db_min = parse_double(ref);
            else if (ref.key == "theta_db_max") spec.theta_db_max = parse_double(ref);
            else if (ref.key == "theta_db_step") spec.theta_db_step = parse_double(ref);
            else fail_unknown(ref);
        } else if (section == "mc") {
            if (ref.key == "n_realizations") spec.n_realizations = parse_long(ref);
            else if (ref.key == "master_seed") spec.master_seed = parse_u64(ref);
            else if (ref.key == "workers") spec.workers = static_cast<int>(parse_long(ref));
            else if (ref.key == "window_radius") spec.window_radius = parse_double(ref);
            else fail_unknown(ref);
        } else if (section == "policy") {
            if (ref.key == "tail_mass_eps") spec.policy.tail_mass_eps = parse_double(ref);
            else if (ref.key == "max_terms") spec.policy.max_terms = static_cast<int>(parse_long(ref));
            else if (ref.key == "quad_rel_tol") spec.policy.quad_rel_tol = parse_double(ref);
            else if (ref.key == "cf_tail_cut") spec.policy.cf_tail_cut = parse_double(ref);
            else fail_unknown(ref);
        } else if (section == "analysis") {
            if (ref.key == "z_moment_mode") {
                z_mode_from_string(ref.value);  // validates
                spec.z_moment_mode = ref.value;
            } else if (ref.key == "match_mc_window") {
                spec.match_mc_window = parse_bool(ref);
            } else {
                fail_unknown(ref);
            }
        }
    }
    validate(spec.params);
    validate(spec.policy);
    if (spec.n_realizations < 1) throw ConfigError(origin + ": n_realizations must be positive");
    if (spec.theta_db_step <= 0.0) throw ConfigError(origin + ": theta_db_step must be positive");
    if (spec.theta_db_max < spec.theta_db_min)
        throw ConfigError(origin + ": theta_db_max must be at least theta_db_min");
    return spec;
}

ExperimentSpec parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string to_manifest(const ExperimentSpec& spec) {
    std::ostringstream out;
    out << "[experiment]\n";
    out << "kind = " << spec.kind << "\n";
    out << "output_dir = " << spec.output_dir << "\n";
    out << "\n[params]\n";
    out << "lambda_r = " << fmt_double(spec.params.lambda_r) << "\n";
    out << "lambda_u = " << fmt_double(spec.params.lambda_u) << "\n";
    out << "antennas = " << spec.params.antennas << "\n";
    out << "alpha = " << fmt_double(spec.params.alpha) << "\n";
    out << "r0 = " << fmt_double(spec.params.r0) << "\n";
    out << "r1 = " << fmt_double(spec.params.r1) << "\n";
    out << "noise_w = " << fmt_double(spec.params.noise_w) << "\n";
    out << "\n[sweep]\n";
    if (!spec.antennas_values.empty()) {
        out << "antennas_values = ";
        for (std::size_t i = 0; i < spec.antennas_values.size(); ++i)
            out << (i ? "," : "") << spec.antennas_values[i];
        out << "\n";
    }
    if (!spec.lambda_r_values.empty()) {
        out << "lambda_r_values = ";
        for (std::size_t i = 0; i < spec.lambda_r_values.size(); ++i)
            out << (i ? "," : "") << fmt_double(spec.lambda_r_values[i]);
        out << "\n";
    }
    if (!spec.lambda_u_values.empty()) {
        out << "lambda_u_values = ";
        for (std::size_t i = 0; i < spec.lambda_u_values.size(); ++i)
            out << (i ? "," : "") << fmt_double(spec.lambda_u_values[i]);
        out << "\n";
    }
    out << "theta_db_min = " << fmt_double(spec.theta_db_min) << "\n";
    out << "theta_db_max = " << fmt_double(spec.theta_db_max) << "\n";
    out << "theta_db_step = " << fmt_double(spec.theta_db_step) << "\n";
    out << "\n[mc]\n";
    out << "n_realizations = " << spec.n_realizations << "\n";
    out << "master_seed = " << spec.master_seed << "\n";
    out << "workers = " << spec.workers << "\n";
    out << "window_radius = " << fmt_double(spec.window_radius) << "\n";
    out << "\n[policy]\n";
    out << "tail_mass_eps = " << fmt_double(spec.policy.tail_mass_eps) << "\n";
    out << "max_terms = " << spec.policy.max_terms << "\n";
    out << "quad_rel_tol = " << fmt_double(spec.policy.quad_rel_tol) << "\n";
    out << "cf_tail_cut = " << fmt_double(spec.policy.cf_tail_cut) << "\n";
    out << "\n[analysis]\n";
    out << "z_moment_mode = " << spec.z_moment_mode << "\n";
    out << "match_mc_window = " << (spec.match_mc_window ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace cranjt
