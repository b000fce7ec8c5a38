#include "hs/config.hpp"

#include <fstream>
#include <sstream>

namespace hs {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'", line);
    }
}

int parse_int(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + v + "'", line);
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("expected a boolean, got '" + v + "'", line);
}

std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty list entry", line);
        out.push_back(parse_double(item, line));
    }
    if (out.empty()) throw ConfigError("empty list", line);
    return out;
}

FieldSpec::Kind field_kind(const std::string& v, int line) {
    if (v == "zero") return FieldSpec::Kind::Zero;
    if (v == "sine") return FieldSpec::Kind::Sine;
    if (v == "gaussian") return FieldSpec::Kind::Gaussian;
    throw ConfigError("unknown field family '" + v + "'", line);
}

HistorySpec::Kind history_kind(const std::string& v, int line) {
    if (v == "zero") return HistorySpec::Kind::Zero;
    if (v == "constant") return HistorySpec::Kind::Constant;
    if (v == "linear") return HistorySpec::Kind::Linear;
    if (v == "sine") return HistorySpec::Kind::Sine;
    throw ConfigError("unknown history family '" + v + "'", line);
}

}  // namespace

SolverOptions RunConfig::solver_options() const {
    SolverOptions o;
    o.delay_cells = m;
    o.theta = theta;
    o.snapshot_stride = snapshot_stride;
    o.picard_tol = picard_tol;
    o.picard_maxiter = picard_maxiter;
    o.mu1 = mu1;
    o.mu2 = mu2;
    return o;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key", lineno);
        if (val.empty()) throw ConfigError("missing value for '" + key + "'", lineno);

        if (key == "alpha") c.alpha = parse_double(val, lineno);
        else if (key == "beta") c.beta = parse_double(val, lineno);
        else if (key == "L") c.length = parse_double(val, lineno);
        else if (key == "h") c.delay = parse_double(val, lineno);
        else if (key == "N") c.n = parse_int(val, lineno);
        else if (key == "M") c.m = parse_int(val, lineno);
        else if (key == "theta") c.theta = parse_double(val, lineno);
        else if (key == "mode") {
            if (val != "linear" && val != "nonlinear" && val != "picard")
                throw ConfigError("mode must be linear, nonlinear or picard", lineno);
            c.mode = val;
        }
        else if (key == "T") c.horizon = parse_double(val, lineno);
        else if (key == "snapshot_stride") c.snapshot_stride = parse_int(val, lineno);
        else if (key == "picard_tol") c.picard_tol = parse_double(val, lineno);
        else if (key == "picard_maxiter") c.picard_maxiter = parse_int(val, lineno);
        else if (key == "mu1") c.mu1 = parse_double(val, lineno);
        else if (key == "mu2") c.mu2 = parse_double(val, lineno);
        else if (key == "r") c.r = parse_double(val, lineno);
        else if (key == "verdict") c.verdict = parse_bool(val, lineno);
        else if (key == "fit_window_start") c.fit_window_start = parse_double(val, lineno);
        else if (key == "fit_window_end") c.fit_window_end = parse_double(val, lineno);
        else if (key == "u0_family") c.u0.kind = field_kind(val, lineno);
        else if (key == "u0_coeffs") c.u0.coeffs = parse_list(val, lineno);
        else if (key == "u0_amplitude") c.u0.amplitude = parse_double(val, lineno);
        else if (key == "u0_center") c.u0.center = parse_double(val, lineno);
        else if (key == "u0_width") c.u0.width = parse_double(val, lineno);
        else if (key == "v0_family") c.v0.kind = field_kind(val, lineno);
        else if (key == "v0_coeffs") c.v0.coeffs = parse_list(val, lineno);
        else if (key == "v0_amplitude") c.v0.amplitude = parse_double(val, lineno);
        else if (key == "v0_center") c.v0.center = parse_double(val, lineno);
        else if (key == "v0_width") c.v0.width = parse_double(val, lineno);
        else if (key == "z0_family") c.z0.kind = history_kind(val, lineno);
        else if (key == "z0_value") c.z0.value = parse_double(val, lineno);
        else if (key == "z0_from") c.z0.from = parse_double(val, lineno);
        else if (key == "z0_to") c.z0.to = parse_double(val, lineno);
        else if (key == "z0_amplitude") c.z0.amplitude = parse_double(val, lineno);
        else if (key == "z0_cycles") c.z0.cycles = parse_double(val, lineno);
        else if (key == "normalize_h_norm") c.normalize_h_norm = parse_double(val, lineno);
        else if (key == "alpha_min") c.alpha_min = parse_double(val, lineno);
        else if (key == "alpha_max") c.alpha_max = parse_double(val, lineno);
        else if (key == "alpha_steps") c.alpha_steps = parse_int(val, lineno);
        else if (key == "beta_min") c.beta_min = parse_double(val, lineno);
        else if (key == "beta_max") c.beta_max = parse_double(val, lineno);
        else if (key == "beta_steps") c.beta_steps = parse_int(val, lineno);
        else if (key == "sweep_simulate") c.sweep_simulate = parse_bool(val, lineno);
        else if (key == "sweep_spectrum") c.sweep_spectrum = parse_bool(val, lineno);
        else if (key == "samples") c.samples = parse_int(val, lineno);
        else if (key == "obs_T") c.obs_horizon = parse_double(val, lineno);
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(std::stoull(val));
        else if (key == "energy_csv") c.energy_csv = val;
        else if (key == "trace_csv") c.trace_csv = val;
        else if (key == "sweep_csv") c.sweep_csv = val;
        else if (key == "obs_csv") c.obs_csv = val;
        else throw ConfigError("unknown key '" + key + "'", lineno);
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace hs
