#include "fracground/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fracground {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    std::ostringstream msg;
    msg << origin << ":" << line << ": " << what;
    throw ParameterError(msg.str());
}

double to_double(const std::string& origin, int line, const std::string& key,
                 const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& origin, int line, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': expected an integer, got '" + v + "'");
    }
}

std::vector<double> to_list(const std::string& origin, int line, const std::string& key,
                            const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(origin, line, "key '" + key + "': empty list element");
        out.push_back(to_double(origin, line, key, item));
    }
    if (out.empty()) fail(origin, line, "key '" + key + "': empty list");
    return out;
}

std::vector<std::string> split_csv(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw_line;
    int line = 0;
    while (std::getline(in, raw_line)) {
        ++line;
        std::string stripped = raw_line;
        const auto hash = stripped.find('#');
        if (hash != std::string::npos) stripped = stripped.substr(0, hash);
        stripped = trim(stripped);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) fail(origin, line, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail(origin, line, "empty key");
        if (value.empty()) fail(origin, line, "key '" + key + "': empty value");
        cfg.raw[key] = value;

        if (key == "problem.s") cfg.problem.s = to_double(origin, line, key, value);
        else if (key == "problem.N") cfg.problem.N = static_cast<int>(to_long(origin, line, key, value));
        else if (key == "problem.a") cfg.problem.a = to_double(origin, line, key, value);
        else if (key == "problem.b") cfg.problem.b = to_double(origin, line, key, value);
        else if (key == "problem.C") cfg.problem.C = to_double(origin, line, key, value);
        else if (key == "problem.q") cfg.problem.q = to_double(origin, line, key, value);
        else if (key == "grid.dim") cfg.grid.dim = static_cast<int>(to_long(origin, line, key, value));
        else if (key == "grid.n") cfg.grid.n = static_cast<int>(to_long(origin, line, key, value));
        else if (key == "grid.L") cfg.grid.L = to_double(origin, line, key, value);
        else if (key == "solver.max_iterations")
            cfg.solver.max_iterations = static_cast<int>(to_long(origin, line, key, value));
        else if (key == "solver.gradient_tolerance")
            cfg.solver.gradient_tolerance = to_double(origin, line, key, value);
        else if (key == "solver.initial_step")
            cfg.solver.step.initial_step = to_double(origin, line, key, value);
        else if (key == "solver.step_shrink")
            cfg.solver.step.shrink = to_double(origin, line, key, value);
        else if (key == "solver.step_growth")
            cfg.solver.step.growth = to_double(origin, line, key, value);
        else if (key == "solver.sufficient_decrease")
            cfg.solver.step.sufficient_decrease = to_double(origin, line, key, value);
        else if (key == "solver.rearrangement_period")
            cfg.solver.rearrangement_period = static_cast<int>(to_long(origin, line, key, value));
        else if (key == "solver.projection_period")
            cfg.solver.projection_period = static_cast<int>(to_long(origin, line, key, value));
        else if (key == "solver.residual_check_period")
            cfg.solver.residual_check_period = static_cast<int>(to_long(origin, line, key, value));
        else if (key == "solver.initial_guess") {
            if (value == "gaussian") cfg.solver.initial_guess = InitialGuess::Gaussian;
            else if (value == "bubble") cfg.solver.initial_guess = InitialGuess::Bubble;
            else if (value == "snapshot") cfg.solver.initial_guess = InitialGuess::SnapshotFile;
            else fail(origin, line, "key '" + key + "': expected gaussian|bubble|snapshot");
        }
        else if (key == "solver.gaussian_width")
            cfg.solver.gaussian_width = to_double(origin, line, key, value);
        else if (key == "solver.bubble_eps")
            cfg.solver.bubble_eps = to_double(origin, line, key, value);
        else if (key == "solver.snapshot") cfg.solver.snapshot_path = value;
        else if (key == "solver.multistart")
            cfg.solver.multistart = static_cast<int>(to_long(origin, line, key, value));
        else if (key == "scan.eps_list") cfg.scan_eps = to_list(origin, line, key, value);
        else if (key == "path.t_max") cfg.path.t_max = to_double(origin, line, key, value);
        else if (key == "path.samples")
            cfg.path.samples = static_cast<int>(to_long(origin, line, key, value));
        else if (key == "verify.max_el_residual")
            cfg.verify.max_el_residual = to_double(origin, line, key, value);
        else if (key == "verify.max_pohozaev_residual")
            cfg.verify.max_pohozaev_residual = to_double(origin, line, key, value);
        else if (key == "verify.max_h_residual")
            cfg.verify.max_h_residual = to_double(origin, line, key, value);
        else if (key == "outputs.directory") cfg.outputs.directory = value;
        else if (key == "outputs.formats") cfg.outputs.formats = split_csv(value);
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(to_long(origin, line, key, value));
        else
            fail(origin, line, "unknown key '" + key + "'");
    }
    cfg.solver.random_seed = cfg.seed;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

} // namespace fracground
