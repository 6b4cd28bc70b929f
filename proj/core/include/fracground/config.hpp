#ifndef FRACGROUND_CONFIG_HPP
#define FRACGROUND_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fracground/nonlinearity.hpp"
#include "fracground/solver.hpp"

namespace fracground {

struct GridSpec {
    int dim = 2;
    int n = 128;
    double L = 12.0;
};

struct PathSpec {
    double t_max = 0.0;  // 0 = auto: 1.5 (N/(N-2s))^(1/(2s))
    int samples = 101;
};

struct VerifyThresholds {
    double max_el_residual = 1e-2;
    double max_pohozaev_residual = 1e-2;
    double max_h_residual = 1e-2;  // |H| relative to s[u]^2
};

struct OutputSpec {
    std::string directory = "out";
    std::vector<std::string> formats = {"json", "csv", "snapshot"};
};

struct RunConfig {
    ProblemParams problem;
    GridSpec grid;
    SolverConfig solver;
    std::vector<double> scan_eps = {0.8, 0.4, 0.2, 0.1};
    PathSpec path;
    VerifyThresholds verify;
    OutputSpec outputs;
    std::uint64_t seed = 42;

    /** Raw key/value pairs as parsed, for the report echo. */
    std::map<std::string, std::string> raw;
};

/** Parse the flat key-value format (dotted section names, '#' comments):
 *
 *   problem.s = 0.5
 *   grid.n = 128
 *   scan.eps_list = 0.8, 0.4, 0.2, 0.1
 *
 * Unknown keys and malformed lines raise ParameterError with the line number.
 */
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

/** Load and parse a config file; IoError if unreadable. */
RunConfig load_config(const std::string& path);

} // namespace fracground

#endif
