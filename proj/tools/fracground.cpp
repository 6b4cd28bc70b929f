// fracground — pseudo-spectral ground states of (-Delta)^s u = g(u) with
// critical growth, plus numerical certification of the variational
// identities the solutions satisfy.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "fracground/commands.hpp"
#include "fracground/version.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string snapshot_path;
    std::string out_dir;
    long long seed = -1;
};

fracground::RunConfig load_with_overrides(const CommonOpts& opts, bool config_required) {
    fracground::RunConfig cfg;
    if (!opts.config_path.empty()) {
        cfg = fracground::load_config(opts.config_path);
    } else if (config_required) {
        throw fracground::IoError("missing --config FILE");
    }
    if (!opts.out_dir.empty()) cfg.outputs.directory = opts.out_dir;
    if (opts.seed >= 0) {
        cfg.seed = static_cast<std::uint64_t>(opts.seed);
        cfg.solver.random_seed = cfg.seed;
    }
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_snapshot) {
    cmd->add_option("--config", opts.config_path, "run configuration file");
    if (with_snapshot)
        cmd->add_option("--snapshot", opts.snapshot_path, "binary field snapshot (.frgd)");
    cmd->add_option("--out", opts.out_dir, "output directory (overrides outputs.directory)");
    cmd->add_option("--seed", opts.seed, "random seed (overrides seed)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracground: fractional ground states and their variational certificates"};
    app.set_version_flag("--version", std::string("fracground ") + fracground::kVersion);
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* solve = app.add_subcommand("solve", "compute the constrained minimizer and omega");
    add_common(solve, opts, false);
    CLI::App* verify = app.add_subcommand("verify", "check identities on a stored field");
    add_common(verify, opts, true);
    CLI::App* scan = app.add_subcommand("bubble-scan", "sweep the Sobolev bubble family");
    add_common(scan, opts, false);
    CLI::App* path = app.add_subcommand("path", "mountain-pass path profile through a field");
    add_common(path, opts, true);
    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in consistency suite");
    add_common(selftest, opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : fracground::kExitUsage;
    }

    try {
        if (solve->parsed())
            return fracground::cmd_solve(load_with_overrides(opts, true), std::cout);
        if (verify->parsed()) {
            if (opts.snapshot_path.empty()) throw fracground::IoError("missing --snapshot FILE");
            return fracground::cmd_verify(load_with_overrides(opts, true), opts.snapshot_path,
                                          std::cout);
        }
        if (scan->parsed())
            return fracground::cmd_bubble_scan(load_with_overrides(opts, true), std::cout);
        if (path->parsed()) {
            if (opts.snapshot_path.empty()) throw fracground::IoError("missing --snapshot FILE");
            return fracground::cmd_path(load_with_overrides(opts, true), opts.snapshot_path,
                                        std::cout);
        }
        if (selftest->parsed()) return fracground::cmd_selftest(std::cout);
    } catch (const fracground::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fracground::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return fracground::kExitUsage;
    }
    return fracground::kExitUsage;
}
