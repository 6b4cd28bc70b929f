#include "fracground/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "fracground/fourier.hpp"
#include "fracground/version.hpp"

namespace fracground {

nlohmann::json make_report_header(const RunConfig& cfg, const std::string& command) {
    nlohmann::json report;
    report["artifact"] = "fracground";
    report["version"] = kVersion;
    report["command"] = command;
    report["config"] = cfg.raw;

    // Calibration grid: small enough for the direct double sum in any dim.
    const int cal_n = cfg.grid.dim == 3 ? 16 : 64;
    Grid cal_grid = make_grid(cfg.grid.dim, cal_n, std::min(cfg.grid.L, 12.0));
    NormalizationCalibration cal = calibrate_normalization(cfg.grid.dim, cfg.problem.s, cal_grid);

    nlohmann::json conv;
    conv["seminorm"] = "[u]^2 = (h^N/n^N) * sum_k |xi_k|^{2s} |FFT(u)_k|^2, xi = pi*k/L";
    conv["operator"] = "(-Delta)^s = Fourier multiplier |xi|^{2s}, zero at xi = 0";
    conv["note"] = "all energies and identities use the spectral convention; c_ratio links it "
                   "to the direct Gagliardo double integral on a reference Gaussian";
    conv["c_ratio"] = cal.c_ratio;
    conv["c_ratio_grid"] = {{"dim", cal_grid.dim}, {"n", cal_grid.n}, {"L", cal_grid.half_length}};
    if (cfg.problem.q < 2.0 + std::max(0.0, 1.0 - 2.0 * cfg.problem.s))
        conv["smoothness_caveat"] =
            "model |t|^{q-2}t is below C^{1,beta} regularity near 0 for this q; only the "
            "exponent window is validated";
    report["convention"] = conv;
    return report;
}

void attach_timing(nlohmann::json& report, double elapsed_seconds) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", elapsed_seconds);
    report["timing"] = {{"elapsed_seconds", std::string(buf)},
                        {"note", "string-valued; excluded from the determinism contract"}};
}

void write_report(const nlohmann::json& report, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write report: " + path);
    out << report.dump(2) << "\n";
    if (!out) throw IoError("report write failed: " + path);
}

} // namespace fracground
