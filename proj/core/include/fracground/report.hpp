#ifndef FRACGROUND_REPORT_HPP
#define FRACGROUND_REPORT_HPP

#include <json.hpp>

#include <string>

#include "fracground/config.hpp"

namespace fracground {

/** Report skeleton shared by every command: config echo, the normalization
 * convention statement with the measured c_ratio, and the artifact version.
 * Wall-clock timing is attached as a string so that all numeric fields stay
 * bit-reproducible for a fixed config and seed.
 */
nlohmann::json make_report_header(const RunConfig& cfg, const std::string& command);

void attach_timing(nlohmann::json& report, double elapsed_seconds);

void write_report(const nlohmann::json& report, const std::string& path);

} // namespace fracground

#endif
