#ifndef FRACGROUND_VERSION_HPP
#define FRACGROUND_VERSION_HPP

namespace fracground {

inline constexpr const char* kVersion = "0.1.0";

} // namespace fracground

#endif
