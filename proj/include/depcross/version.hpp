#ifndef DEPCROSS_VERSION_HPP
#define DEPCROSS_VERSION_HPP

namespace depcross {

inline constexpr const char* kToolName = "depcross";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace depcross

#endif  // DEPCROSS_VERSION_HPP
