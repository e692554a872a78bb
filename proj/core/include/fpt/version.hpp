#ifndef FPT_VERSION_HPP
#define FPT_VERSION_HPP

namespace fpt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fpt

#endif  // FPT_VERSION_HPP
