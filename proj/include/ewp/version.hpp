#ifndef EWP_VERSION_HPP
#define EWP_VERSION_HPP

namespace ewp {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
