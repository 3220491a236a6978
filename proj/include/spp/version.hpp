#pragma once

namespace spp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace spp
