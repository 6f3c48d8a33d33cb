#pragma once

namespace wearopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wearopt
