#pragma once

namespace tcm {

inline constexpr const char* version() { return "0.1.0"; }

}  // namespace tcm
