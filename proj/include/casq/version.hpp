#pragma once

namespace casq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace casq
