#pragma once

namespace ukepler {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ukepler
