#pragma once

namespace itm {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace itm
