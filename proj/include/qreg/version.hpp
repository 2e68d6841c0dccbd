#pragma once

namespace qreg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qreg
