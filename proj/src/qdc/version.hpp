#pragma once

namespace qdc {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qdc
