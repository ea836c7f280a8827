#pragma once

namespace entrimur {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace entrimur
