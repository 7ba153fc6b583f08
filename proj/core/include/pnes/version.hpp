#pragma once

namespace pnes {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace pnes
