#pragma once

namespace fluxatom {

inline constexpr const char* version = "0.1.0";

}  // namespace fluxatom
