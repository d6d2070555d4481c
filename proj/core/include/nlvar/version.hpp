#pragma once

namespace nlvar {

inline constexpr const char* version = "0.1.0";

}  // namespace nlvar
