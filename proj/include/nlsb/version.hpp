#pragma once

namespace nlsb {
inline constexpr const char* version = "1.0.0";
}
