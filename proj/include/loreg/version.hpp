#pragma once

namespace loreg {
inline constexpr const char* kVersion = "0.1.0";
}
