#pragma once

namespace rieszlab {
inline constexpr const char* kVersion = "0.1.0";
}
