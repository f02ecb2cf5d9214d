#pragma once

namespace mcmod {
inline constexpr const char* kVersion = "0.1.0";
}
