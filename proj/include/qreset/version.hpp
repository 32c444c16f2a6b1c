#pragma once

namespace qreset {

inline constexpr const char* version = "0.1.0";

} // namespace qreset
