#pragma once

namespace qcdet {
inline constexpr const char* version = "0.1.0";
}
