#pragma once

namespace qps {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qps
