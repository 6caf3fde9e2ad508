#pragma once

namespace fqnmr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fqnmr
