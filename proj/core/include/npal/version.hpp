#pragma once

namespace npal {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace npal
