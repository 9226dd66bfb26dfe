#pragma once

namespace hykg {

inline constexpr const char* kVersion = "hykg 1.0.0";

}  // namespace hykg
