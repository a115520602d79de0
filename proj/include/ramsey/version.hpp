#pragma once

namespace ramsey {

// Bumping this invalidates cached search records: the cache key includes it.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace ramsey
