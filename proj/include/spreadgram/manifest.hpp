#pragma once

#include <string>

namespace spreadgram {

inline constexpr const char* kVersion = "0.1.0";

// Content digest of a file, "fnv1a64:" + 16 hex digits. Cheap and stable;
// manifests use it to pin run inputs.
std::string file_digest(const std::string& path);

}  // namespace spreadgram
