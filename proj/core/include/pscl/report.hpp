#pragma once

#include <string>

namespace pscl {

/// Library/tool version embedded in every report.
std::string tool_version();

/// 64-bit FNV-1a digest as a 16-hex-digit string.
std::string fnv1a_hex(const std::string& data);

/// FNV-1a digest of a file's bytes; throws std::runtime_error if unreadable.
std::string file_hash(const std::string& path);

/// Round through a fixed 12-significant-digit decimal representation so
/// that serialized floats are stable across reruns and platforms.
double fixed12(double v);

}  // namespace pscl
