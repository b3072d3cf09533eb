// sha256.hpp
// Minimal SHA-256 (FIPS 180-4) for content-addressing artifact files.

#pragma once

#include <cstdint>
#include <string>

namespace kagome {

std::string sha256_hex(const void* data, std::size_t len);
inline std::string sha256_hex(const std::string& s) { return sha256_hex(s.data(), s.size()); }

}  // namespace kagome
