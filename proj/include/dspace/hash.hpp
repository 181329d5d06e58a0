#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace dspace {

constexpr std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string to_hex64(std::uint64_t v);

// Stable digest of opaque content bytes; the engine never interprets the
// bytes themselves.
std::string digest(std::string_view bytes);

}  // namespace dspace
