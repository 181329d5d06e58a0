#include "dspace/hash.hpp"

namespace dspace {

std::string to_hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

std::string digest(std::string_view bytes) { return to_hex64(fnv1a64(bytes)); }

}  // namespace dspace
