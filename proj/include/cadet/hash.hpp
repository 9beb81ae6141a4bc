#pragma once

#include <cstdint>
#include <string_view>

namespace cadet {

/// 64-bit FNV-1a over a byte string; used to fingerprint canonical config
/// serializations in manifests and stack sidecars.
constexpr std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (char c : bytes) {
    hash ^= static_cast<std::uint8_t>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

}  // namespace cadet
