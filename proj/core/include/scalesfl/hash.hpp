#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace scalesfl {

/// 32-byte SHA-256 digest; canonical text form is lowercase hex.
struct ContentHash {
  std::array<std::uint8_t, 32> bytes{};

  std::string hex() const;
  static ContentHash from_hex(const std::string& hex);
  static ContentHash zero() { return ContentHash{}; }

  bool is_zero() const;
  auto operator<=>(const ContentHash&) const = default;
};

ContentHash sha256(std::span<const std::uint8_t> data);
inline ContentHash sha256(const std::vector<std::uint8_t>& data) {
  return sha256(std::span<const std::uint8_t>(data));
}
ContentHash sha256(const std::string& data);

}  // namespace scalesfl
