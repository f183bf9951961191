#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace feeder {

/// 32-byte SHA-256 digest.
struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  std::string hex() const;
  static Digest from_hex(std::string_view hex);

  auto operator<=>(const Digest&) const = default;
};

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view text);

/// Incremental SHA-256. Length-prefixed fields keep concatenations unambiguous.
class Hasher {
 public:
  Hasher();
  ~Hasher();
  Hasher(const Hasher&) = delete;
  Hasher& operator=(const Hasher&) = delete;

  Hasher& update(std::span<const std::uint8_t> data);
  Hasher& update(std::string_view text);
  Hasher& field(std::string_view text);  // 8-byte little-endian length + bytes
  Hasher& field(const Digest& digest);
  Hasher& field(std::uint64_t value);
  Digest finish();

 private:
  void* ctx_;
};

}  // namespace feeder
