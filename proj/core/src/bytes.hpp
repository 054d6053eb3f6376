#pragma once

// Little-endian byte buffer helpers shared by the stream and archive codecs.

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "nbz/error.hpp"

namespace nbz::detail {

inline void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  static_assert(std::is_unsigned_v<T>);
  for (unsigned k = 0; k < sizeof(T); ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

inline void put_f32(std::vector<std::uint8_t>& out, float v) { put_le(out, std::bit_cast<std::uint32_t>(v)); }
inline void put_f64(std::vector<std::uint8_t>& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
inline void put_i64(std::vector<std::uint8_t>& out, std::int64_t v) { put_le(out, static_cast<std::uint64_t>(v)); }

inline void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_bytes(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> bytes) {
  out.insert(out.end(), bytes.begin(), bytes.end());
}

/// Bounds-checked cursor; every overrun throws Errc::corrupt naming `what_`
/// and the byte offset.
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, std::string what, std::size_t offset = 0)
      : bytes_(bytes), what_(std::move(what)), pos_(offset) {}

  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::uint8_t u8() { return take(1)[0]; }

  template <typename T>
  T le() {
    auto s = take(sizeof(T));
    T v = 0;
    for (unsigned k = 0; k < sizeof(T); ++k) v |= static_cast<T>(static_cast<T>(s[k]) << (8 * k));
    return v;
  }

  float f32() { return std::bit_cast<float>(le<std::uint32_t>()); }
  double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }
  std::int64_t i64() { return static_cast<std::int64_t>(le<std::uint64_t>()); }

  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (unsigned shift = 0; shift < 64; shift += 7) {
      const std::uint8_t b = u8();
      v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if ((b & 0x80) == 0) return v;
    }
    fail("overlong varint");
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::corrupt, what_ + ": " + why + " at byte offset " + std::to_string(pos_));
  }

 private:
  void need(std::size_t n) const {
    if (n > remaining()) fail("truncated (need " + std::to_string(n) + " bytes)");
  }

  std::span<const std::uint8_t> bytes_;
  std::string what_;
  std::size_t pos_;
};

}  // namespace nbz::detail
