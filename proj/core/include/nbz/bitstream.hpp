#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nbz {

/// Bits packed MSB-first within each octet; the final octet is zero-padded.
struct BitStream {
  std::vector<std::uint8_t> bytes;
  std::uint64_t bit_length = 0;

  friend bool operator==(const BitStream&, const BitStream&) = default;
};

class BitWriter {
 public:
  /// Appends the low `nbits` bits of `value`, most significant first. nbits <= 64.
  void write(std::uint64_t value, unsigned nbits) {
    if (nbits > 32) {
      write_wide(value, nbits);
      return;
    }
    acc_ = (acc_ << nbits) | (value & ((std::uint64_t{1} << nbits) - 1));
    acc_bits_ += nbits;
    bits_ += nbits;
    if (acc_bits_ >= 32) flush_word();
  }
  void write_bit(bool bit) { write(bit ? 1u : 0u, 1); }
  void reserve_bits(std::uint64_t nbits) { bytes_.reserve(static_cast<std::size_t>((bits_ + nbits + 7) / 8 + 4)); }

  std::uint64_t bit_length() const noexcept { return bits_; }

  /// Flushes the accumulator and hands the buffer over. The writer is left empty.
  BitStream finish();

 private:
  void write_wide(std::uint64_t value, unsigned nbits);
  void flush_word();

  std::vector<std::uint8_t> bytes_;
  std::uint64_t acc_ = 0;   // pending bits, right-aligned
  unsigned acc_bits_ = 0;   // < 32 after every write
  std::uint64_t bits_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_length);
  explicit BitReader(const BitStream& s) : BitReader(s.bytes, s.bit_length) {}

  /// Reads `nbits` (<= 64) bits. Throws Errc::corrupt past the end.
  std::uint64_t read(unsigned nbits);
  bool read_bit() { return read(1) != 0; }

  /// Next `nbits` (<= 57) bits without consuming; zero-filled past the end.
  std::uint64_t peek(unsigned nbits) const noexcept;
  void skip(unsigned nbits);

  std::uint64_t position() const noexcept { return pos_; }
  std::uint64_t remaining() const noexcept { return size_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t size_;
  std::uint64_t pos_ = 0;
};

}  // namespace nbz
