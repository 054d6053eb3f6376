#include "nbz/bitstream.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "nbz/error.hpp"

namespace nbz {

namespace {

inline std::uint64_t low_bits(std::uint64_t v, unsigned n) noexcept {
  return n >= 64 ? v : v & ((std::uint64_t{1} << n) - 1);
}

}  // namespace

void BitWriter::write_wide(std::uint64_t value, unsigned nbits) {
  write(value >> 32, nbits - 32);
  write(value & 0xffffffffu, 32);
}

void BitWriter::flush_word() {
  acc_bits_ -= 32;
  const auto word = static_cast<std::uint32_t>(acc_ >> acc_bits_);
  bytes_.push_back(static_cast<std::uint8_t>(word >> 24));
  bytes_.push_back(static_cast<std::uint8_t>(word >> 16));
  bytes_.push_back(static_cast<std::uint8_t>(word >> 8));
  bytes_.push_back(static_cast<std::uint8_t>(word));
  acc_ = low_bits(acc_, acc_bits_);
}

BitStream BitWriter::finish() {
  while (acc_bits_ >= 8) {
    acc_bits_ -= 8;
    bytes_.push_back(static_cast<std::uint8_t>(acc_ >> acc_bits_));
  }
  if (acc_bits_ > 0) bytes_.push_back(static_cast<std::uint8_t>(acc_ << (8 - acc_bits_)));
  BitStream s{std::move(bytes_), bits_};
  bytes_.clear();
  acc_ = 0;
  acc_bits_ = 0;
  bits_ = 0;
  return s;
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_length)
    : bytes_(bytes), size_(bit_length) {
  if (bit_length > 8 * static_cast<std::uint64_t>(bytes.size())) {
    throw Error(Errc::corrupt, "bit length " + std::to_string(bit_length) + " exceeds buffer of " +
                                   std::to_string(bytes.size()) + " bytes");
  }
}

std::uint64_t BitReader::peek(unsigned nbits) const noexcept {
  if (nbits == 0) return 0;
  const std::uint64_t byte = pos_ >> 3;
  const unsigned shift = static_cast<unsigned>(pos_ & 7);
  std::uint64_t word = 0;
  if (byte + 8 <= bytes_.size()) {
    std::memcpy(&word, bytes_.data() + byte, 8);
    if constexpr (std::endian::native == std::endian::little) word = __builtin_bswap64(word);
    return (word << shift) >> (64 - nbits);
  }
  for (unsigned k = 0; k < 8; ++k) {
    const std::uint64_t at = byte + k;
    word = (word << 8) | (at < bytes_.size() ? bytes_[at] : 0u);
  }
  return (word << shift) >> (64 - nbits);
}

std::uint64_t BitReader::read(unsigned nbits) {
  if (nbits > remaining()) {
    throw Error(Errc::corrupt, "bitstream truncated at bit " + std::to_string(pos_) + " (wanted " +
                                   std::to_string(nbits) + " more bits)");
  }
  if (nbits > 57) {
    const std::uint64_t hi = read(nbits - 32);
    return (hi << 32) | read(32);
  }
  const std::uint64_t v = peek(nbits);
  pos_ += nbits;
  return v;
}

void BitReader::skip(unsigned nbits) {
  if (nbits > remaining()) {
    throw Error(Errc::corrupt, "bitstream truncated at bit " + std::to_string(pos_));
  }
  pos_ += nbits;
}

}  // namespace nbz
