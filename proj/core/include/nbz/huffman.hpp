#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nbz/bitstream.hpp"

namespace nbz {

/// Canonical Huffman code. Only code lengths are stored; codes are assigned
/// in (length, symbol) order, so the lengths alone reproduce the table.
class HuffmanTable {
 public:
  struct Entry {
    std::uint32_t symbol;
    std::uint8_t length;
    std::uint64_t code;  // right-aligned, `length` bits

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  HuffmanTable() = default;

  /// Builds the canonical table from (symbol, length) pairs. Throws
  /// Errc::corrupt on duplicate symbols, zero/oversized lengths, or a
  /// length set violating the Kraft inequality.
  static HuffmanTable from_lengths(std::vector<std::pair<std::uint32_t, std::uint8_t>> lengths);

  /// Entries sorted by symbol.
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Code length of `symbol`, 0 when absent.
  std::uint8_t length_of(std::uint32_t symbol) const noexcept;
  std::uint8_t max_length() const noexcept { return max_length_; }

  void serialize(std::vector<std::uint8_t>& out) const;
  static HuffmanTable deserialize(std::span<const std::uint8_t> in, std::size_t& offset);

  friend bool operator==(const HuffmanTable& a, const HuffmanTable& b) {
    return a.entries_ == b.entries_;
  }

 private:
  friend class HuffmanEncoder;
  friend class HuffmanDecoder;

  std::vector<Entry> entries_;
  std::uint8_t max_length_ = 0;
};

inline constexpr unsigned kMaxHuffmanCodeLength = 57;

/// Optimal prefix code for a dense histogram (`counts[s]` = frequency of
/// symbol s). Zero-count symbols are omitted; a single present symbol gets
/// a 1-bit code. Throws Errc::invalid_argument when every count is zero.
HuffmanTable huffman_build(std::span<const std::uint64_t> counts);

/// Sum of count * code length, in bits.
std::uint64_t huffman_encoded_bits(const HuffmanTable& table, std::span<const std::uint64_t> counts);

void huffman_encode(std::span<const std::uint32_t> symbols, const HuffmanTable& table, BitWriter& out);
BitStream huffman_encode(std::span<const std::uint32_t> symbols, const HuffmanTable& table);

/// Decodes exactly `n` symbols; throws Errc::corrupt on truncation or an
/// invalid code.
std::vector<std::uint32_t> huffman_decode(BitReader& in, const HuffmanTable& table, std::size_t n);
std::vector<std::uint32_t> huffman_decode(const BitStream& stream, const HuffmanTable& table, std::size_t n);

}  // namespace nbz
