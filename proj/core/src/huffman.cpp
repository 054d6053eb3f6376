#include "nbz/huffman.hpp"

#include <algorithm>
#include <string>

#include "bytes.hpp"
#include "nbz/error.hpp"

namespace nbz {

HuffmanTable HuffmanTable::from_lengths(std::vector<std::pair<std::uint32_t, std::uint8_t>> lengths) {
  std::sort(lengths.begin(), lengths.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });

  HuffmanTable t;
  t.entries_.reserve(lengths.size());
  std::uint64_t code = 0;
  std::uint64_t kraft = 0;  // sum of 2^(57 - len)
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const auto [symbol, len] = lengths[i];
    if (len == 0 || len > kMaxHuffmanCodeLength) {
      throw Error(Errc::corrupt, "invalid Huffman code length " + std::to_string(len));
    }
    if (i > 0) code = (code + 1) << (len - lengths[i - 1].second);
    kraft += std::uint64_t{1} << (kMaxHuffmanCodeLength - len);
    if (kraft > (std::uint64_t{1} << kMaxHuffmanCodeLength)) {
      throw Error(Errc::corrupt, "Huffman code lengths violate the Kraft inequality");
    }
    t.entries_.push_back({symbol, len, code});
    t.max_length_ = std::max(t.max_length_, len);
  }
  std::sort(t.entries_.begin(), t.entries_.end(),
            [](const Entry& a, const Entry& b) { return a.symbol < b.symbol; });
  for (std::size_t i = 1; i < t.entries_.size(); ++i) {
    if (t.entries_[i].symbol == t.entries_[i - 1].symbol) {
      throw Error(Errc::corrupt, "duplicate Huffman symbol " + std::to_string(t.entries_[i].symbol));
    }
  }
  return t;
}

std::uint8_t HuffmanTable::length_of(std::uint32_t symbol) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), symbol,
                             [](const Entry& e, std::uint32_t s) { return e.symbol < s; });
  return it != entries_.end() && it->symbol == symbol ? it->length : 0;
}

void HuffmanTable::serialize(std::vector<std::uint8_t>& out) const {
  detail::put_le(out, static_cast<std::uint32_t>(entries_.size()));
  std::uint32_t prev = 0;
  for (const Entry& e : entries_) {
    detail::put_varint(out, e.symbol - prev);
    prev = e.symbol;
  }
  for (const Entry& e : entries_) detail::put_u8(out, e.length);
}

HuffmanTable HuffmanTable::deserialize(std::span<const std::uint8_t> in, std::size_t& offset) {
  detail::ByteReader r(in, "Huffman table", offset);
  const auto count = r.le<std::uint32_t>();
  if (count > r.remaining()) r.fail("symbol count exceeds payload");
  std::vector<std::pair<std::uint32_t, std::uint8_t>> lengths(count);
  std::uint64_t symbol = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint64_t delta = r.varint();
    if (i > 0 && delta == 0) r.fail("symbols not strictly increasing");
    symbol += delta;
    if (symbol > 0xffffffffu) r.fail("symbol out of range");
    lengths[i].first = static_cast<std::uint32_t>(symbol);
  }
  for (auto& l : lengths) l.second = r.u8();
  offset = r.position();
  return from_lengths(std::move(lengths));
}

HuffmanTable huffman_build(std::span<const std::uint64_t> counts) {
  struct Leaf {
    std::uint64_t weight;
    std::uint32_t symbol;
  };
  std::vector<Leaf> leaves;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] > 0) leaves.push_back({counts[s], static_cast<std::uint32_t>(s)});
  }
  if (leaves.empty()) throw Error(Errc::invalid_argument, "Huffman build needs at least one symbol");
  if (leaves.size() == 1) return HuffmanTable::from_lengths({{leaves[0].symbol, 1}});

  std::sort(leaves.begin(), leaves.end(), [](const Leaf& a, const Leaf& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.symbol < b.symbol;
  });

  // Two-queue construction: leaves are pre-sorted and merged nodes are
  // produced in nondecreasing weight order, so both queues stay sorted.
  // Node ids: leaves [0, m), internal nodes [m, 2m-1).
  const std::size_t m = leaves.size();
  std::vector<std::uint64_t> weight(2 * m - 1);
  std::vector<std::size_t> parent(2 * m - 1, 0);
  for (std::size_t i = 0; i < m; ++i) weight[i] = leaves[i].weight;
  std::size_t next_leaf = 0, next_internal = m, created = m;
  auto pop_min = [&] {
    const bool take_leaf =
        next_leaf < m && (next_internal == created || weight[next_leaf] <= weight[next_internal]);
    return take_leaf ? next_leaf++ : next_internal++;
  };
  while (created < 2 * m - 1) {
    const std::size_t a = pop_min();
    const std::size_t b = pop_min();
    weight[created] = weight[a] + weight[b];
    parent[a] = parent[b] = created;
    ++created;
  }

  std::vector<unsigned> depth(2 * m - 1, 0);
  for (std::size_t i = 2 * m - 1; i-- > 0;) {
    if (i != 2 * m - 2) depth[i] = depth[parent[i]] + 1;
  }
  std::vector<std::pair<std::uint32_t, std::uint8_t>> lengths(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (depth[i] > kMaxHuffmanCodeLength) {
      throw Error(Errc::overflow, "Huffman code length exceeds " + std::to_string(kMaxHuffmanCodeLength));
    }
    lengths[i] = {leaves[i].symbol, static_cast<std::uint8_t>(depth[i])};
  }
  return HuffmanTable::from_lengths(std::move(lengths));
}

std::uint64_t huffman_encoded_bits(const HuffmanTable& table, std::span<const std::uint64_t> counts) {
  std::uint64_t bits = 0;
  for (const auto& e : table.entries()) {
    if (e.symbol < counts.size()) bits += counts[e.symbol] * e.length;
  }
  return bits;
}

void huffman_encode(std::span<const std::uint32_t> symbols, const HuffmanTable& table, BitWriter& out) {
  if (symbols.empty()) return;
  const std::uint32_t max_symbol = table.empty() ? 0 : table.entries().back().symbol;
  // code << 6 | length; 0 marks a symbol outside the table.
  std::vector<std::uint64_t> packed(std::size_t{max_symbol} + 1, 0);
  for (const auto& e : table.entries()) packed[e.symbol] = e.code << 6 | e.length;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const std::uint32_t s = symbols[i];
    const std::uint64_t p = s <= max_symbol ? packed[s] : 0;
    if (p == 0) {
      throw Error(Errc::invalid_argument,
                  "symbol " + std::to_string(s) + " at position " + std::to_string(i) + " not in Huffman table");
    }
    out.write(p >> 6, static_cast<unsigned>(p & 63));
  }
}

BitStream huffman_encode(std::span<const std::uint32_t> symbols, const HuffmanTable& table) {
  BitWriter w;
  huffman_encode(symbols, table, w);
  return w.finish();
}

std::vector<std::uint32_t> huffman_decode(BitReader& in, const HuffmanTable& table, std::size_t n) {
  std::vector<std::uint32_t> out;
  if (n == 0) return out;
  if (table.empty()) throw Error(Errc::corrupt, "empty Huffman table for nonempty stream");
  out.reserve(n);

  const unsigned max_len = table.max_length();
  // Canonical order and per-length bookkeeping for the long-code path.
  std::vector<HuffmanTable::Entry> canon(table.entries().begin(), table.entries().end());
  std::sort(canon.begin(), canon.end(), [](const auto& a, const auto& b) {
    return a.length != b.length ? a.length < b.length : a.symbol < b.symbol;
  });
  std::vector<std::uint64_t> first_code(max_len + 1, 0);
  std::vector<std::size_t> first_index(max_len + 1, 0), count(max_len + 1, 0);
  for (std::size_t i = canon.size(); i-- > 0;) {
    first_code[canon[i].length] = canon[i].code;
    first_index[canon[i].length] = i;
    ++count[canon[i].length];
  }

  // Direct lookup for codes up to `lookup_bits` long.
  const unsigned lookup_bits = std::min(max_len, 11u);
  struct Slot {
    std::uint32_t symbol = 0;
    std::uint8_t length = 0;
  };
  std::vector<Slot> lookup(std::size_t{1} << lookup_bits);
  for (const auto& e : canon) {
    if (e.length > lookup_bits) break;
    const unsigned pad = lookup_bits - e.length;
    const std::uint64_t base = e.code << pad;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << pad); ++k) lookup[base | k] = {e.symbol, e.length};
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Slot slot = lookup[in.peek(lookup_bits)];
    if (slot.length != 0 && slot.length <= in.remaining()) {
      in.skip(slot.length);
      out.push_back(slot.symbol);
      continue;
    }
    const std::uint64_t window = in.peek(max_len);
    bool found = false;
    for (unsigned len = lookup_bits + 1; len <= max_len; ++len) {
      if (count[len] == 0) continue;
      const std::uint64_t code = window >> (max_len - len);
      if (code >= first_code[len] && code - first_code[len] < count[len]) {
        if (len > in.remaining()) break;
        in.skip(len);
        out.push_back(canon[first_index[len] + (code - first_code[len])].symbol);
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(Errc::corrupt, "invalid or truncated Huffman code at symbol " + std::to_string(i) +
                                     ", bit " + std::to_string(in.position()));
    }
  }
  return out;
}

std::vector<std::uint32_t> huffman_decode(const BitStream& stream, const HuffmanTable& table, std::size_t n) {
  BitReader r(stream);
  return huffman_decode(r, table, n);
}

}  // namespace nbz
