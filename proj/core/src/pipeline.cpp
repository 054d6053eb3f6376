#include "nbz/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bytes.hpp"
#include "nbz/bitstream.hpp"
#include "nbz/error.hpp"
#include "nbz/huffman.hpp"
#include "nbz/io.hpp"
#include "nbz/parallel.hpp"
#include "nbz/predict.hpp"
#include "nbz/vlc.hpp"

namespace nbz {

using detail::ByteReader;

namespace {

constexpr std::array<std::string_view, kModeCount> kModeNames = {"sz-lcf", "sz-lv", "sz-lv-prx",
                                                                 "sz-cpc2000", "cpc2000"};
constexpr std::array<std::string_view, 3> kVariantNames = {"coord", "vel", "coordvel"};

struct EscapeEntry {
  std::uint64_t position;
  float value;
};

// Rethrows decode failures with the stream they came from.
template <typename Fn>
auto in_stream(std::string_view name, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + " stream: " + e.what());
  }
}

std::string stream_name(std::uint8_t id) {
  return id == kCoordinateStreamId ? std::string("coordinate") : std::string(field_name(kAllFields[id]));
}

void put_bitstream(std::vector<std::uint8_t>& out, const BitStream& bits) {
  detail::put_le<std::uint64_t>(out, bits.bit_length);
  detail::put_bytes(out, bits.bytes);
}

BitReader take_bitstream(ByteReader& in) {
  const auto bit_length = in.le<std::uint64_t>();
  if (bit_length > 8 * static_cast<std::uint64_t>(in.remaining())) in.fail("bitstream longer than payload");
  const auto bytes = in.take(static_cast<std::size_t>((bit_length + 7) / 8));
  return BitReader(bytes, bit_length);
}

void put_escape_list(std::vector<std::uint8_t>& out, const std::vector<EscapeEntry>& escapes) {
  detail::put_le<std::uint64_t>(out, escapes.size());
  for (const auto& e : escapes) {
    detail::put_le<std::uint64_t>(out, e.position);
    detail::put_f32(out, e.value);
  }
}

void apply_escape_list(ByteReader& in, std::vector<float>& values) {
  const auto count = in.le<std::uint64_t>();
  if (count > values.size()) in.fail("escape count exceeds particle count");
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto pos = in.le<std::uint64_t>();
    if (pos >= values.size()) in.fail("escape position out of range");
    values[pos] = in.f32();
  }
}

std::vector<std::uint8_t> encode_sz_field(const QuantizedField& q) {
  const std::uint32_t top = *std::max_element(q.codes.begin(), q.codes.end());
  std::vector<std::uint64_t> counts(std::size_t{top} + 1);
  for (std::uint32_t c : q.codes) ++counts[c];
  const HuffmanTable table = huffman_build(counts);

  std::vector<std::uint8_t> out;
  detail::put_le<std::uint64_t>(out, q.escapes.size());
  table.serialize(out);
  BitWriter bits;
  bits.reserve_bits(huffman_encoded_bits(table, counts));
  huffman_encode(q.codes, table, bits);
  put_bitstream(out, bits.finish());
  for (float e : q.escapes) detail::put_f32(out, e);
  return out;
}

std::vector<float> decode_sz_field(std::span<const std::uint8_t> payload, PredictorKind predictor, double bound,
                                   std::uint32_t interval_count, std::size_t n) {
  ByteReader in(payload, "SZ stream");
  QuantizedField q;
  q.bound = bound;
  q.interval_count = interval_count;
  const auto escape_count = in.le<std::uint64_t>();
  if (escape_count > n) in.fail("escape count exceeds particle count");
  std::size_t offset = in.position();
  const HuffmanTable table = HuffmanTable::deserialize(payload, offset);
  in = ByteReader(payload, "SZ stream", offset);
  BitReader bits = take_bitstream(in);
  q.codes = huffman_decode(bits, table, n);
  q.escapes.resize(static_cast<std::size_t>(escape_count));
  for (float& e : q.escapes) e = in.f32();
  if (in.remaining() != 0) in.fail("trailing bytes");
  return reconstruct_field(q, predictor);
}

std::vector<std::uint8_t> encode_vlc_field(std::span<const std::int64_t> ints, std::span<const float> values,
                                           std::span<const std::size_t> escapes, std::size_t segment_size) {
  static const std::vector<VlcScheme> candidates = vlc_candidates(true);
  BitWriter bits;
  for (std::size_t begin = 0; begin < ints.size(); begin += segment_size) {
    const auto seg = ints.subspan(begin, std::min(segment_size, ints.size() - begin));
    const VlcScheme scheme = vlc_choose_scheme(seg, candidates);
    bits.write(scheme.id, 8);
    vlc_encode(seg, scheme, bits);
  }
  std::vector<std::uint8_t> out;
  put_bitstream(out, bits.finish());
  std::vector<EscapeEntry> list;
  for (std::size_t pos : escapes) list.push_back({pos, values[pos]});
  put_escape_list(out, list);
  return out;
}

std::vector<float> decode_vlc_field(std::span<const std::uint8_t> payload, double bound, std::size_t n,
                                    std::size_t segment_size) {
  ByteReader in(payload, "VLC stream");
  BitReader bits = take_bitstream(in);
  std::vector<float> values(n);
  for (std::size_t begin = 0; begin < n; begin += segment_size) {
    const std::size_t count = std::min(segment_size, n - begin);
    const VlcScheme scheme = vlc_scheme(static_cast<std::uint8_t>(bits.read(8)));
    const auto ints = vlc_decode(bits, scheme, count);
    for (std::size_t j = 0; j < count; ++j) values[begin + j] = integer_to_value(ints[j], bound);
  }
  apply_escape_list(in, values);
  if (in.remaining() != 0) in.fail("trailing bytes");
  return values;
}

// R-index coded coordinates. Per segment: unsigned scheme id (8 bits), the
// first key verbatim (3B bits), the adjacent key deltas, then the dropped
// low bits of every particle's three offsets. Three escape lists follow.
std::vector<std::uint8_t> encode_coordinates(const std::array<std::vector<std::int64_t>, 3>& ints,
                                             std::span<const RIndex> keys, std::span<const RIndexSegment> segments,
                                             const std::array<std::vector<EscapeEntry>, 3>& escapes) {
  static const std::vector<VlcScheme> candidates = vlc_candidates(false);
  BitWriter bits;
  std::vector<std::int64_t> deltas;
  for (const RIndexSegment& seg : segments) {
    const auto local = keys.subspan(seg.begin, seg.count);
    deltas.resize(seg.count - 1);
    for (std::size_t j = 1; j < seg.count; ++j) {
      deltas[j - 1] = static_cast<std::int64_t>(static_cast<std::uint64_t>(local[j] - local[j - 1]));
    }
    const VlcScheme scheme = vlc_choose_scheme(deltas, candidates);
    bits.write(scheme.id, 8);
    bits.write(static_cast<std::uint64_t>(local[0]), 3 * seg.bits_per_field);
    vlc_encode(deltas, scheme, bits);
    if (seg.dropped_bits > 0) {
      for (std::size_t i = seg.begin; i < seg.begin + seg.count; ++i) {
        for (std::size_t t = 0; t < 3; ++t) {
          bits.write(static_cast<std::uint64_t>(ints[t][i]) - static_cast<std::uint64_t>(seg.minima[t]),
                     seg.dropped_bits);
        }
      }
    }
  }
  std::vector<std::uint8_t> out;
  put_bitstream(out, bits.finish());
  for (const auto& list : escapes) put_escape_list(out, list);
  return out;
}

std::array<std::vector<float>, 3> decode_coordinates(std::span<const std::uint8_t> payload,
                                                     const ArchiveHeader& header) {
  ByteReader in(payload, "coordinate stream");
  BitReader bits = take_bitstream(in);
  const auto n = static_cast<std::size_t>(header.n);
  std::array<std::vector<float>, 3> values;
  for (auto& v : values) v.resize(n);

  std::array<std::uint64_t, 3> offsets{};
  std::vector<std::uint64_t> dropped;
  for (std::size_t s = 0; s < header.segments.size(); ++s) {
    const SegmentEntry& seg = header.segments[s];
    const std::size_t begin = s * header.segment_size;
    const std::size_t count = std::min<std::size_t>(header.segment_size, n - begin);
    const unsigned key_bits = 3u * seg.bits_per_field;
    const VlcScheme scheme = vlc_scheme(static_cast<std::uint8_t>(bits.read(8)));
    std::uint64_t key = bits.read(key_bits);
    const auto deltas = vlc_decode(bits, scheme, count - 1);
    dropped.assign(seg.dropped_bits > 0 ? 3 * count : 0, 0);
    for (auto& d : dropped) d = bits.read(seg.dropped_bits);

    for (std::size_t j = 0; j < count; ++j) {
      if (j > 0) {
        const auto d = static_cast<std::uint64_t>(deltas[j - 1]);
        if (deltas[j - 1] < 0 || d > (key_bits == 64 ? ~0ull : (1ull << key_bits) - 1) - key) {
          throw Error(Errc::corrupt, "coordinate key out of range in segment " + std::to_string(s));
        }
        key += d;
      }
      deinterleave(key, seg.bits_per_field, offsets);
      for (std::size_t t = 0; t < 3; ++t) {
        const FieldHeader& fh = header.fields[t];
        if (fh.encoding == FieldEncoding::Constant) {
          values[t][begin + j] = fh.constant;
          continue;
        }
        std::uint64_t off = offsets[t];
        if (seg.dropped_bits > 0) off = (off << seg.dropped_bits) | dropped[3 * j + t];
        const auto q = static_cast<std::int64_t>(static_cast<std::uint64_t>(seg.minima[t]) + off);
        values[t][begin + j] = integer_to_value(q, fh.bound);
      }
    }
  }
  if (bits.remaining() >= 8) throw Error(Errc::corrupt, "coordinate bitstream has trailing data");
  for (auto& v : values) apply_escape_list(in, v);
  if (in.remaining() != 0) in.fail("trailing bytes");
  return values;
}

void validate(const PipelineSettings& s) {
  check_interval_count(s.interval_count);
  if (s.segment_size == 0 || s.segment_size > 0xffffffffu) {
    throw Error(Errc::invalid_argument, "segment size must be in [1, 2^32)");
  }
  if (s.ignored_groups > 255) throw Error(Errc::invalid_argument, "ignored groups must be at most 255");
}

std::array<FieldHeader, kFieldCount> resolve_fields(const ParticleSnapshot& snapshot,
                                                    const PipelineSettings& settings) {
  std::array<FieldHeader, kFieldCount> out{};
  for (Field f : kAllFields) {
    FieldHeader& h = out[index_of(f)];
    const auto data = snapshot.field(f);
    if (data.empty()) {
      h.encoding = FieldEncoding::Constant;
      continue;
    }
    const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    if (*lo == *hi) {
      h.encoding = FieldEncoding::Constant;
      h.constant = *lo;
      continue;
    }
    try {
      h.bound = resolve_bound(settings.bounds[index_of(f)], data);
    } catch (const Error& e) {
      throw Error(e.code(), "field " + std::string(field_name(f)) + ": " + e.what());
    }
  }
  return out;
}

ArchiveStream make_stream(std::uint8_t id, std::vector<std::uint8_t> payload) {
  ArchiveStream s;
  s.id = id;
  s.crc = crc64(payload);
  s.payload = std::move(payload);
  return s;
}

}  // namespace

std::string_view mode_name(CompressionMode m) noexcept {
  const auto i = static_cast<std::size_t>(m);
  return i < kModeNames.size() ? kModeNames[i] : std::string_view("unknown");
}

std::optional<CompressionMode> parse_mode(std::string_view name) noexcept {
  for (CompressionMode m : kAllModes) {
    if (mode_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view variant_name(RIndexVariant v) noexcept {
  const auto i = static_cast<std::size_t>(v);
  return i < kVariantNames.size() ? kVariantNames[i] : std::string_view("unknown");
}

std::optional<RIndexVariant> parse_variant(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
    if (kVariantNames[i] == name) return static_cast<RIndexVariant>(i);
  }
  return std::nullopt;
}

const ArchiveStream* CompressedArchive::find_stream(std::uint8_t id) const noexcept {
  for (const auto& s : streams) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

CompressedArchive compress(const ParticleSnapshot& snapshot, const PipelineSettings& settings,
                           Permutation* permutation) {
  validate(settings);
  const std::size_t n = snapshot.size();
  const CompressionMode mode = settings.mode;
  const unsigned threads = std::max(1u, settings.threads);

  CompressedArchive archive;
  ArchiveHeader& h = archive.header;
  h.mode = mode;
  h.n = n;
  h.interval_count = settings.interval_count;
  h.fields = resolve_fields(snapshot, settings);
  if (mode_reorders(mode)) {
    h.segment_size = static_cast<std::uint32_t>(settings.segment_size);
    h.variant = mode == CompressionMode::SzLvPrx ? settings.variant : RIndexVariant::CoordinateBased;
    h.ignored_groups = mode == CompressionMode::SzLvPrx ? static_cast<std::uint8_t>(settings.ignored_groups) : 0;
  }

  std::array<double, kFieldCount> key_bounds{};
  for (std::size_t t = 0; t < kFieldCount; ++t) key_bounds[t] = h.fields[t].bound;

  const ParticleSnapshot* data = &snapshot;
  ParticleSnapshot reordered;
  Permutation perm;
  std::array<bool, kFieldCount> coded{};
  for (std::size_t t = 0; t < kFieldCount; ++t) coded[t] = h.fields[t].encoding == FieldEncoding::Coded;

  std::vector<ArchiveStream> streams(kFieldCount + 1);
  std::array<bool, kFieldCount + 1> present{};

  if (mode == CompressionMode::SzLvPrx && n > 0) {
    const RIndexSet set = build_r_indices(snapshot, h.variant, key_bounds, settings.segment_size);
    perm = prx_sort(set, settings.ignored_groups);
    reordered = apply_permutation(snapshot, perm);
    data = &reordered;
  } else if (mode_uses_rindex_coordinates(mode) && n > 0) {
    std::array<std::vector<std::int64_t>, 3> ints;
    std::array<std::vector<bool>, 3> escaped;
    for (std::size_t t = 0; t < 3; ++t) {
      escaped[t].assign(n, false);
      if (!coded[t]) {
        ints[t].assign(n, 0);
        continue;
      }
      IntegerizedField q = integerize(snapshot.field(kAllFields[t]), h.fields[t].bound);
      for (std::size_t pos : q.escapes) escaped[t][pos] = true;
      ints[t] = std::move(q.ints);
    }
    const RIndexSet set = build_r_indices(RIndexVariant::CoordinateBased,
                                          std::span<const std::vector<std::int64_t>>(ints), settings.segment_size);
    perm = prx_sort(set, 0);
    reordered = apply_permutation(snapshot, perm);
    data = &reordered;

    std::array<std::vector<std::int64_t>, 3> sorted_ints;
    std::array<std::vector<EscapeEntry>, 3> escapes;
    std::vector<RIndex> sorted_keys(n);
    for (std::size_t j = 0; j < n; ++j) sorted_keys[j] = set.keys[perm.order[j]];
    for (std::size_t t = 0; t < 3; ++t) {
      sorted_ints[t].resize(n);
      const auto values = reordered.field(kAllFields[t]);
      for (std::size_t j = 0; j < n; ++j) {
        const auto src = perm.order[j];
        sorted_ints[t][j] = ints[t][src];
        if (escaped[t][src]) escapes[t].push_back({j, values[j]});
      }
    }
    for (const RIndexSegment& seg : set.segments) {
      SegmentEntry e;
      for (std::size_t t = 0; t < 3; ++t) e.minima[t] = seg.minima[t];
      e.bits_per_field = static_cast<std::uint8_t>(seg.bits_per_field);
      e.dropped_bits = static_cast<std::uint8_t>(seg.dropped_bits);
      h.segments.push_back(e);
    }
    streams[kCoordinateStreamId] =
        make_stream(kCoordinateStreamId, encode_coordinates(sorted_ints, sorted_keys, set.segments, escapes));
    present[kCoordinateStreamId] = true;
  }

  const bool cpc_coords = mode_uses_rindex_coordinates(mode);
  const PredictorKind predictor = mode == CompressionMode::SzLcf ? PredictorKind::LinearFit : PredictorKind::LastValue;
  std::vector<std::size_t> pending;
  for (std::size_t t = 0; t < kFieldCount; ++t) {
    if (coded[t] && !(cpc_coords && t < 3)) pending.push_back(t);
  }

  if (mode == CompressionMode::Cpc2000) {
    parallel_for(pending.size(), threads, [&](std::size_t k) {
      const std::size_t t = pending[k];
      const auto values = data->field(kAllFields[t]);
      const IntegerizedField q = integerize(values, h.fields[t].bound);
      streams[t] = make_stream(static_cast<std::uint8_t>(t),
                               encode_vlc_field(q.ints, values, q.escapes, settings.segment_size));
      present[t] = true;
    });
  } else {
    std::vector<QuantizedField> quantized(pending.size());
    if (threads == 1) {
      // One interleaved pass overlaps the per-field prediction chains.
      std::vector<std::span<const float>> fields;
      std::vector<double> bounds;
      for (std::size_t t : pending) {
        fields.push_back(data->field(kAllFields[t]));
        bounds.push_back(h.fields[t].bound);
      }
      quantized = quantize_fields(fields, predictor, bounds, settings.interval_count);
    }
    parallel_for(pending.size(), threads, [&](std::size_t k) {
      const std::size_t t = pending[k];
      if (threads > 1) {
        quantized[k] = quantize_field(data->field(kAllFields[t]), predictor, h.fields[t].bound, settings.interval_count);
      }
      streams[t] = make_stream(static_cast<std::uint8_t>(t), encode_sz_field(quantized[k]));
      quantized[k] = QuantizedField{};
      present[t] = true;
    });
  }

  for (std::size_t id = 0; id < streams.size(); ++id) {
    if (present[id]) archive.streams.push_back(std::move(streams[id]));
  }
  if (permutation != nullptr) *permutation = mode_reorders(mode) && n > 0 ? std::move(perm) : Permutation::identity(n);
  return archive;
}

ParticleSnapshot decompress(const CompressedArchive& archive, unsigned threads) {
  const ArchiveHeader& h = archive.header;
  if (h.version != kArchiveVersion) {
    throw Error(Errc::unsupported, "unsupported archive version " + std::to_string(h.version));
  }
  if (static_cast<std::size_t>(h.mode) >= kModeCount) throw Error(Errc::corrupt, "unknown compression mode");
  check_interval_count(h.interval_count);
  const auto n = static_cast<std::size_t>(h.n);
  const CompressionMode mode = h.mode;
  const bool cpc_coords = mode_uses_rindex_coordinates(mode);

  std::array<const ArchiveStream*, kFieldCount + 1> by_id{};
  for (const ArchiveStream& s : archive.streams) {
    if (s.id > kCoordinateStreamId || by_id[s.id] != nullptr) {
      throw Error(Errc::corrupt, "unexpected stream id " + std::to_string(s.id));
    }
    if (crc64(s.payload) != s.crc) throw Error(Errc::corrupt, "CRC mismatch in " + stream_name(s.id) + " stream");
    by_id[s.id] = &s;
  }

  bool needs_coordinates = false;
  for (std::size_t t = 0; t < kFieldCount; ++t) {
    const FieldHeader& fh = h.fields[t];
    const bool coded = fh.encoding == FieldEncoding::Coded;
    if (coded && !(fh.bound > 0.0 && std::isfinite(fh.bound))) {
      throw Error(Errc::corrupt, "invalid bound for field " + std::string(field_name(kAllFields[t])));
    }
    const bool expect = coded && !(cpc_coords && t < 3);
    if (expect != (by_id[t] != nullptr)) {
      throw Error(Errc::corrupt, std::string(expect ? "missing" : "unexpected") + " stream for field " +
                                     std::string(field_name(kAllFields[t])));
    }
    needs_coordinates |= coded && cpc_coords && t < 3;
  }
  if (cpc_coords && n > 0) {
    if (h.segment_size == 0) throw Error(Errc::corrupt, "zero segment size");
    const std::size_t expected = (n + h.segment_size - 1) / h.segment_size;
    if (h.segments.size() != expected) throw Error(Errc::corrupt, "segment table does not match particle count");
    for (const SegmentEntry& e : h.segments) {
      if (e.bits_per_field > kMaxBitsPerField || e.dropped_bits > 63 - kMaxBitsPerField) {
        throw Error(Errc::corrupt, "invalid segment parameters");
      }
    }
    needs_coordinates = true;
  }
  if (needs_coordinates != (by_id[kCoordinateStreamId] != nullptr)) {
    throw Error(Errc::corrupt, "coordinate stream presence does not match mode");
  }

  FieldArrays out;
  if (needs_coordinates) {
    auto coords = in_stream("coordinate", [&] { return decode_coordinates(by_id[kCoordinateStreamId]->payload, h); });
    for (std::size_t t = 0; t < 3; ++t) out[t] = std::move(coords[t]);
  }

  const PredictorKind predictor = mode == CompressionMode::SzLcf ? PredictorKind::LinearFit : PredictorKind::LastValue;
  parallel_for(kFieldCount, std::max(1u, threads), [&](std::size_t t) {
    const FieldHeader& fh = h.fields[t];
    if (fh.encoding == FieldEncoding::Constant) {
      out[t].assign(n, fh.constant);
      return;
    }
    if (cpc_coords && t < 3) return;
    const auto& payload = by_id[t]->payload;
    out[t] = in_stream(field_name(kAllFields[t]), [&] {
      if (mode == CompressionMode::Cpc2000) {
        if (h.segment_size == 0) throw Error(Errc::corrupt, "zero segment size");
        return decode_vlc_field(payload, fh.bound, n, h.segment_size);
      }
      return decode_sz_field(payload, predictor, fh.bound, h.interval_count, n);
    });
  });
  return ParticleSnapshot(std::move(out));
}

std::optional<double> ratio(const CompressedArchive& archive, std::uint64_t original_bytes) {
  if (archive.header.n == 0 || original_bytes == 0) return std::nullopt;
  return static_cast<double>(original_bytes) / static_cast<double>(encoded_size(archive));
}

}  // namespace nbz
