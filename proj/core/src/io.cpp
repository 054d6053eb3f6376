#include "nbz/io.hpp"

#include <fstream>
#include <iterator>

#include "bytes.hpp"
#include "nbz/error.hpp"

namespace nbz {

using detail::ByteReader;

namespace {

constexpr std::array<std::uint8_t, 4> kArchiveMagic = {'N', 'B', 'Z', '1'};
constexpr std::array<std::uint8_t, 4> kPermutationMagic = {'N', 'B', 'Z', 'P'};

constexpr std::size_t kFixedHeaderBytes = 4 + 2 + 1 + 1 + 8 + 4 + 4 + 1;
constexpr std::size_t kFieldEntryBytes = 8 + 1 + 4;
constexpr std::size_t kSegmentEntryBytes = 3 * 8 + 1 + 1;
constexpr std::size_t kStreamEntryBytes = 1 + 8 + 8;

// Slice-by-8 tables for the reflected ECMA-182 polynomial.
constexpr auto make_crc_tables() {
  constexpr std::uint64_t kReflectedPoly = 0xC96C5795D7870F42ull;
  std::array<std::array<std::uint64_t, 256>, 8> t{};
  for (std::uint64_t i = 0; i < 256; ++i) {
    std::uint64_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? (c >> 1) ^ kReflectedPoly : c >> 1;
    t[0][i] = c;
  }
  for (std::size_t k = 1; k < 8; ++k) {
    for (std::size_t i = 0; i < 256; ++i) t[k][i] = (t[k - 1][i] >> 8) ^ t[0][t[k - 1][i] & 0xff];
  }
  return t;
}

constexpr auto kCrcTables = make_crc_tables();

std::size_t header_size(const CompressedArchive& a) noexcept {
  return kFixedHeaderBytes + kFieldCount * kFieldEntryBytes + 4 + a.header.segments.size() * kSegmentEntryBytes +
         1 + a.streams.size() * kStreamEntryBytes + 8;
}

}  // namespace

std::uint64_t crc64(std::span<const std::uint8_t> bytes) noexcept {
  const auto& t = kCrcTables;
  std::uint64_t crc = ~0ull;
  std::size_t i = 0;
  for (; i + 8 <= bytes.size(); i += 8) {
    std::uint64_t x = 0;
    for (unsigned k = 0; k < 8; ++k) x |= static_cast<std::uint64_t>(bytes[i + k]) << (8 * k);
    x ^= crc;
    crc = t[7][x & 0xff] ^ t[6][(x >> 8) & 0xff] ^ t[5][(x >> 16) & 0xff] ^ t[4][(x >> 24) & 0xff] ^
          t[3][(x >> 32) & 0xff] ^ t[2][(x >> 40) & 0xff] ^ t[1][(x >> 48) & 0xff] ^ t[0][x >> 56];
  }
  for (; i < bytes.size(); ++i) crc = t[0][(crc ^ bytes[i]) & 0xff] ^ (crc >> 8);
  return ~crc;
}

std::filesystem::path field_path(const std::filesystem::path& prefix, Field f) {
  std::filesystem::path p = prefix;
  p += ".";
  p += std::string(field_name(f));
  return p;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::io, "read failed: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::io, "write failed: " + path.string());
}

ParticleSnapshot read_snapshot(const std::filesystem::path& prefix) {
  FieldArrays fields;
  for (Field f : kAllFields) {
    const auto path = field_path(prefix, f);
    if (!std::filesystem::exists(path)) throw Error(Errc::io, "missing field " + std::string(field_name(f)));
    const auto bytes = read_file(path);
    if (bytes.size() % 4 != 0) {
      throw Error(Errc::io, "field " + std::string(field_name(f)) + ": size not multiple of 4");
    }
    ByteReader in(bytes, path.string());
    auto& values = fields[index_of(f)];
    values.resize(bytes.size() / 4);
    for (auto& v : values) v = in.f32();
    if (values.size() != fields[0].size()) {
      throw Error(Errc::io, "field " + std::string(field_name(f)) + " has " + std::to_string(values.size()) +
                                " values, xx has " + std::to_string(fields[0].size()));
    }
  }
  return ParticleSnapshot(std::move(fields));
}

void write_snapshot(const ParticleSnapshot& snapshot, const std::filesystem::path& prefix) {
  std::vector<std::uint8_t> bytes;
  for (Field f : kAllFields) {
    bytes.clear();
    for (float v : snapshot.field(f)) detail::put_f32(bytes, v);
    write_file(field_path(prefix, f), bytes);
  }
}

std::uint64_t encoded_size(const CompressedArchive& archive) noexcept {
  std::uint64_t total = header_size(archive);
  for (const auto& s : archive.streams) total += s.payload.size();
  return total;
}

// Layout, little-endian throughout:
//   "NBZ1" | version u16 | mode u8 | variant u8 | n u64 | interval_count u32
//   segment_size u32 | ignored_groups u8
//   6 x (bound f64 | encoding u8 | constant f32)
//   segment count u32 | count x (3 x minimum i64 | B u8 | dropped u8)
//   stream count u8 | count x (id u8 | length u64 | crc64 u64)
//   crc64 of every preceding header byte
//   stream payloads, concatenated in table order
std::vector<std::uint8_t> encode_archive(const CompressedArchive& archive) {
  const ArchiveHeader& h = archive.header;
  if (archive.streams.size() > 255) throw Error(Errc::invalid_argument, "too many streams");
  if (h.segments.size() > 0xffffffffu) throw Error(Errc::invalid_argument, "too many segments");

  std::vector<std::uint8_t> out(kArchiveMagic.begin(), kArchiveMagic.end());
  out.reserve(static_cast<std::size_t>(encoded_size(archive)));
  detail::put_le<std::uint16_t>(out, h.version);
  detail::put_u8(out, static_cast<std::uint8_t>(h.mode));
  detail::put_u8(out, static_cast<std::uint8_t>(h.variant));
  detail::put_le<std::uint64_t>(out, h.n);
  detail::put_le<std::uint32_t>(out, h.interval_count);
  detail::put_le<std::uint32_t>(out, h.segment_size);
  detail::put_u8(out, h.ignored_groups);
  for (const FieldHeader& f : h.fields) {
    detail::put_f64(out, f.bound);
    detail::put_u8(out, static_cast<std::uint8_t>(f.encoding));
    detail::put_f32(out, f.constant);
  }
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(h.segments.size()));
  for (const SegmentEntry& s : h.segments) {
    for (std::int64_t m : s.minima) detail::put_i64(out, m);
    detail::put_u8(out, s.bits_per_field);
    detail::put_u8(out, s.dropped_bits);
  }
  detail::put_u8(out, static_cast<std::uint8_t>(archive.streams.size()));
  for (const ArchiveStream& s : archive.streams) {
    detail::put_u8(out, s.id);
    detail::put_le<std::uint64_t>(out, s.payload.size());
    detail::put_le<std::uint64_t>(out, s.crc);
  }
  detail::put_le<std::uint64_t>(out, crc64(out));
  for (const ArchiveStream& s : archive.streams) detail::put_bytes(out, s.payload);
  return out;
}

CompressedArchive decode_archive(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kArchiveMagic.size() || !std::equal(kArchiveMagic.begin(), kArchiveMagic.end(), bytes.begin())) {
    throw Error(Errc::corrupt, "not an NBZ archive");
  }
  ByteReader in(bytes, "archive header", kArchiveMagic.size());
  CompressedArchive a;
  ArchiveHeader& h = a.header;
  h.version = in.le<std::uint16_t>();
  if (h.version != kArchiveVersion) {
    throw Error(Errc::unsupported, "unsupported archive version " + std::to_string(h.version));
  }
  const std::uint8_t mode = in.u8();
  if (mode >= kModeCount) in.fail("unknown mode " + std::to_string(mode));
  h.mode = static_cast<CompressionMode>(mode);
  const std::uint8_t variant = in.u8();
  if (variant > static_cast<std::uint8_t>(RIndexVariant::CoordVelocityBased)) in.fail("unknown R-index variant");
  h.variant = static_cast<RIndexVariant>(variant);
  h.n = in.le<std::uint64_t>();
  h.interval_count = in.le<std::uint32_t>();
  h.segment_size = in.le<std::uint32_t>();
  h.ignored_groups = in.u8();
  for (FieldHeader& f : h.fields) {
    f.bound = in.f64();
    const std::uint8_t enc = in.u8();
    if (enc > static_cast<std::uint8_t>(FieldEncoding::Constant)) in.fail("unknown field encoding");
    f.encoding = static_cast<FieldEncoding>(enc);
    f.constant = in.f32();
  }
  const auto segment_count = in.le<std::uint32_t>();
  if (static_cast<std::uint64_t>(segment_count) * kSegmentEntryBytes > in.remaining()) in.fail("segment table truncated");
  h.segments.resize(segment_count);
  for (SegmentEntry& s : h.segments) {
    for (auto& m : s.minima) m = in.i64();
    s.bits_per_field = in.u8();
    s.dropped_bits = in.u8();
  }
  const std::uint8_t stream_count = in.u8();
  a.streams.resize(stream_count);
  std::vector<std::uint64_t> lengths(stream_count);
  for (std::size_t k = 0; k < stream_count; ++k) {
    a.streams[k].id = in.u8();
    lengths[k] = in.le<std::uint64_t>();
    a.streams[k].crc = in.le<std::uint64_t>();
  }
  const std::size_t header_end = in.position();
  if (in.le<std::uint64_t>() != crc64(bytes.first(header_end))) in.fail("header CRC mismatch");

  std::uint64_t payload_total = 0;
  for (std::uint64_t len : lengths) {
    if (len > bytes.size()) in.fail("stream length exceeds archive size");
    payload_total += len;
  }
  if (payload_total != in.remaining()) {
    throw Error(Errc::corrupt, "archive length mismatch: header describes " + std::to_string(payload_total) +
                                   " payload bytes, found " + std::to_string(in.remaining()));
  }
  for (std::size_t k = 0; k < stream_count; ++k) {
    const auto payload = in.take(static_cast<std::size_t>(lengths[k]));
    if (crc64(payload) != a.streams[k].crc) {
      throw Error(Errc::corrupt, "CRC mismatch in stream " + std::to_string(a.streams[k].id));
    }
    a.streams[k].payload.assign(payload.begin(), payload.end());
  }
  return a;
}

void write_archive(const CompressedArchive& archive, const std::filesystem::path& path) {
  write_file(path, encode_archive(archive));
}

CompressedArchive read_archive(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_archive(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_permutation(const Permutation& perm, const std::filesystem::path& path) {
  std::vector<std::uint8_t> out;
  detail::put_bytes(out, kPermutationMagic);
  detail::put_le<std::uint64_t>(out, perm.size());
  for (std::uint64_t v : perm.order) detail::put_le<std::uint64_t>(out, v);
  write_file(path, out);
}

Permutation read_permutation(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() < 4 || !std::equal(kPermutationMagic.begin(), kPermutationMagic.end(), bytes.begin())) {
    throw Error(Errc::corrupt, path.string() + ": not a permutation sidecar");
  }
  ByteReader in(bytes, path.string(), 4);
  const auto n = in.le<std::uint64_t>();
  if (n != in.remaining() / 8 || in.remaining() % 8 != 0) in.fail("length does not match count");
  Permutation p;
  p.order.resize(static_cast<std::size_t>(n));
  for (auto& v : p.order) v = in.le<std::uint64_t>();
  if (!p.is_bijection()) throw Error(Errc::corrupt, path.string() + ": not a permutation");
  return p;
}

}  // namespace nbz
