#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "nbz/model.hpp"
#include "nbz/pipeline.hpp"
#include "nbz/rindex.hpp"

namespace nbz {

/// CRC-64/XZ: ECMA-182 polynomial, reflected, init and xorout all ones.
std::uint64_t crc64(std::span<const std::uint8_t> bytes) noexcept;

/// "<prefix>.xx" ... "<prefix>.vz"
std::filesystem::path field_path(const std::filesystem::path& prefix, Field f);

/// Six headerless little-endian float32 files. Throws Errc::io for missing
/// or inconsistent files and Errc::invalid_argument for non-finite values.
ParticleSnapshot read_snapshot(const std::filesystem::path& prefix);
void write_snapshot(const ParticleSnapshot& snapshot, const std::filesystem::path& prefix);

std::vector<std::uint8_t> encode_archive(const CompressedArchive& archive);
/// Validates magic, version, header CRC, stream CRCs and total length.
CompressedArchive decode_archive(std::span<const std::uint8_t> bytes);
std::uint64_t encoded_size(const CompressedArchive& archive) noexcept;

void write_archive(const CompressedArchive& archive, const std::filesystem::path& path);
CompressedArchive read_archive(const std::filesystem::path& path);

/// Test sidecar: "NBZP", u64 n, n x u64 gather indices.
void write_permutation(const Permutation& perm, const std::filesystem::path& path);
Permutation read_permutation(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace nbz
