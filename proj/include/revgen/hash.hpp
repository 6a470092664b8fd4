#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace revgen {

/// Lower-case hex SHA-256 of the bytes of `data`.
std::string sha256_hex(std::string_view data);

/// First eight bytes of SHA-256(data), big-endian.
std::uint64_t sha256_u64(std::string_view data);

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic 64-bit seed for a (run seed, record, purpose) triple.
std::uint64_t derive_seed(std::uint64_t run_seed, std::string_view record_id, std::string_view purpose);

/// Maps a 64-bit hash to [0, 1).
inline double unit_interval(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace revgen
