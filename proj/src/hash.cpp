#include "revgen/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace revgen {

namespace {

std::array<unsigned char, 32> sha256_raw(std::string_view data) {
    std::array<unsigned char, 32> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    return md;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    static constexpr char kHex[] = "0123456789abcdef";
    const auto md = sha256_raw(data);
    std::string out(64, '0');
    for (std::size_t i = 0; i < md.size(); ++i) {
        out[2 * i] = kHex[md[i] >> 4];
        out[2 * i + 1] = kHex[md[i] & 0x0F];
    }
    return out;
}

std::uint64_t sha256_u64(std::string_view data) {
    const auto md = sha256_raw(data);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | md[static_cast<std::size_t>(i)];
    return v;
}

std::uint64_t derive_seed(std::uint64_t run_seed, std::string_view record_id, std::string_view purpose) {
    std::string key = std::to_string(run_seed);
    key.push_back('\x1f');
    key.append(record_id);
    key.push_back('\x1f');
    key.append(purpose);
    return sha256_u64(key);
}

}  // namespace revgen
