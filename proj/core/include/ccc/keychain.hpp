#pragma once

#include "ccc/bitvec.hpp"
#include "ccc/sha256.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace ccc {

/// Shared 32-byte secret.
struct MasterKey {
    std::array<std::uint8_t, 32> bytes{};
    bool operator==(const MasterKey&) const = default;
};

/// Public 64-byte per-carrier value; reuse across carriers is the caller's
/// problem, the derivation itself is deterministic.
struct Nonce {
    std::array<std::uint8_t, 64> bytes{};
    bool operator==(const Nonce&) const = default;
};

/// The three per-carrier working seeds, derived as successive depths of the
/// keyed hash chain over (nonce, key). All three are pairwise distinct for
/// any input; the constructor-time check enforces it.
struct SeedBundle {
    Digest sel_seed{};   // depth 1: sub-community selection
    Digest perm_seed{};  // depth 2: link-order permutation
    Digest bloom_seed{}; // depth 3: membership filter hashing
};

/// depth >= 1. Depth 1 is SHA-256(x || key); each further depth is the
/// SHA-256 of the previous digest alone.
Digest hash_chain(std::span<const std::uint8_t> x, std::span<const std::uint8_t> key,
                  unsigned depth);

SeedBundle derive_seeds(const Nonce& nonce, const MasterKey& key);

/// Anything that hands out one bit at a time.
struct BitSource {
    virtual ~BitSource() = default;
    virtual bool next_bit() = 0;
};

/// Deterministic bit stream: block j is SHA-256(seed || j) with j as a
/// big-endian 64-bit counter starting at 0; bits are consumed MSB-first
/// within each block.
class Keystream : public BitSource {
public:
    explicit Keystream(const Digest& seed) : seed_(seed) {}

    bool next_bit() override;

    /// Next n bits (n <= 64) packed MSB-first into the low bits.
    std::uint64_t next_bits(unsigned n);

private:
    Digest seed_;
    Digest block_{};
    std::uint64_t block_index_ = 0;
    unsigned used_ = 256; // bits consumed from block_; 256 forces first fill
};

BitVec keystream_bits(const Digest& seed, std::size_t nbits);

/// Keyed permutation of {0..m-1}: Fisher-Yates driven by the keystream.
/// Index draws take ceil(log2(i+1)) bits and reject values > i, so every
/// permutation is reachable and the bit cost is data-independent per accept.
std::vector<std::uint32_t> keyed_permutation(const Digest& seed, std::size_t m);

MasterKey generate_key();
Nonce generate_nonce();

MasterKey key_from_hex(std::string_view hex);
Nonce nonce_from_hex(std::string_view hex);

/// One line of lowercase hex (64 chars for keys, 128 for nonces), trailing
/// newline tolerated on read, written with one.
MasterKey read_key_file(const std::filesystem::path& p);
Nonce read_nonce_file(const std::filesystem::path& p);
void write_key_file(const std::filesystem::path& p, const MasterKey& k);
void write_nonce_file(const std::filesystem::path& p, const Nonce& n);

} // namespace ccc
