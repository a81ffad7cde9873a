#pragma once

#include "ccc/bitvec.hpp"
#include "ccc/sha256.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ccc {

struct BloomParams {
    std::size_t t_bits = std::size_t{1} << 20; // filter width, multiple of 64
    unsigned k = 64;                           // hash function count
    bool operator==(const BloomParams&) const = default;
};

/// Membership filter over attribute vectors. The k index functions are
/// MurmurHash3 x64-128 (first 64 output bits, mod t_bits) with per-function
/// seeds drawn from SHA-256(seed || j), j = 1..k big-endian 64-bit; seed is
/// the bloom seed of the carrier's seed bundle.
class BloomFilter {
public:
    explicit BloomFilter(const Digest& seed, BloomParams params = {});

    void insert(const BitVec& member_attrs);
    bool query(const BitVec& member_attrs) const;

    std::size_t count() const { return count_; }
    std::size_t ones() const;
    const BloomParams& params() const { return params_; }
    const Digest& seed() const { return seed_; }

    /// Expected false-positive rate at the current load:
    /// (1 - exp(-k*count/t))^k.
    double analytic_false_positive_rate() const;

    /// "CCCBLOOM" | t_bits u64be | k u32be | seed (32 bytes) | bit array
    /// (t_bits/8 bytes, bit i = byte i/8 bit 7-(i%8)). The load count is a
    /// builder-side statistic and is not serialized.
    std::vector<std::uint8_t> serialize() const;
    static BloomFilter deserialize(std::span<const std::uint8_t> data);

    bool operator==(const BloomFilter& o) const {
        return params_ == o.params_ && seed_ == o.seed_ && bits_ == o.bits_;
    }

private:
    void indices(const BitVec& member_attrs, std::vector<std::size_t>& out) const;

    BloomParams params_;
    Digest seed_{};
    std::vector<std::uint32_t> fn_seeds_;
    std::vector<std::uint8_t> bits_;
    std::size_t count_ = 0;
};

BloomFilter bloom_build(std::span<const BitVec> members, const Digest& seed,
                        BloomParams params = {});

} // namespace ccc
