#include "ccc/bloom.hpp"

#include "ccc/errors.hpp"
#include "ccc/murmur3.hpp"

#include <bit>
#include <cmath>
#include <cstring>

namespace ccc {

namespace {

constexpr char kMagic[8] = {'C', 'C', 'C', 'B', 'L', 'O', 'O', 'M'};

std::array<std::uint8_t, 8> be64(std::uint64_t v) {
    std::array<std::uint8_t, 8> out{};
    for (int i = 7; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xFF);
        v >>= 8;
    }
    return out;
}

std::vector<std::uint32_t> derive_fn_seeds(const Digest& seed, unsigned k) {
    std::vector<std::uint32_t> out;
    out.reserve(k);
    for (unsigned j = 1; j <= k; ++j) {
        auto jb = be64(j);
        Digest d = sha256_2(seed, jb);
        out.push_back(static_cast<std::uint32_t>(d[0]) << 24 |
                      static_cast<std::uint32_t>(d[1]) << 16 |
                      static_cast<std::uint32_t>(d[2]) << 8 | static_cast<std::uint32_t>(d[3]));
    }
    return out;
}

} // namespace

BloomFilter::BloomFilter(const Digest& seed, BloomParams params)
    : params_(params), seed_(seed) {
    if (params_.t_bits == 0 || params_.t_bits % 64 != 0)
        throw InvalidArgument("filter width must be a positive multiple of 64");
    if (params_.k == 0) throw InvalidArgument("hash function count must be >= 1");
    fn_seeds_ = derive_fn_seeds(seed_, params_.k);
    bits_.assign(params_.t_bits / 8, 0);
}

void BloomFilter::indices(const BitVec& member_attrs, std::vector<std::size_t>& out) const {
    out.clear();
    out.reserve(params_.k);
    std::span<const std::uint8_t> bytes(member_attrs.bytes());
    for (std::uint32_t fs : fn_seeds_)
        out.push_back(static_cast<std::size_t>(murmur3_x64_128(bytes, fs).h1 % params_.t_bits));
}

void BloomFilter::insert(const BitVec& member_attrs) {
    std::vector<std::size_t> idx;
    indices(member_attrs, idx);
    for (std::size_t i : idx) bits_[i >> 3] |= static_cast<std::uint8_t>(1u << (7 - (i & 7)));
    ++count_;
}

bool BloomFilter::query(const BitVec& member_attrs) const {
    std::vector<std::size_t> idx;
    indices(member_attrs, idx);
    for (std::size_t i : idx)
        if (!((bits_[i >> 3] >> (7 - (i & 7))) & 1u)) return false;
    return true;
}

std::size_t BloomFilter::ones() const {
    std::size_t n = 0;
    for (std::uint8_t b : bits_) n += static_cast<std::size_t>(std::popcount(unsigned{b}));
    return n;
}

double BloomFilter::analytic_false_positive_rate() const {
    double k = static_cast<double>(params_.k);
    double load = static_cast<double>(count_);
    double t = static_cast<double>(params_.t_bits);
    return std::pow(1.0 - std::exp(-k * load / t), k);
}

std::vector<std::uint8_t> BloomFilter::serialize() const {
    std::vector<std::uint8_t> out(8 + 8 + 4 + 32 + bits_.size());
    std::memcpy(out.data(), kMagic, 8);
    auto t = be64(params_.t_bits);
    std::memcpy(out.data() + 8, t.data(), 8);
    out[16] = static_cast<std::uint8_t>(params_.k >> 24);
    out[17] = static_cast<std::uint8_t>(params_.k >> 16);
    out[18] = static_cast<std::uint8_t>(params_.k >> 8);
    out[19] = static_cast<std::uint8_t>(params_.k);
    std::memcpy(out.data() + 20, seed_.data(), 32);
    std::memcpy(out.data() + 52, bits_.data(), bits_.size());
    return out;
}

BloomFilter BloomFilter::deserialize(std::span<const std::uint8_t> data) {
    if (data.size() < 8 + 8 + 4 + 32 || std::memcmp(data.data(), kMagic, 8) != 0)
        throw FormatError("not a membership filter file");
    std::uint64_t t = 0;
    for (int i = 0; i < 8; ++i) t = t << 8 | data[8 + static_cast<std::size_t>(i)];
    std::uint32_t k = 0;
    for (int i = 0; i < 4; ++i) k = k << 8 | data[16 + static_cast<std::size_t>(i)];
    if (t == 0 || t % 64 != 0 || k == 0) throw FormatError("corrupt filter header");
    if (data.size() != 8 + 8 + 4 + 32 + t / 8)
        throw FormatError("filter bit array has the wrong length");
    Digest seed{};
    std::memcpy(seed.data(), data.data() + 20, 32);
    BloomFilter f(seed, BloomParams{static_cast<std::size_t>(t), k});
    std::memcpy(f.bits_.data(), data.data() + 52, static_cast<std::size_t>(t / 8));
    return f;
}

BloomFilter bloom_build(std::span<const BitVec> members, const Digest& seed, BloomParams params) {
    BloomFilter f(seed, params);
    for (const BitVec& m : members) f.insert(m);
    return f;
}

} // namespace ccc
