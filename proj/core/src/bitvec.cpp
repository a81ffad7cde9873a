#include "ccc/bitvec.hpp"

#include "ccc/errors.hpp"

#include <bit>

namespace ccc {

namespace {

int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

BitVec BitVec::from_bytes(std::span<const std::uint8_t> data, std::size_t nbits) {
    std::size_t need = (nbits + 7) / 8;
    if (data.size() < need)
        throw InvalidArgument("bit vector: " + std::to_string(nbits) + " bits need " +
                              std::to_string(need) + " bytes, got " + std::to_string(data.size()));
    BitVec v;
    v.nbits_ = nbits;
    v.bytes_.assign(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(need));
    if (nbits % 8 != 0 && need > 0)
        v.bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - nbits % 8));
    return v;
}

BitVec BitVec::from_bit_string(std::string_view s) {
    BitVec v;
    for (char c : s) {
        if (c == '0')
            v.push_back(false);
        else if (c == '1')
            v.push_back(true);
        else
            throw InvalidArgument("bit string: unexpected character");
    }
    return v;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t nbits) {
    if (hex == "-" && nbits == 0) return BitVec{};
    if (hex.size() % 2 != 0) throw FormatError("hex string has odd length");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_val(hex[i]);
        int lo = hex_val(hex[i + 1]);
        if (hi < 0 || lo < 0) throw FormatError("hex string: invalid digit");
        bytes.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
    if (bytes.size() < (nbits + 7) / 8)
        throw FormatError("hex string too short for " + std::to_string(nbits) + " bits");
    return from_bytes(bytes, nbits);
}

bool BitVec::get(std::size_t i) const {
    if (i >= nbits_) throw InvalidArgument("bit index out of range");
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
}

void BitVec::set(std::size_t i, bool v) {
    if (i >= nbits_) throw InvalidArgument("bit index out of range");
    std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - (i & 7)));
    if (v)
        bytes_[i >> 3] |= mask;
    else
        bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
}

void BitVec::push_back(bool v) {
    if (nbits_ % 8 == 0) bytes_.push_back(0);
    ++nbits_;
    set(nbits_ - 1, v);
}

std::string BitVec::to_hex() const {
    if (nbits_ == 0) return "-";
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes_.size() * 2);
    for (std::uint8_t b : bytes_) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

std::string BitVec::to_bit_string() const {
    std::string out;
    out.reserve(nbits_);
    for (std::size_t i = 0; i < nbits_; ++i) out.push_back(get(i) ? '1' : '0');
    return out;
}

std::size_t BitVec::hamming_distance(const BitVec& other) const {
    const BitVec& a = *this;
    const BitVec& b = other;
    std::size_t nbytes = std::max(a.bytes_.size(), b.bytes_.size());
    std::size_t dist = 0;
    for (std::size_t i = 0; i < nbytes; ++i) {
        std::uint8_t x = i < a.bytes_.size() ? a.bytes_[i] : 0;
        std::uint8_t y = i < b.bytes_.size() ? b.bytes_[i] : 0;
        dist += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(x ^ y)));
    }
    return dist;
}

} // namespace ccc
