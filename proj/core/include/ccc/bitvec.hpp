#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccc {

/// Bit container with an exact bit length. Bits are packed MSB-first:
/// bit 0 is the most significant bit of byte 0. Unused tail bits of the
/// last byte are kept zero so equal vectors compare equal bytewise.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t nbits) : bytes_((nbits + 7) / 8, 0), nbits_(nbits) {}

    static BitVec from_bytes(std::span<const std::uint8_t> data, std::size_t nbits);
    static BitVec from_bit_string(std::string_view s);
    static BitVec from_hex(std::string_view hex, std::size_t nbits);

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool get(std::size_t i) const;
    void set(std::size_t i, bool v);
    void push_back(bool v);

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    std::string to_hex() const;
    std::string to_bit_string() const;

    /// Hamming distance; the shorter vector is treated as zero-padded.
    std::size_t hamming_distance(const BitVec& other) const;

    bool operator==(const BitVec&) const = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

} // namespace ccc
