#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace ccc {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);

/// SHA-256 over the concatenation of two byte ranges (no copy of the inputs
/// into a joint buffer; streamed into one hash state).
Digest sha256_2(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

std::string to_hex(std::span<const std::uint8_t> bytes);
Digest digest_from_hex(std::string_view hex);

} // namespace ccc
