#include "ccc/keychain.hpp"

#include "ccc/errors.hpp"

#include <openssl/rand.h>

#include <bit>
#include <fstream>

namespace ccc {

namespace {

std::array<std::uint8_t, 8> be64(std::uint64_t v) {
    std::array<std::uint8_t, 8> out{};
    for (int i = 7; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xFF);
        v >>= 8;
    }
    return out;
}

std::vector<std::uint8_t> bytes_from_hex(std::string_view hex, std::size_t expect) {
    if (hex.size() != expect * 2)
        throw ValidationError("expected " + std::to_string(expect * 2) + " hex characters, got " +
                              std::to_string(hex.size()));
    auto val = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ValidationError("invalid hex digit in key material");
    };
    std::vector<std::uint8_t> out(expect);
    for (std::size_t i = 0; i < expect; ++i)
        out[i] = static_cast<std::uint8_t>(val(hex[2 * i]) << 4 | val(hex[2 * i + 1]));
    return out;
}

std::string read_hex_line(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw FormatError("cannot open " + p.string());
    std::string line;
    std::getline(in, line);
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    return line;
}

void write_hex_line(const std::filesystem::path& p, std::span<const std::uint8_t> bytes) {
    std::ofstream out(p, std::ios::trunc);
    if (!out) throw FormatError("cannot write " + p.string());
    out << to_hex(bytes) << '\n';
    if (!out) throw FormatError("write failed for " + p.string());
}

} // namespace

Digest hash_chain(std::span<const std::uint8_t> x, std::span<const std::uint8_t> key,
                  unsigned depth) {
    if (depth == 0) throw InvalidArgument("hash_chain: depth must be >= 1");
    Digest d = sha256_2(x, key); // depth 1 hashes x || key; deeper levels
    for (unsigned i = 1; i < depth; ++i) d = sha256(d); // hash the digest alone
    return d;
}

SeedBundle derive_seeds(const Nonce& nonce, const MasterKey& key) {
    SeedBundle b;
    b.sel_seed = hash_chain(nonce.bytes, key.bytes, 1);
    b.perm_seed = sha256(b.sel_seed);
    b.bloom_seed = sha256(b.perm_seed);
    // Equal seeds would mean SHA-256 has a fixed point here.
    if (b.sel_seed == b.perm_seed || b.sel_seed == b.bloom_seed || b.perm_seed == b.bloom_seed)
        throw Error("seed derivation produced a repeated digest");
    return b;
}

bool Keystream::next_bit() {
    if (used_ == 256) {
        auto ctr = be64(block_index_++);
        block_ = sha256_2(seed_, ctr);
        used_ = 0;
    }
    bool bit = (block_[used_ >> 3] >> (7 - (used_ & 7))) & 1u;
    ++used_;
    return bit;
}

std::uint64_t Keystream::next_bits(unsigned n) {
    if (n > 64) throw InvalidArgument("Keystream::next_bits: n must be <= 64");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < n; ++i) v = v << 1 | (next_bit() ? 1u : 0u);
    return v;
}

BitVec keystream_bits(const Digest& seed, std::size_t nbits) {
    Keystream ks(seed);
    BitVec out(nbits);
    for (std::size_t i = 0; i < nbits; ++i) out.set(i, ks.next_bit());
    return out;
}

std::vector<std::uint32_t> keyed_permutation(const Digest& seed, std::size_t m) {
    if (m > 0xFFFFFFFFull) throw InvalidArgument("keyed_permutation: m too large");
    std::vector<std::uint32_t> a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = static_cast<std::uint32_t>(i);
    Keystream ks(seed);
    for (std::size_t i = m; i-- > 1;) {
        unsigned width = static_cast<unsigned>(std::bit_width(i));
        std::uint64_t j;
        do {
            j = ks.next_bits(width);
        } while (j > i);
        std::swap(a[i], a[j]);
    }
    return a;
}

MasterKey generate_key() {
    MasterKey k;
    if (RAND_bytes(k.bytes.data(), static_cast<int>(k.bytes.size())) != 1)
        throw Error("system entropy source failed");
    return k;
}

Nonce generate_nonce() {
    Nonce n;
    if (RAND_bytes(n.bytes.data(), static_cast<int>(n.bytes.size())) != 1)
        throw Error("system entropy source failed");
    return n;
}

MasterKey key_from_hex(std::string_view hex) {
    auto b = bytes_from_hex(hex, 32);
    MasterKey k;
    std::copy(b.begin(), b.end(), k.bytes.begin());
    return k;
}

Nonce nonce_from_hex(std::string_view hex) {
    auto b = bytes_from_hex(hex, 64);
    Nonce n;
    std::copy(b.begin(), b.end(), n.bytes.begin());
    return n;
}

MasterKey read_key_file(const std::filesystem::path& p) { return key_from_hex(read_hex_line(p)); }

Nonce read_nonce_file(const std::filesystem::path& p) { return nonce_from_hex(read_hex_line(p)); }

void write_key_file(const std::filesystem::path& p, const MasterKey& k) {
    write_hex_line(p, k.bytes);
    std::filesystem::permissions(p, std::filesystem::perms::owner_read |
                                        std::filesystem::perms::owner_write,
                                 std::filesystem::perm_options::replace);
}

void write_nonce_file(const std::filesystem::path& p, const Nonce& n) {
    write_hex_line(p, n.bytes);
}

} // namespace ccc
