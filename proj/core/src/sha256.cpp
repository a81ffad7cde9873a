#include "ccc/sha256.hpp"

#include "ccc/errors.hpp"

#include <openssl/evp.h>

#include <memory>

namespace ccc {

namespace {

struct CtxFree {
    void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};

Digest finish(std::span<const std::uint8_t> a, const std::uint8_t* b, std::size_t blen) {
    std::unique_ptr<EVP_MD_CTX, CtxFree> ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw Error("sha256: context init failed");
    if (!a.empty() && EVP_DigestUpdate(ctx.get(), a.data(), a.size()) != 1)
        throw Error("sha256: update failed");
    if (blen > 0 && EVP_DigestUpdate(ctx.get(), b, blen) != 1)
        throw Error("sha256: update failed");
    Digest out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != out.size())
        throw Error("sha256: final failed");
    return out;
}

} // namespace

Digest sha256(std::span<const std::uint8_t> data) { return finish(data, nullptr, 0); }

Digest sha256_2(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    return finish(a, b.data(), b.size());
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t x : bytes) {
        out.push_back(digits[x >> 4]);
        out.push_back(digits[x & 0xF]);
    }
    return out;
}

Digest digest_from_hex(std::string_view hex) {
    if (hex.size() != 64) throw FormatError("digest hex must be 64 characters");
    auto val = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw FormatError("digest hex: invalid digit");
    };
    Digest d{};
    for (std::size_t i = 0; i < 32; ++i)
        d[i] = static_cast<std::uint8_t>(val(hex[2 * i]) << 4 | val(hex[2 * i + 1]));
    return d;
}

} // namespace ccc
