#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ccc/bitvec.hpp>
#include <ccc/errors.hpp>

#include <cstdint>
#include <random>
#include <vector>

using ccc::BitVec;

TEST_CASE("empty vector") {
    BitVec v;
    CHECK(v.size() == 0);
    CHECK(v.bytes().empty());
    CHECK(v.to_hex() == "-");
    CHECK(v.to_bit_string() == "");
    CHECK(BitVec::from_hex("-", 0) == v);
}

TEST_CASE("msb-first bit order") {
    BitVec v;
    v.push_back(true);
    CHECK(v.size() == 1);
    CHECK(v.bytes()[0] == 0x80);
    for (int i = 0; i < 7; ++i) v.push_back(false);
    v.push_back(true);
    CHECK(v.size() == 9);
    CHECK(v.bytes()[0] == 0x80);
    CHECK(v.bytes()[1] == 0x80);
    CHECK(v.get(0));
    CHECK_FALSE(v.get(1));
    CHECK(v.get(8));
}

TEST_CASE("from_bit_string round trip") {
    BitVec v = BitVec::from_bit_string("110100100011100100101011010011101011");
    CHECK(v.size() == 36);
    CHECK(v.to_bit_string() == "110100100011100100101011010011101011");
    CHECK(v.to_hex() == "d2392b4eb0");
    CHECK(v.bytes() == std::vector<std::uint8_t>{0xd2, 0x39, 0x2b, 0x4e, 0xb0});
}

TEST_CASE("from_hex with explicit width masks tail") {
    BitVec v = BitVec::from_hex("ff", 5);
    CHECK(v.size() == 5);
    CHECK(v.bytes()[0] == 0xf8);
    CHECK(v.to_bit_string() == "11111");
    CHECK_THROWS_AS(BitVec::from_hex("f", 4), ccc::FormatError);
    CHECK_THROWS_AS(BitVec::from_hex("zz", 8), ccc::FormatError);
    CHECK_THROWS_AS(BitVec::from_hex("ff", 17), ccc::FormatError);
}

TEST_CASE("from_bytes truncates to bit count") {
    std::vector<std::uint8_t> raw{0xff, 0xff};
    BitVec v = BitVec::from_bytes(raw, 11);
    CHECK(v.size() == 11);
    CHECK(v.bytes() == std::vector<std::uint8_t>{0xff, 0xe0});
}

TEST_CASE("set and get") {
    BitVec v = BitVec::from_bytes(std::vector<std::uint8_t>(4, 0), 32);
    v.set(0, true);
    v.set(31, true);
    CHECK(v.get(0));
    CHECK(v.get(31));
    v.set(0, false);
    CHECK_FALSE(v.get(0));
    CHECK_THROWS_AS(v.get(32), ccc::InvalidArgument);
    CHECK_THROWS_AS(v.set(32, true), ccc::InvalidArgument);
}

TEST_CASE("hamming distance zero-pads the shorter side") {
    BitVec a = BitVec::from_bit_string("1111");
    BitVec b = BitVec::from_bit_string("1");
    CHECK(a.hamming_distance(b) == 3);
    CHECK(b.hamming_distance(a) == 3);
    CHECK(a.hamming_distance(a) == 0);
    BitVec c = BitVec::from_bit_string("0000");
    CHECK(a.hamming_distance(c) == 4);
}

TEST_CASE("random hex round trips") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t nbits = rng() % 130;
        BitVec v;
        for (std::size_t i = 0; i < nbits; ++i) v.push_back(rng() & 1);
        BitVec back = BitVec::from_hex(v.to_hex(), nbits);
        CHECK(back == v);
        CHECK(BitVec::from_bit_string(v.to_bit_string()) == v);
        CHECK(BitVec::from_bytes(v.bytes(), nbits) == v);
    }
}
