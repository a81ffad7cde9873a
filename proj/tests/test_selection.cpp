#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ccc/errors.hpp>
#include <ccc/keychain.hpp>
#include <ccc/selection.hpp>
#include <ccc/sha256.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace ccc;

namespace {

struct ScriptedBits : BitSource {
    std::vector<bool> bits;
    std::size_t at = 0;
    bool next_bit() override {
        if (at >= bits.size()) throw Error("scripted source exhausted");
        return bits[at++];
    }
};

struct ConstantBits : BitSource {
    bool value;
    explicit ConstantBits(bool v) : value(v) {}
    bool next_bit() override { return value; }
};

struct AfterNZeros : BitSource {
    std::size_t zeros;
    explicit AfterNZeros(std::size_t n) : zeros(n) {}
    bool next_bit() override {
        if (zeros) {
            --zeros;
            return false;
        }
        return true;
    }
};

CommunityDescriptor range_community(NodeId lo, NodeId hi) {
    std::vector<NodeId> m;
    for (NodeId id = lo; id <= hi; ++id) m.push_back(id);
    return make_community(std::move(m));
}

// decimation walk restated from scratch against the same bit script
std::vector<NodeId> walk_oracle(const std::vector<NodeId>& members, std::size_t s,
                                const std::vector<bool>& bits) {
    std::vector<bool> picked(members.size(), false);
    std::size_t chosen = 0, bi = 0;
    while (chosen < s) {
        for (std::size_t i = 0; i < members.size() && chosen < s; ++i) {
            if (picked[i]) continue;
            if (bits.at(bi++)) {
                picked[i] = true;
                ++chosen;
            }
        }
    }
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (picked[i]) out.push_back(members[i]);
    return out;
}

Digest seed_bytes(std::uint8_t first) {
    Digest d;
    for (int i = 0; i < 32; ++i) d[i] = static_cast<std::uint8_t>(first + i);
    return d;
}

} // namespace

TEST_CASE("golden selection 237 of 357") {
    CommunityDescriptor c = range_community(0, 356);
    Digest seed = seed_bytes(0x20);
    SubCommunity sub = select_subcommunity(c, 237, seed);

    REQUIRE(sub.members.size() == 237);
    CHECK(sub.s == 237);
    CHECK(sub.parent.members == c.members);
    CHECK(std::is_sorted(sub.members.begin(), sub.members.end()));

    for (NodeId id = 0; id < 10; ++id) CHECK(sub.members[id] == id);
    CHECK(sub.members.back() == 356);

    std::string joined;
    for (std::size_t i = 0; i < sub.members.size(); ++i) {
        if (i) joined += ',';
        joined += std::to_string(sub.members[i]);
    }
    std::vector<std::uint8_t> bytes(joined.begin(), joined.end());
    CHECK(to_hex(sha256(bytes)) ==
          "fdecff39419e94f77f8aa31cf81ba8c2798873088f0f3cba7a617cc0d8ccb79f");
}

TEST_CASE("first pass keeps exactly the 1-bit members") {
    CommunityDescriptor c = range_community(0, 356);
    Digest seed = seed_bytes(0x20);
    BitVec stream = keystream_bits(seed, 357);
    std::size_t keeps = 0;
    std::vector<NodeId> kept_first_pass;
    for (std::size_t i = 0; i < 357; ++i)
        if (stream.get(i)) {
            ++keeps;
            kept_first_pass.push_back(static_cast<NodeId>(i));
        }
    CHECK(keeps == 187);

    SubCommunity sub = select_subcommunity(c, 237, seed);
    std::set<NodeId> final_set(sub.members.begin(), sub.members.end());
    for (NodeId id : kept_first_pass) CHECK(final_set.count(id) == 1);
}

TEST_CASE("all-ones source keeps the lowest ids") {
    CommunityDescriptor c = make_community({3, 8, 10, 15, 22});
    ConstantBits ones(true);
    SubCommunity sub = select_with_source(c, 3, ones);
    CHECK(sub.members == std::vector<NodeId>{3, 8, 10});
}

TEST_CASE("a dead first pass just wraps around") {
    CommunityDescriptor c = make_community({1, 2, 3, 4});
    AfterNZeros src(4);
    SubCommunity sub = select_with_source(c, 2, src);
    CHECK(sub.members == std::vector<NodeId>{1, 2});
}

TEST_CASE("source that never fires is an error") {
    CommunityDescriptor c = make_community({1, 2, 3});
    ConstantBits zeros(false);
    CHECK_THROWS_AS(select_with_source(c, 1, zeros), Error);
}

TEST_CASE("selecting everyone returns the community") {
    CommunityDescriptor c = range_community(10, 60);
    SubCommunity sub = select_subcommunity(c, c.members.size(), seed_bytes(1));
    CHECK(sub.members == c.members);
}

TEST_CASE("matches an independent walk on random scripts") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + rng() % 60;
        std::set<NodeId> ids;
        while (ids.size() < n) ids.insert(static_cast<NodeId>(rng() % 1000));
        CommunityDescriptor c = make_community({ids.begin(), ids.end()});
        std::size_t s = 1 + rng() % n;

        std::vector<bool> script;
        for (int i = 0; i < 20000; ++i) script.push_back(rng() & 1);

        ScriptedBits src;
        src.bits = script;
        SubCommunity sub = select_with_source(c, s, src);
        CHECK(sub.members == walk_oracle(c.members, s, script));
    }
}

TEST_CASE("selection is deterministic in all inputs") {
    CommunityDescriptor c = range_community(0, 99);
    Digest seed = seed_bytes(0x77);
    SubCommunity a = select_subcommunity(c, 40, seed);
    SubCommunity b = select_subcommunity(c, 40, seed);
    CHECK(a.members == b.members);
    Digest other = seed;
    other[31] ^= 1;
    SubCommunity d = select_subcommunity(c, 40, other);
    CHECK(a.members != d.members);
}

TEST_CASE("argument guards") {
    CommunityDescriptor c = range_community(0, 9);
    CHECK_THROWS_AS(select_subcommunity(c, 0, seed_bytes(0)), CapacityError);
    CHECK_THROWS_AS(select_subcommunity(c, 11, seed_bytes(0)), CapacityError);

    CommunityDescriptor unsorted;
    unsorted.members = {5, 3, 4};
    CHECK_THROWS_AS(select_subcommunity(unsorted, 2, seed_bytes(0)), InvalidArgument);
    CommunityDescriptor dup;
    dup.members = {3, 3, 4};
    CHECK_THROWS_AS(select_subcommunity(dup, 2, seed_bytes(0)), InvalidArgument);
    CommunityDescriptor empty;
    CHECK_THROWS_AS(select_subcommunity(empty, 1, seed_bytes(0)), InvalidArgument);
}

TEST_CASE("agreement counts the shared members") {
    CommunityDescriptor c = range_community(0, 199);
    Digest a = seed_bytes(0x10), b = seed_bytes(0x90);
    std::size_t agree = selection_agreement(c, 100, a, b);

    SubCommunity sa = select_subcommunity(c, 100, a);
    SubCommunity sb = select_subcommunity(c, 100, b);
    std::vector<NodeId> common;
    std::set_intersection(sa.members.begin(), sa.members.end(), sb.members.begin(),
                          sb.members.end(), std::back_inserter(common));
    CHECK(agree == common.size());
    CHECK(selection_agreement(c, 100, a, a) == 100);
    CHECK(agree < 100);
}
