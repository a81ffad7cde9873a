#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ccc/errors.hpp>
#include <ccc/hyper.hpp>
#include <ccc/keychain.hpp>
#include <ccc/sha256.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

using namespace ccc;

namespace {

Digest tagged_seed(const Digest& base, std::uint32_t tag) {
    std::array<std::uint8_t, 4> t{static_cast<std::uint8_t>(tag >> 24),
                                  static_cast<std::uint8_t>(tag >> 16),
                                  static_cast<std::uint8_t>(tag >> 8),
                                  static_cast<std::uint8_t>(tag)};
    return sha256_2(base, t);
}

Hypergraph overlapping_hypergraph() {
    std::vector<NodeId> vertices;
    for (NodeId v = 1; v <= 16; ++v) vertices.push_back(v);
    return make_hypergraph(vertices, {{1, 2, 3, 4, 5, 6},
                                      {3, 6, 7, 8, 11},
                                      {8, 9, 10, 11, 12},
                                      {8, 13, 14, 15, 16}});
}

ChannelPlan four_level_plan(GraphMode mode) {
    ChannelPlan p;
    p.mode = mode;
    p.levels.push_back({{1, 2, 3, 4, 5}, 4, static_cast<std::size_t>(capacity(mode, 4))});
    p.levels.push_back({{6, 7, 8}, 2, 1});
    p.levels.push_back({{9, 10, 11, 12}, 3, static_cast<std::size_t>(capacity(mode, 3)) - 1});
    p.levels.push_back({{13, 14, 15, 16}, 3, 2});
    p.meta_payload_bits = mode.directed ? 12 : 6;
    return p;
}

SeedBundle test_seeds(std::uint8_t fill) {
    MasterKey key;
    Nonce nonce;
    key.bytes.fill(fill);
    nonce.bytes.fill(static_cast<std::uint8_t>(fill ^ 0x5a));
    return derive_seeds(nonce, key);
}

std::uint64_t slot_key(Link l, bool directed) {
    NodeId a = l.first, b = l.second;
    if (!directed && a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) << 32 | b;
}

} // namespace

TEST_CASE("hypergraph construction and incidence") {
    Hypergraph h = overlapping_hypergraph();
    CHECK(h.vertices.size() == 16);
    CHECK(h.edges.size() == 4);

    CHECK(incidence(h, 3, 0));
    CHECK(incidence(h, 3, 1));
    CHECK_FALSE(incidence(h, 3, 2));
    CHECK(incidence(h, 8, 1));
    CHECK(incidence(h, 8, 2));
    CHECK(incidence(h, 8, 3));
    CHECK_FALSE(incidence(h, 1, 3));

    CHECK_THROWS_AS(incidence(h, 1, 4), InvalidArgument);
    CHECK_THROWS_AS(incidence(h, 99, 0), InvalidArgument);
}

TEST_CASE("hypergraph guards") {
    CHECK_THROWS_AS(make_hypergraph({2, 1}, {}), InvalidArgument);
    CHECK_THROWS_AS(make_hypergraph({1, 2}, {{}}), InvalidArgument);
    CHECK_THROWS_AS(make_hypergraph({1, 2}, {{2, 1}}), InvalidArgument);
    CHECK_THROWS_AS(make_hypergraph({1, 2}, {{1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(make_hypergraph({1, 2}, {{1, 9}}), InvalidArgument);
    CHECK_NOTHROW(make_hypergraph({1, 2}, {{1}, {1, 2}, {1, 2}}));
}

TEST_CASE("meta graph starts with no links") {
    MetaGraph m = meta_graph(overlapping_hypergraph());
    CHECK(m.meta_node_count == 4);
    CHECK(m.meta_links.empty());
}

TEST_CASE("bind derives each level from tagged seeds") {
    GraphMode mode = parse_mode("undirected");
    ChannelPlan plan = four_level_plan(mode);
    SeedBundle seeds = test_seeds(0x21);
    BoundPlan bound = bind_plan(plan, seeds);

    REQUIRE(bound.levels.size() == 4);
    CHECK(bound.meta_mode == GraphMode{false, false});

    for (std::size_t i = 0; i < 4; ++i) {
        CommunityDescriptor c = make_community(plan.levels[i].community);
        SubCommunity want =
            select_subcommunity(c, plan.levels[i].s, tagged_seed(seeds.sel_seed, i));
        CHECK(bound.levels[i].sub.members == want.members);
        LinkOrder order =
            permuted_order(want, mode, tagged_seed(seeds.perm_seed, i));
        CHECK(bound.levels[i].order.links == order.links);
        CHECK(bound.levels[i].order.links.size() == capacity(mode, plan.levels[i].s));
    }

    // meta slots are the pair enumeration under the tagged meta permutation
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a + 1 < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) pairs.emplace_back(a, b);
    auto perm = keyed_permutation(tagged_seed(seeds.perm_seed, 0xFFFFFFFFu), pairs.size());
    REQUIRE(bound.meta_pairs.size() == pairs.size());
    for (std::size_t slot = 0; slot < pairs.size(); ++slot)
        CHECK(bound.meta_pairs[slot] == pairs[perm[slot]]);
}

TEST_CASE("bridge endpoints are the smallest unselected members") {
    GraphMode mode = parse_mode("undirected");
    ChannelPlan plan = four_level_plan(mode);
    SeedBundle seeds = test_seeds(0x22);
    BoundPlan bound = bind_plan(plan, seeds);

    std::vector<NodeId> rep(4);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& comm = plan.levels[i].community;
        const auto& sel = bound.levels[i].sub.members;
        rep[i] = comm.front();
        for (NodeId v : comm) {
            if (!std::binary_search(sel.begin(), sel.end(), v)) {
                rep[i] = v;
                break;
            }
        }
        // s < |community| here, so an unselected member always exists
        CHECK_FALSE(std::binary_search(sel.begin(), sel.end(), rep[i]));
    }
    for (std::size_t slot = 0; slot < bound.meta_links.size(); ++slot) {
        auto [a, b] = bound.meta_pairs[slot];
        CHECK(bound.meta_links[slot] == Link{rep[a], rep[b]});
    }
}

TEST_CASE("full selection falls back to the smallest member as bridge") {
    ChannelPlan plan;
    plan.mode = parse_mode("undirected");
    plan.levels.push_back({{1, 2, 3}, 3, 1});
    plan.levels.push_back({{7, 8, 9}, 3, 1});
    plan.meta_payload_bits = 1;
    BoundPlan bound = bind_plan(plan, test_seeds(0x23));
    REQUIRE(bound.meta_links.size() == 1);
    CHECK(bound.meta_links[0] == Link{1, 7});
}

TEST_CASE("slots never collide across channels") {
    for (const char* name : {"undirected", "directed", "undirected-loops", "directed-loops"}) {
        GraphMode mode = parse_mode(name);
        BoundPlan bound = bind_plan(four_level_plan(mode), test_seeds(0x24));
        std::set<std::uint64_t> touched;
        for (const auto& lvl : bound.levels)
            for (const Link& l : lvl.order.links)
                CHECK(touched.insert(slot_key(l, mode.directed)).second);
        for (const Link& l : bound.meta_links)
            CHECK(touched.insert(slot_key(l, mode.directed)).second);
    }
}

TEST_CASE("plan guards") {
    SeedBundle seeds = test_seeds(0x25);

    ChannelPlan empty;
    empty.mode = parse_mode("undirected");
    CHECK_THROWS_AS(bind_plan(empty, seeds), InvalidArgument);

    ChannelPlan overlap;
    overlap.mode = parse_mode("undirected");
    overlap.levels.push_back({{1, 2, 3}, 2, 1});
    overlap.levels.push_back({{3, 4, 5}, 2, 1});
    CHECK_THROWS_AS(bind_plan(overlap, seeds), InvalidArgument);

    ChannelPlan too_much;
    too_much.mode = parse_mode("undirected");
    too_much.levels.push_back({{1, 2, 3}, 2, 2}); // capacity(undirected, 2) == 1
    CHECK_THROWS_AS(bind_plan(too_much, seeds), CapacityError);

    ChannelPlan meta_over;
    meta_over.mode = parse_mode("undirected");
    meta_over.levels.push_back({{1, 2, 3}, 2, 1});
    meta_over.meta_payload_bits = 1; // one level, zero meta pairs
    CHECK_THROWS_AS(bind_plan(meta_over, seeds), CapacityError);

    ChannelPlan single;
    single.mode = parse_mode("undirected");
    single.levels.push_back({{1, 2, 3}, 2, 1});
    BoundPlan bound = bind_plan(single, seeds);
    CHECK(bound.meta_links.empty());
}

TEST_CASE("trivial orders bypass the permutations") {
    GraphMode mode = parse_mode("directed");
    ChannelPlan plan = four_level_plan(mode);
    BoundPlan bound = bind_plan(plan, test_seeds(0x26), true);
    for (std::size_t i = 0; i < bound.levels.size(); ++i)
        CHECK(bound.levels[i].order.links ==
              trivial_order(bound.levels[i].sub, mode).links);
    std::size_t slot = 0;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            if (a == b) continue;
            CHECK(bound.meta_pairs[slot] == std::pair<std::size_t, std::size_t>{a, b});
            ++slot;
        }
}

TEST_CASE("multi-channel round trip in every mode") {
    std::mt19937_64 rng(79);
    for (const char* name : {"undirected", "directed", "undirected-loops", "directed-loops"}) {
        GraphMode mode = parse_mode(name);
        ChannelPlan plan = four_level_plan(mode);
        SeedBundle seeds = test_seeds(static_cast<std::uint8_t>(rng()));
        BoundPlan bound = bind_plan(plan, seeds);

        SocialGraph g(mode);
        for (NodeId id = 1; id <= 16; ++id) g.add_node_with_id(id, BitVec{});
        g.add_node_with_id(50, BitVec{});
        g.add_node_with_id(51, BitVec{});
        g.set_link(50, 51, true);
        g.set_link(1, 50, true);

        std::vector<Ciphertext> payloads;
        for (const auto& lvl : plan.levels) {
            BitVec p(lvl.payload_bits);
            for (std::size_t i = 0; i < p.size(); ++i) p.set(i, rng() & 1);
            payloads.push_back(p);
        }
        BitVec meta(plan.meta_payload_bits);
        for (std::size_t i = 0; i < meta.size(); ++i) meta.set(i, rng() & 1);

        encode_multi(g, bound, payloads, meta);

        MultiDecoded back = decode_multi(g, bound);
        REQUIRE(back.levels.size() == payloads.size());
        for (std::size_t i = 0; i < payloads.size(); ++i) CHECK(back.levels[i] == payloads[i]);
        CHECK(back.meta == meta);

        CHECK(g.has_link(50, 51));
        CHECK(g.has_link(1, 50));

        MetaGraph view = meta_view(g, bound);
        CHECK(view.meta_node_count == 4);
        std::vector<std::pair<std::size_t, std::size_t>> expected;
        for (std::size_t slot = 0; slot < meta.size(); ++slot)
            if (meta.get(slot)) expected.push_back(bound.meta_pairs[slot]);
        std::sort(expected.begin(), expected.end());
        CHECK(view.meta_links == expected);
    }
}

TEST_CASE("channels do not disturb each other") {
    GraphMode mode = parse_mode("undirected");
    ChannelPlan plan = four_level_plan(mode);
    SeedBundle seeds = test_seeds(0x27);
    BoundPlan bound = bind_plan(plan, seeds);

    SocialGraph g(mode);
    for (NodeId id = 1; id <= 16; ++id) g.add_node_with_id(id, BitVec{});

    std::vector<Ciphertext> zeros;
    for (const auto& lvl : plan.levels) zeros.push_back(BitVec(lvl.payload_bits));
    BitVec meta(plan.meta_payload_bits);
    encode_multi(g, bound, zeros, meta);
    std::string all_zero = g.canonical_text();

    // flipping one level's payload leaves every other channel's bits alone
    std::vector<Ciphertext> ones = zeros;
    for (std::size_t i = 0; i < ones[2].size(); ++i) ones[2].set(i, true);
    encode_multi(g, bound, ones, meta);
    MultiDecoded back = decode_multi(g, bound);
    CHECK(back.levels[0] == zeros[0]);
    CHECK(back.levels[1] == zeros[1]);
    CHECK(back.levels[2] == ones[2]);
    CHECK(back.levels[3] == zeros[3]);
    CHECK(back.meta == meta);

    encode_multi(g, bound, zeros, meta);
    CHECK(g.canonical_text() == all_zero);
}

TEST_CASE("encode_multi argument guards") {
    GraphMode mode = parse_mode("undirected");
    ChannelPlan plan = four_level_plan(mode);
    SeedBundle seeds = test_seeds(0x28);
    BoundPlan bound = bind_plan(plan, seeds);

    SocialGraph g(mode);
    for (NodeId id = 1; id <= 16; ++id) g.add_node_with_id(id, BitVec{});

    std::vector<Ciphertext> payloads;
    for (const auto& lvl : plan.levels) payloads.push_back(BitVec(lvl.payload_bits));
    BitVec meta(plan.meta_payload_bits);

    std::vector<Ciphertext> missing(payloads.begin(), payloads.end() - 1);
    CHECK_THROWS_AS(encode_multi(g, bound, missing, meta), InvalidArgument);

    std::vector<Ciphertext> wrong = payloads;
    wrong[1] = BitVec(wrong[1].size() + 1);
    CHECK_THROWS_AS(encode_multi(g, bound, wrong, meta), InvalidArgument);

    CHECK_THROWS_AS(encode_multi(g, bound, payloads, BitVec(meta.size() + 1)), InvalidArgument);

    // a bridge endpoint missing from the carrier is caught before mutation
    Link bridge = bound.meta_links.front();
    SocialGraph partial(mode);
    for (NodeId id = 1; id <= 16; ++id)
        if (id != bridge.first) partial.add_node_with_id(id, BitVec{});
    std::string before = partial.canonical_text();
    CHECK_THROWS_AS(encode_multi(partial, bound, payloads, meta), ValidationError);
    CHECK(partial.canonical_text() == before);
}
