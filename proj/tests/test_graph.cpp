#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ccc/errors.hpp>
#include <ccc/graph.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

using namespace ccc;

namespace {

SocialGraph worked_directed_carrier() {
    SocialGraph g(parse_mode("directed"));
    for (NodeId id = 1; id <= 6; ++id) g.add_node_with_id(id, BitVec{});
    const std::pair<NodeId, NodeId> arcs[] = {{1, 2}, {1, 3}, {1, 5}, {2, 4},
                                              {4, 3}, {5, 3}, {5, 4}, {6, 4}};
    for (auto [a, b] : arcs) g.set_link(a, b, true);
    return g;
}

SocialGraph worked_undirected_carrier() {
    SocialGraph g(parse_mode("undirected"));
    for (NodeId id = 1; id <= 6; ++id) g.add_node_with_id(id, BitVec{});
    const std::pair<NodeId, NodeId> edges[] = {{1, 2}, {1, 3}, {1, 5}, {2, 4},
                                               {3, 4}, {3, 5}, {4, 5}, {4, 6}};
    for (auto [a, b] : edges) g.set_link(a, b, true);
    return g;
}

// independent partition count: enumerate restricted growth strings
std::uint64_t partitions_brute(unsigned m) {
    if (m == 0) return 1;
    std::uint64_t count = 0;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned mx) {
        if (i == m) {
            ++count;
            return;
        }
        for (unsigned v = 0; v <= mx + 1; ++v) rec(i + 1, std::max(mx, v));
    };
    rec(1, 0);
    return count;
}

// independent power of two: repeated decimal doubling
std::string pow2_decimal(unsigned n) {
    std::string d = "1";
    for (unsigned i = 0; i < n; ++i) {
        int carry = 0;
        for (auto it = d.rbegin(); it != d.rend(); ++it) {
            int v = (*it - '0') * 2 + carry;
            *it = static_cast<char>('0' + v % 10);
            carry = v / 10;
        }
        if (carry) d.insert(d.begin(), static_cast<char>('0' + carry));
    }
    return d;
}

} // namespace

TEST_CASE("mode names") {
    CHECK(parse_mode("undirected") == GraphMode{false, false});
    CHECK(parse_mode("directed") == GraphMode{true, false});
    CHECK(parse_mode("undirected-loops") == GraphMode{false, true});
    CHECK(parse_mode("directed-loops") == GraphMode{true, true});
    for (const char* name : {"undirected", "directed", "undirected-loops", "directed-loops"})
        CHECK(format_mode(parse_mode(name)) == name);
    CHECK_THROWS_AS(parse_mode("mixed"), InvalidArgument);
}

TEST_CASE("node ids are stable and never reused") {
    SocialGraph g;
    NodeId a = g.add_node(BitVec{});
    NodeId b = g.add_node(BitVec{});
    NodeId c = g.add_node(BitVec{});
    CHECK(a == 0);
    CHECK(b == 1);
    CHECK(c == 2);
    g.remove_node(c);
    CHECK(g.add_node(BitVec{}) == 3);
    g.add_node_with_id(10, BitVec{});
    CHECK(g.add_node(BitVec{}) == 11);
    CHECK_THROWS_AS(g.add_node_with_id(0, BitVec{}), InvalidArgument);
    CHECK_THROWS_AS(g.remove_node(99), InvalidArgument);
    CHECK_THROWS_AS(g.attributes(99), InvalidArgument);
}

TEST_CASE("undirected links are unordered pairs") {
    SocialGraph g(parse_mode("undirected"));
    g.add_node_with_id(1, BitVec{});
    g.add_node_with_id(2, BitVec{});
    g.set_link(2, 1, true);
    CHECK(g.has_link(1, 2));
    CHECK(g.has_link(2, 1));
    CHECK(g.link_count() == 1);
    g.set_link(1, 2, false);
    CHECK_FALSE(g.has_link(2, 1));
    CHECK_THROWS_AS(g.set_link(1, 1, true), InvalidArgument); // loops not allowed here
    CHECK_THROWS_AS(g.set_link(1, 9, true), InvalidArgument);
    CHECK_THROWS_AS(g.has_link(1, 9), InvalidArgument);
}

TEST_CASE("directed links are ordered and loops follow the mode") {
    SocialGraph g(parse_mode("directed-loops"));
    g.add_node_with_id(1, BitVec{});
    g.add_node_with_id(2, BitVec{});
    g.set_link(1, 2, true);
    CHECK(g.has_link(1, 2));
    CHECK_FALSE(g.has_link(2, 1));
    g.set_link(1, 1, true);
    CHECK(g.has_link(1, 1));
    CHECK(g.link_count() == 2);
}

TEST_CASE("removing a node removes its links") {
    SocialGraph g(parse_mode("directed"));
    for (NodeId id = 1; id <= 3; ++id) g.add_node_with_id(id, BitVec{});
    g.set_link(1, 2, true);
    g.set_link(2, 3, true);
    g.set_link(3, 1, true);
    g.remove_node(2);
    CHECK(g.link_count() == 1);
    CHECK(g.has_link(3, 1));
}

TEST_CASE("density of the worked carriers") {
    SocialGraph d = worked_directed_carrier();
    CHECK(d.density() == doctest::Approx(8.0 / 36.0));
    SocialGraph u = worked_undirected_carrier();
    CHECK(u.density() == doctest::Approx(8.0 / 15.0));
}

TEST_CASE("density slot counts per mode") {
    auto build = [](const char* mode, std::size_t n) {
        SocialGraph g(parse_mode(mode));
        for (NodeId id = 0; id < n; ++id) g.add_node_with_id(id, BitVec{});
        return g;
    };
    SocialGraph g = build("directed", 4);
    g.set_link(0, 1, true);
    CHECK(g.density() == doctest::Approx(1.0 / 16.0));
    // the directed denominator is |V|^2 whether or not loops are allowed
    SocialGraph gl = build("directed-loops", 4);
    gl.set_link(0, 1, true);
    CHECK(gl.density() == doctest::Approx(1.0 / 16.0));
    SocialGraph u = build("undirected", 4);
    u.set_link(0, 1, true);
    CHECK(u.density() == doctest::Approx(1.0 / 6.0));
    SocialGraph ul = build("undirected-loops", 4);
    ul.set_link(0, 1, true);
    CHECK(ul.density() == doctest::Approx(1.0 / 10.0));

    CHECK_THROWS_AS(build("directed", 0).density(), InvalidArgument);
    CHECK_THROWS_AS(build("undirected", 1).density(), InvalidArgument);
    CHECK(build("directed", 1).density() == doctest::Approx(0.0));
}

TEST_CASE("community means strictly denser than the carrier") {
    SocialGraph d = worked_directed_carrier();
    std::vector<NodeId> sub{1, 2, 3, 4};
    CHECK(d.induced_density(sub) == doctest::Approx(4.0 / 16.0));
    CHECK(d.is_community(sub));

    SocialGraph u = worked_undirected_carrier();
    CHECK(u.induced_density(sub) == doctest::Approx(4.0 / 6.0));
    CHECK(u.is_community(sub));

    // equal density is not enough
    SocialGraph k(parse_mode("undirected"));
    for (NodeId id = 0; id < 4; ++id) k.add_node_with_id(id, BitVec{});
    for (NodeId a = 0; a < 4; ++a)
        for (NodeId b = a + 1; b < 4; ++b) k.set_link(a, b, true);
    std::vector<NodeId> half{0, 1, 2};
    CHECK(k.induced_density(half) == doctest::Approx(1.0));
    CHECK_FALSE(k.is_community(half));

    std::vector<NodeId> missing{1, 99};
    CHECK_THROWS_AS(u.induced_density(missing), InvalidArgument);
    std::vector<NodeId> single{1};
    CHECK_THROWS_AS(u.induced_density(single), InvalidArgument);
}

TEST_CASE("canonical text") {
    SocialGraph g(parse_mode("undirected"));
    g.add_node_with_id(2, BitVec{});
    g.add_node_with_id(1, BitVec::from_bit_string("1"));
    g.set_link(2, 1, true);
    CHECK(g.canonical_text() == "N 1 80\nN 2 -\nL 1 2\n");
}

TEST_CASE("induced subgraph keeps attributes, mode and member links") {
    SocialGraph g = worked_undirected_carrier();
    std::vector<NodeId> sub{1, 2, 3, 4};
    SocialGraph s = induced_subgraph(g, sub);
    CHECK(s.mode() == g.mode());
    CHECK(s.node_count() == 4);
    CHECK(s.link_count() == 4);
    CHECK(s.has_link(1, 2));
    CHECK(s.has_link(3, 4));
    CHECK_FALSE(s.has_link(1, 4));
    std::vector<NodeId> bad{1, 77};
    CHECK_THROWS_AS(induced_subgraph(g, bad), InvalidArgument);
}

TEST_CASE("community descriptor wants strictly ascending unique members") {
    CommunityDescriptor c = make_community({5, 1, 3});
    CHECK(c.members == std::vector<NodeId>{1, 3, 5});
    CHECK_THROWS_AS(make_community({1, 1, 2}), InvalidArgument);
    CHECK_THROWS_AS(make_community({}), InvalidArgument);
}

TEST_CASE("attribute dictionary") {
    AttributeDictionary d = AttributeDictionary::boolean_run(3);
    CHECK(d.size() == 3);
    CHECK(d.at(1).name == "a1");
    CHECK(d.at(3).name == "a3");
    CHECK(d.at(2).domain == AttrDomain::boolean);
    CHECK(d.find("a2") != nullptr);
    CHECK(d.find("zz") == nullptr);
    CHECK_THROWS_AS(d.at(0), InvalidArgument);
    CHECK_THROWS_AS(d.at(4), InvalidArgument);

    CHECK_THROWS_AS(AttributeDictionary({{2, "x", AttrDomain::boolean}}), InvalidArgument);
    CHECK_THROWS_AS(AttributeDictionary({{1, "x", AttrDomain::boolean},
                                         {2, "x", AttrDomain::presence}}),
                    InvalidArgument);
}

TEST_CASE("attribute pattern count is a power of two") {
    CHECK(attribute_pattern_count(0).get_str() == "1");
    CHECK(attribute_pattern_count(10).get_str() == "1024");
    CHECK(attribute_pattern_count(300).get_str() == pow2_decimal(300));
    CHECK(attribute_pattern_count(300).get_str() ==
          "203703597633448608626844568840937816105146839366593625063614044"
          "9354381299763336706183397376");
}

TEST_CASE("bell numbers") {
    const std::uint64_t known[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    for (unsigned m = 0; m <= 8; ++m) {
        CHECK(bell_number(m).get_ui() == known[m]);
        CHECK(bell_number(m).get_ui() == partitions_brute(m));
    }
    mpz_class b55 = bell_number(55);
    CHECK(b55.get_str() == "359334085968622831041960188598043661065388726959079837");
    CHECK(mpz_sizeinbase(b55.get_mpz_t(), 2) - 1 == 177);
    CHECK(b55.get_str().size() - 1 == 53);
}

TEST_CASE("random link edits match a shadow model") {
    std::mt19937_64 rng(29);
    SocialGraph g(parse_mode("directed-loops"));
    for (NodeId id = 0; id < 30; ++id) g.add_node_with_id(id, BitVec{});
    std::set<std::pair<NodeId, NodeId>> model;
    for (int op = 0; op < 10000; ++op) {
        NodeId a = static_cast<NodeId>(rng() % 30);
        NodeId b = static_cast<NodeId>(rng() % 30);
        bool present = rng() & 1;
        g.set_link(a, b, present);
        if (present)
            model.insert({a, b});
        else
            model.erase({a, b});
        if (op % 1000 == 0) {
            auto links = g.links();
            CHECK(links.size() == model.size());
            CHECK(std::set<std::pair<NodeId, NodeId>>(links.begin(), links.end()) == model);
        }
    }
    for (NodeId a = 0; a < 30; ++a)
        for (NodeId b = 0; b < 30; ++b)
            CHECK(g.has_link(a, b) == (model.count({a, b}) != 0));
}
