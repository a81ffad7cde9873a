#include "ccc/hyper.hpp"

#include "ccc/errors.hpp"

#include <algorithm>
#include <set>

namespace ccc {

namespace {

void require_ascending(const std::vector<NodeId>& v, const char* what) {
    if (!std::is_sorted(v.begin(), v.end()) ||
        std::adjacent_find(v.begin(), v.end()) != v.end())
        throw InvalidArgument(std::string(what) + " must be strictly ascending");
}

std::array<std::uint8_t, 4> be32(std::uint32_t v) {
    return {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
            static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
}

Digest level_seed(const Digest& base, std::uint32_t tag) {
    auto t = be32(tag);
    return sha256_2(base, t);
}

constexpr std::uint32_t kMetaTag = 0xFFFFFFFFu;

} // namespace

Hypergraph make_hypergraph(std::vector<NodeId> vertices,
                           std::vector<std::vector<NodeId>> edges) {
    require_ascending(vertices, "hypergraph vertices");
    for (const auto& e : edges) {
        if (e.empty()) throw InvalidArgument("hyperedges must be non-empty");
        require_ascending(e, "hyperedge members");
        for (NodeId v : e)
            if (!std::binary_search(vertices.begin(), vertices.end(), v))
                throw InvalidArgument("hyperedge member " + std::to_string(v) +
                                      " is not a vertex");
    }
    return {std::move(vertices), std::move(edges)};
}

bool incidence(const Hypergraph& h, NodeId vertex, std::size_t edge_index) {
    if (edge_index >= h.edges.size()) throw InvalidArgument("hyperedge index out of range");
    if (!std::binary_search(h.vertices.begin(), h.vertices.end(), vertex))
        throw InvalidArgument("vertex " + std::to_string(vertex) + " is not in the hypergraph");
    const auto& e = h.edges[edge_index];
    return std::binary_search(e.begin(), e.end(), vertex);
}

MetaGraph meta_graph(const Hypergraph& h) { return {h.edges.size(), {}}; }

BoundPlan bind_plan(const ChannelPlan& plan, const SeedBundle& seeds, bool trivial_orders) {
    if (plan.levels.empty()) throw InvalidArgument("channel plan has no levels");

    BoundPlan bound;
    bound.plan = plan;
    bound.meta_mode = GraphMode{plan.mode.directed, false};

    std::set<NodeId> seen;
    for (const auto& lvl : plan.levels) {
        for (NodeId v : lvl.community)
            if (!seen.insert(v).second)
                throw InvalidArgument("plan communities overlap at node " + std::to_string(v));
    }

    for (std::size_t i = 0; i < plan.levels.size(); ++i) {
        const ChannelLevel& lvl = plan.levels[i];
        std::uint64_t cap = capacity(plan.mode, lvl.s);
        if (lvl.payload_bits > cap)
            throw CapacityError("level " + std::to_string(i) + " payload of " +
                                std::to_string(lvl.payload_bits) + " bits exceeds capacity " +
                                std::to_string(cap));
        CommunityDescriptor c = make_community(lvl.community);
        std::uint32_t tag = static_cast<std::uint32_t>(i);
        SubCommunity sub =
            select_subcommunity(c, lvl.s, level_seed(seeds.sel_seed, tag));
        LinkOrder order = trivial_orders
                              ? trivial_order(sub, plan.mode)
                              : permuted_order(sub, plan.mode, level_seed(seeds.perm_seed, tag));
        bound.levels.push_back({std::move(sub), std::move(order)});
    }

    // Bridge representative per level: smallest unselected community member,
    // or the smallest member when the whole community was selected.
    std::vector<NodeId> rep(plan.levels.size());
    for (std::size_t i = 0; i < plan.levels.size(); ++i) {
        const auto& comm = plan.levels[i].community;
        const auto& sel = bound.levels[i].sub.members;
        NodeId r = comm.front();
        bool found = false;
        for (NodeId v : comm) {
            if (!std::binary_search(sel.begin(), sel.end(), v)) {
                r = v;
                found = true;
                break;
            }
        }
        rep[i] = found ? r : comm.front();
    }

    std::size_t L = plan.levels.size();
    std::vector<std::pair<std::size_t, std::size_t>> trivial_pairs;
    if (bound.meta_mode.directed) {
        for (std::size_t a = 0; a < L; ++a)
            for (std::size_t b = 0; b < L; ++b)
                if (a != b) trivial_pairs.emplace_back(a, b);
    } else {
        for (std::size_t a = 0; a + 1 < L; ++a)
            for (std::size_t b = a + 1; b < L; ++b) trivial_pairs.emplace_back(a, b);
    }
    if (plan.meta_payload_bits > trivial_pairs.size())
        throw CapacityError("meta payload of " + std::to_string(plan.meta_payload_bits) +
                            " bits exceeds meta capacity " +
                            std::to_string(trivial_pairs.size()));

    std::vector<std::uint32_t> perm(trivial_pairs.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::uint32_t>(i);
    if (!trivial_orders)
        perm = keyed_permutation(level_seed(seeds.perm_seed, kMetaTag), trivial_pairs.size());
    bound.meta_pairs.reserve(trivial_pairs.size());
    bound.meta_links.reserve(trivial_pairs.size());
    for (std::size_t slot = 0; slot < trivial_pairs.size(); ++slot) {
        auto [a, b] = trivial_pairs[perm[slot]];
        bound.meta_pairs.emplace_back(a, b);
        bound.meta_links.emplace_back(rep[a], rep[b]);
    }

    // Isolation check: no link slot may appear in two channels.
    std::set<std::uint64_t> touched;
    auto key = [&](Link l, bool directed) {
        NodeId a = l.first, b = l.second;
        if (!directed && a > b) std::swap(a, b);
        return static_cast<std::uint64_t>(a) << 32 | b;
    };
    for (const auto& lvl : bound.levels)
        for (const Link& l : lvl.order.links)
            if (!touched.insert(key(l, plan.mode.directed)).second)
                throw Error("channel plan produced overlapping link slots");
    for (const Link& l : bound.meta_links)
        if (!touched.insert(key(l, plan.mode.directed)).second)
            throw Error("channel plan produced overlapping link slots");

    return bound;
}

void encode_multi(SocialGraph& g, const BoundPlan& bound,
                  const std::vector<Ciphertext>& level_payloads, const Ciphertext& meta_payload) {
    if (level_payloads.size() != bound.levels.size())
        throw InvalidArgument("expected " + std::to_string(bound.levels.size()) +
                              " level payloads, got " + std::to_string(level_payloads.size()));
    for (std::size_t i = 0; i < bound.levels.size(); ++i)
        if (level_payloads[i].size() != bound.plan.levels[i].payload_bits)
            throw InvalidArgument("level " + std::to_string(i) + " payload must be " +
                                  std::to_string(bound.plan.levels[i].payload_bits) + " bits");
    if (meta_payload.size() != bound.plan.meta_payload_bits)
        throw InvalidArgument("meta payload must be " +
                              std::to_string(bound.plan.meta_payload_bits) + " bits");
    for (const Link& l : bound.meta_links)
        if (!g.has_node(l.first) || !g.has_node(l.second))
            throw ValidationError("bridge endpoint missing from the carrier");

    for (std::size_t i = 0; i < bound.levels.size(); ++i)
        encode(g, bound.levels[i].order, level_payloads[i]);
    for (std::size_t slot = 0; slot < bound.meta_links.size(); ++slot) {
        bool bit = slot < meta_payload.size() && meta_payload.get(slot);
        g.set_link(bound.meta_links[slot].first, bound.meta_links[slot].second, bit);
    }
}

MultiDecoded decode_multi(const SocialGraph& g, const BoundPlan& bound) {
    MultiDecoded out;
    out.levels.reserve(bound.levels.size());
    for (std::size_t i = 0; i < bound.levels.size(); ++i)
        out.levels.push_back(decode(g, bound.levels[i].order, bound.plan.levels[i].payload_bits));
    out.meta = Ciphertext(bound.plan.meta_payload_bits);
    for (std::size_t slot = 0; slot < bound.plan.meta_payload_bits; ++slot)
        out.meta.set(slot,
                     g.has_link(bound.meta_links[slot].first, bound.meta_links[slot].second));
    return out;
}

MetaGraph meta_view(const SocialGraph& g, const BoundPlan& bound) {
    MetaGraph m;
    m.meta_node_count = bound.levels.size();
    for (std::size_t slot = 0; slot < bound.meta_links.size(); ++slot)
        if (g.has_link(bound.meta_links[slot].first, bound.meta_links[slot].second))
            m.meta_links.push_back(bound.meta_pairs[slot]);
    std::sort(m.meta_links.begin(), m.meta_links.end());
    return m;
}

} // namespace ccc
