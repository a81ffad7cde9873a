#include "ccc/linkcodec.hpp"

#include "ccc/errors.hpp"

#include <cmath>

namespace ccc {

std::uint64_t capacity(GraphMode mode, std::uint64_t s) {
    if (s == 0) throw InvalidArgument("capacity: s must be >= 1");
    if (s > 0xFFFFFFFFull) throw InvalidArgument("capacity: s out of range");
    if (mode.directed) return mode.loops ? s * s : s * (s - 1);
    std::uint64_t pairs = s * (s - 1) / 2;
    return mode.loops ? pairs + s : pairs;
}

LinkOrder trivial_order(const SubCommunity& sub, GraphMode mode) {
    const auto& m = sub.members;
    if (m.empty()) throw InvalidArgument("link order: sub-community is empty");
    LinkOrder order;
    order.mode = mode;
    order.links.reserve(static_cast<std::size_t>(capacity(mode, m.size())));
    if (mode.directed) {
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = 0; b < m.size(); ++b)
                if (a != b) order.links.emplace_back(m[a], m[b]);
    } else {
        for (std::size_t a = 0; a + 1 < m.size(); ++a)
            for (std::size_t b = a + 1; b < m.size(); ++b) order.links.emplace_back(m[a], m[b]);
    }
    if (mode.loops)
        for (NodeId id : m) order.links.emplace_back(id, id);
    return order;
}

LinkOrder permuted_order(const SubCommunity& sub, GraphMode mode, const Digest& perm_seed) {
    LinkOrder order = trivial_order(sub, mode);
    auto perm = keyed_permutation(perm_seed, order.links.size());
    std::vector<Link> shuffled(order.links.size());
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = order.links[perm[i]];
    order.links = std::move(shuffled);
    return order;
}

namespace {

void check_order_against(const SocialGraph& g, const LinkOrder& order) {
    if (order.mode.directed != g.mode().directed)
        throw ValidationError("link order direction does not match the carrier");
    if (order.mode.loops && !g.mode().loops)
        throw ValidationError("link order uses loops but the carrier forbids them");
    for (const auto& [a, b] : order.links) {
        if (!g.has_node(a) || !g.has_node(b))
            throw ValidationError("link order references a node missing from the carrier");
    }
}

} // namespace

void encode(SocialGraph& g, const LinkOrder& order, const Ciphertext& payload) {
    if (payload.size() > order.links.size())
        throw CapacityError("payload of " + std::to_string(payload.size()) +
                            " bits exceeds capacity " + std::to_string(order.links.size()));
    check_order_against(g, order);
    for (std::size_t i = 0; i < order.links.size(); ++i) {
        bool bit = i < payload.size() && payload.get(i);
        g.set_link(order.links[i].first, order.links[i].second, bit);
    }
}

Ciphertext decode(const SocialGraph& g, const LinkOrder& order, std::size_t nbits) {
    if (nbits > order.links.size())
        throw CapacityError("cannot read " + std::to_string(nbits) + " bits from capacity " +
                            std::to_string(order.links.size()));
    check_order_against(g, order);
    Ciphertext out(nbits);
    for (std::size_t i = 0; i < nbits; ++i)
        out.set(i, g.has_link(order.links[i].first, order.links[i].second));
    return out;
}

std::size_t reconfigure(SocialGraph& g, const LinkOrder& order, const Ciphertext& old_payload,
                        const Ciphertext& new_payload) {
    if (old_payload.size() > order.links.size() || new_payload.size() > order.links.size())
        throw CapacityError("payload exceeds capacity " + std::to_string(order.links.size()));
    check_order_against(g, order);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < order.links.size(); ++i) {
        bool ob = i < old_payload.size() && old_payload.get(i);
        bool nb = i < new_payload.size() && new_payload.get(i);
        if (ob == nb) continue;
        g.set_link(order.links[i].first, order.links[i].second, nb);
        ++changed;
    }
    return changed;
}

std::vector<std::pair<std::uint64_t, double>> capacity_curve(GraphMode mode, std::uint64_t s_min,
                                                             std::uint64_t s_max) {
    if (s_min == 0 || s_min > s_max) throw InvalidArgument("capacity curve: bad s range");
    std::uint64_t span = s_max - s_min + 1;
    std::uint64_t step = span <= 1000 ? 1 : (span + 999) / 1000;
    std::vector<std::pair<std::uint64_t, double>> out;
    for (std::uint64_t s = s_min;; s += step) {
        if (s > s_max) s = s_max;
        std::uint64_t c = capacity(mode, s);
        out.emplace_back(s, c == 0 ? 0.0 : std::log2(static_cast<double>(c)));
        if (s == s_max) break;
    }
    return out;
}

} // namespace ccc
