#pragma once

#include "ccc/linkcodec.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace ccc {

/// Vertices plus hyperedges (arbitrary non-empty vertex subsets).
struct Hypergraph {
    std::vector<NodeId> vertices;           // strictly ascending
    std::vector<std::vector<NodeId>> edges; // each strictly ascending, non-empty
};

Hypergraph make_hypergraph(std::vector<NodeId> vertices, std::vector<std::vector<NodeId>> edges);

bool incidence(const Hypergraph& h, NodeId vertex, std::size_t edge_index);

/// One meta-node per hyperedge. Meta-links start empty; they are carrier
/// payload, not a property of the hypergraph.
struct MetaGraph {
    std::size_t meta_node_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> meta_links;
};

MetaGraph meta_graph(const Hypergraph& h);

/// One encoding channel: a community, the sub-community size, and how many
/// payload bits the level carries.
struct ChannelLevel {
    std::vector<NodeId> community; // strictly ascending
    std::size_t s = 0;
    std::size_t payload_bits = 0;
};

/// Multi-level channel layout. Levels use pairwise-disjoint communities; a
/// further meta channel rides on bridge links between per-community
/// representatives. The meta channel never uses loops.
struct ChannelPlan {
    GraphMode mode;
    std::vector<ChannelLevel> levels;
    std::size_t meta_payload_bits = 0;
};

struct BoundLevel {
    SubCommunity sub;
    LinkOrder order;
};

/// Plan resolved against a seed bundle: per-level selections and link
/// orders (level i uses seeds SHA-256(seed || i) big-endian 32-bit; the
/// meta level uses tag 0xFFFFFFFF on the permutation seed), plus the
/// bridge link per meta slot. Every touched link is distinct across all
/// levels and the meta channel.
struct BoundPlan {
    ChannelPlan plan;
    GraphMode meta_mode;
    std::vector<BoundLevel> levels;
    std::vector<Link> meta_links;                                // all meta slots
    std::vector<std::pair<std::size_t, std::size_t>> meta_pairs; // community index pair per slot
};

/// trivial_orders bypasses the keyed permutations (test hook): level slots
/// follow the trivial enumeration and meta slots the pair enumeration.
BoundPlan bind_plan(const ChannelPlan& plan, const SeedBundle& seeds,
                    bool trivial_orders = false);

void encode_multi(SocialGraph& g, const BoundPlan& bound,
                  const std::vector<Ciphertext>& level_payloads, const Ciphertext& meta_payload);

struct MultiDecoded {
    std::vector<Ciphertext> levels;
    Ciphertext meta;
};

MultiDecoded decode_multi(const SocialGraph& g, const BoundPlan& bound);

/// Reads the meta channel back as a meta graph over the plan's levels.
MetaGraph meta_view(const SocialGraph& g, const BoundPlan& bound);

} // namespace ccc
