#pragma once

#include "ccc/bitvec.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccc {

using NodeId = std::uint32_t;

struct GraphMode {
    bool directed = false;
    bool loops = false;
    bool operator==(const GraphMode&) const = default;
};

GraphMode parse_mode(std::string_view name);
std::string format_mode(GraphMode mode);

enum class AttrDomain { boolean, presence };

struct DictEntry {
    std::size_t index = 0; // 1-based, contiguous
    std::string name;
    AttrDomain domain = AttrDomain::boolean;
    bool operator==(const DictEntry&) const = default;
};

/// Ordered attribute dictionary shared by both endpoints. Entry i defines
/// bit i-1 of every node's attribute vector.
class AttributeDictionary {
public:
    AttributeDictionary() = default;
    explicit AttributeDictionary(std::vector<DictEntry> entries);

    std::size_t size() const { return entries_.size(); }
    const DictEntry& at(std::size_t index1) const; // 1-based
    const std::vector<DictEntry>& entries() const { return entries_; }
    const DictEntry* find(std::string_view name) const;

    /// n boolean attributes named a1..an.
    static AttributeDictionary boolean_run(std::size_t n);

private:
    std::vector<DictEntry> entries_;
};

/// Node-labelled graph over stable integer ids. Ids are never reused after
/// removal. Undirected links are stored with the smaller endpoint first.
class SocialGraph {
public:
    explicit SocialGraph(GraphMode mode = {}) : mode_(mode) {}

    GraphMode mode() const { return mode_; }

    NodeId add_node(const BitVec& attrs);
    void add_node_with_id(NodeId id, const BitVec& attrs);
    void remove_node(NodeId id);
    bool has_node(NodeId id) const { return nodes_.count(id) != 0; }
    const BitVec& attributes(NodeId id) const;

    void set_link(NodeId a, NodeId b, bool present);
    bool has_link(NodeId a, NodeId b) const;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t link_count() const { return links_.size(); }

    std::vector<NodeId> node_ids() const;
    std::vector<std::pair<NodeId, NodeId>> links() const;

    /// |A| / |V|^2 when directed; |E| / C(|V|,2) when undirected, with |V|
    /// extra slots if loops are allowed. Needs >= 1 node (directed) or
    /// >= 2 nodes (undirected).
    double density() const;
    /// Density of the subgraph induced by `members` (all of which must exist).
    double induced_density(std::span<const NodeId> members) const;
    /// True iff the induced density strictly exceeds the whole graph's.
    bool is_community(std::span<const NodeId> members) const;

    /// Byte-stable dump: "N <id> <attr-hex|->" lines then "L <a> <b>" lines,
    /// each group sorted ascending.
    std::string canonical_text() const;

    bool operator==(const SocialGraph&) const = default;

private:
    std::uint64_t link_key(NodeId a, NodeId b) const;
    void check_link_args(NodeId a, NodeId b) const;

    GraphMode mode_;
    std::map<NodeId, BitVec> nodes_;
    std::set<std::uint64_t> links_;
    NodeId next_id_ = 0;
};

SocialGraph induced_subgraph(const SocialGraph& g, std::span<const NodeId> members);

/// Secret community: member ids, the attribute indices that characterise it,
/// and the digest of its serialized membership filter (empty until built).
struct CommunityDescriptor {
    std::vector<NodeId> members; // strictly ascending
    std::vector<std::size_t> attribute_subset;
    std::vector<std::uint8_t> bloom_digest;
};

CommunityDescriptor make_community(std::vector<NodeId> members);

/// 2^n distinct attribute vectors over n boolean attributes.
mpz_class attribute_pattern_count(unsigned n);

/// Number of partitions of an m-element set (Bell number), via the Bell
/// triangle recurrence.
mpz_class bell_number(unsigned m);

} // namespace ccc
