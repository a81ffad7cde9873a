#include "ccc/graph.hpp"

#include "ccc/errors.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace ccc {

GraphMode parse_mode(std::string_view name) {
    if (name == "undirected") return {false, false};
    if (name == "undirected-loops") return {false, true};
    if (name == "directed") return {true, false};
    if (name == "directed-loops") return {true, true};
    throw InvalidArgument("unknown graph mode: " + std::string(name));
}

std::string format_mode(GraphMode mode) {
    std::string s = mode.directed ? "directed" : "undirected";
    if (mode.loops) s += "-loops";
    return s;
}

AttributeDictionary::AttributeDictionary(std::vector<DictEntry> entries)
    : entries_(std::move(entries)) {
    std::unordered_set<std::string> names;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].index != i + 1)
            throw InvalidArgument("dictionary indices must run 1..n in order");
        if (entries_[i].name.empty() || !names.insert(entries_[i].name).second)
            throw InvalidArgument("dictionary names must be unique and non-empty");
    }
}

const DictEntry& AttributeDictionary::at(std::size_t index1) const {
    if (index1 == 0 || index1 > entries_.size())
        throw InvalidArgument("dictionary index out of range");
    return entries_[index1 - 1];
}

const DictEntry* AttributeDictionary::find(std::string_view name) const {
    for (const auto& e : entries_)
        if (e.name == name) return &e;
    return nullptr;
}

AttributeDictionary AttributeDictionary::boolean_run(std::size_t n) {
    std::vector<DictEntry> es;
    es.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        es.push_back({i, "a" + std::to_string(i), AttrDomain::boolean});
    return AttributeDictionary(std::move(es));
}

NodeId SocialGraph::add_node(const BitVec& attrs) {
    NodeId id = next_id_++;
    nodes_.emplace(id, attrs);
    return id;
}

void SocialGraph::add_node_with_id(NodeId id, const BitVec& attrs) {
    if (!nodes_.emplace(id, attrs).second)
        throw InvalidArgument("node id already present: " + std::to_string(id));
    if (id >= next_id_) next_id_ = id + 1;
}

void SocialGraph::remove_node(NodeId id) {
    if (nodes_.erase(id) == 0)
        throw InvalidArgument("no such node: " + std::to_string(id));
    for (auto it = links_.begin(); it != links_.end();) {
        NodeId a = static_cast<NodeId>(*it >> 32);
        NodeId b = static_cast<NodeId>(*it & 0xFFFFFFFFu);
        if (a == id || b == id)
            it = links_.erase(it);
        else
            ++it;
    }
}

const BitVec& SocialGraph::attributes(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw InvalidArgument("no such node: " + std::to_string(id));
    return it->second;
}

std::uint64_t SocialGraph::link_key(NodeId a, NodeId b) const {
    if (!mode_.directed && a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) << 32 | b;
}

void SocialGraph::check_link_args(NodeId a, NodeId b) const {
    if (!has_node(a)) throw InvalidArgument("no such node: " + std::to_string(a));
    if (!has_node(b)) throw InvalidArgument("no such node: " + std::to_string(b));
    if (a == b && !mode_.loops) throw InvalidArgument("loops are not allowed in this mode");
}

void SocialGraph::set_link(NodeId a, NodeId b, bool present) {
    check_link_args(a, b);
    if (present)
        links_.insert(link_key(a, b));
    else
        links_.erase(link_key(a, b));
}

bool SocialGraph::has_link(NodeId a, NodeId b) const {
    check_link_args(a, b);
    return links_.count(link_key(a, b)) != 0;
}

std::vector<NodeId> SocialGraph::node_ids() const {
    std::vector<NodeId> ids;
    ids.reserve(nodes_.size());
    for (const auto& [id, _] : nodes_) ids.push_back(id);
    return ids;
}

std::vector<std::pair<NodeId, NodeId>> SocialGraph::links() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(links_.size());
    for (std::uint64_t k : links_)
        out.emplace_back(static_cast<NodeId>(k >> 32), static_cast<NodeId>(k & 0xFFFFFFFFu));
    return out;
}

namespace {

/// Density denominator: |V|^2 for digraphs regardless of loop policy (the
/// worked ratios require it), C(n,2) for simple graphs plus n when loops
/// are allowed.
double density_slots(GraphMode mode, std::size_t n) {
    double nn = static_cast<double>(n);
    if (mode.directed) {
        if (n < 1) throw InvalidArgument("density: empty node set");
        return nn * nn;
    }
    if (n < 2) throw InvalidArgument("density: an undirected graph needs >= 2 nodes");
    double pairs = nn * (nn - 1.0) / 2.0;
    return mode.loops ? pairs + nn : pairs;
}

} // namespace

double SocialGraph::density() const {
    return static_cast<double>(links_.size()) / density_slots(mode_, nodes_.size());
}

double SocialGraph::induced_density(std::span<const NodeId> members) const {
    std::unordered_set<NodeId> in;
    for (NodeId id : members) {
        if (!has_node(id)) throw InvalidArgument("no such node: " + std::to_string(id));
        in.insert(id);
    }
    double slots = density_slots(mode_, in.size());
    std::size_t count = 0;
    for (std::uint64_t k : links_) {
        NodeId a = static_cast<NodeId>(k >> 32);
        NodeId b = static_cast<NodeId>(k & 0xFFFFFFFFu);
        if (in.count(a) && in.count(b)) ++count;
    }
    return static_cast<double>(count) / slots;
}

bool SocialGraph::is_community(std::span<const NodeId> members) const {
    return induced_density(members) > density();
}

std::string SocialGraph::canonical_text() const {
    std::ostringstream out;
    for (const auto& [id, attrs] : nodes_)
        out << "N " << id << ' ' << attrs.to_hex() << '\n';
    for (std::uint64_t k : links_)
        out << "L " << static_cast<NodeId>(k >> 32) << ' ' << static_cast<NodeId>(k & 0xFFFFFFFFu)
            << '\n';
    return out.str();
}

SocialGraph induced_subgraph(const SocialGraph& g, std::span<const NodeId> members) {
    SocialGraph out(g.mode());
    std::set<NodeId> keep(members.begin(), members.end());
    for (NodeId id : keep) out.add_node_with_id(id, g.attributes(id));
    for (auto [a, b] : g.links())
        if (keep.count(a) && keep.count(b)) out.set_link(a, b, true);
    return out;
}

CommunityDescriptor make_community(std::vector<NodeId> members) {
    if (members.empty()) throw InvalidArgument("community must have at least one member");
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw InvalidArgument("community members must be distinct");
    CommunityDescriptor c;
    c.members = std::move(members);
    return c;
}

mpz_class attribute_pattern_count(unsigned n) {
    mpz_class r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), n);
    return r;
}

mpz_class bell_number(unsigned m) {
    if (m == 0) return 1;
    std::vector<mpz_class> row{1};
    for (unsigned i = 1; i < m; ++i) {
        std::vector<mpz_class> next;
        next.reserve(i + 1);
        next.push_back(row.back());
        for (const mpz_class& v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.back();
}

} // namespace ccc
