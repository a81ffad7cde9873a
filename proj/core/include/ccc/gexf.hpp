#pragma once

#include "ccc/graph.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccc {

enum class GexfAttrType { string_t, float_t, boolean_t };

struct GexfAttribute {
    std::string id;
    std::string title;
    GexfAttrType type = GexfAttrType::string_t;
    std::optional<std::string> default_value;
    bool operator==(const GexfAttribute&) const = default;
};

struct GexfAttvalue {
    std::string for_id;
    std::string value;
    bool operator==(const GexfAttvalue&) const = default;
};

struct GexfNode {
    std::string id;
    std::string label;
    std::vector<GexfAttvalue> attvalues;
    bool operator==(const GexfNode&) const = default;
};

struct GexfEdge {
    std::string source;
    std::string target;
    bool operator==(const GexfEdge&) const = default;
};

struct GexfDocument {
    std::string creator;
    std::string description;
    bool directed = false;
    std::vector<GexfAttribute> attributes; // node-class declarations
    std::vector<GexfNode> nodes;
    std::vector<GexfEdge> edges;
};

/// Strict mode rejects unsupported elements, unknown attvalue references and
/// dangling edge endpoints; lenient mode skips them. Malformed XML, missing
/// required fields, duplicate ids and contradictory edge types are errors in
/// both modes.
GexfDocument parse_gexf(std::string_view xml, bool strict = true);

/// Deterministic serializer: fixed header, sorted declarations, nodes and
/// edges (numeric-aware id order), stable indentation. Equal documents yield
/// identical bytes.
std::string emit_gexf(const GexfDocument& doc);

/// Content comparison independent of element order and labels: attribute
/// declarations, node ids with their resolved attvalues, and the edge set
/// (unordered endpoints when undirected).
bool same_structure(const GexfDocument& a, const GexfDocument& b);

/// Carrier import. Node ids must be decimal integers; every dictionary entry
/// must appear as a declared attribute with the matching type (boolean for
/// boolean entries, string for presence entries) and no declared attribute
/// may fall outside the dictionary.
SocialGraph graph_from_gexf(const GexfDocument& doc, const AttributeDictionary& dict,
                            GraphMode mode);

GexfDocument gexf_from_graph(const SocialGraph& g, const AttributeDictionary& dict,
                             std::string creator = "ccc", std::string description = "");

} // namespace ccc
