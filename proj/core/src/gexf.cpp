#include "ccc/gexf.hpp"

#include "ccc/errors.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace ccc {

namespace {

namespace bpt = boost::property_tree;

/// Numbers sort numerically and before everything else; ties and
/// non-numbers fall back to string order.
struct IdLess {
    static std::tuple<int, unsigned long long, std::string_view> key(std::string_view s) {
        if (!s.empty() && s.size() <= 18 &&
            std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            unsigned long long v = 0;
            for (char c : s) v = v * 10 + static_cast<unsigned>(c - '0');
            return {0, v, s};
        }
        return {1, 0, s};
    }
    bool operator()(std::string_view a, std::string_view b) const { return key(a) < key(b); }
};

GexfAttrType parse_attr_type(const std::string& t) {
    if (t == "string") return GexfAttrType::string_t;
    if (t == "float") return GexfAttrType::float_t;
    if (t == "boolean") return GexfAttrType::boolean_t;
    throw FormatError("unsupported attribute type: " + t);
}

const char* attr_type_name(GexfAttrType t) {
    switch (t) {
    case GexfAttrType::string_t: return "string";
    case GexfAttrType::float_t: return "float";
    case GexfAttrType::boolean_t: return "boolean";
    }
    return "string";
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::optional<std::string> xml_attr(const bpt::ptree& el, const char* name) {
    if (auto v = el.get_optional<std::string>(std::string("<xmlattr>.") + name))
        return *v;
    return std::nullopt;
}

std::string require_attr(const bpt::ptree& el, const char* name, const char* where) {
    auto v = xml_attr(el, name);
    if (!v) throw FormatError(std::string(where) + " is missing required attribute '" + name + "'");
    return *v;
}

bool skippable(const std::string& name) {
    return name == "<xmlattr>" || name == "<xmlcomment>" || name == "<xmltext>";
}

void reject_unknown(bool strict, const std::string& element, const std::string& inside) {
    if (strict)
        throw FormatError("unsupported element <" + element + "> inside <" + inside + ">");
}

void parse_attributes_block(const bpt::ptree& el, bool strict, GexfDocument& doc,
                            std::unordered_set<std::string>& attr_ids) {
    std::string cls = xml_attr(el, "class").value_or("node");
    if (cls != "node") {
        reject_unknown(strict, "attributes class=\"" + cls + "\"", "graph");
        return;
    }
    for (const auto& [name, child] : el) {
        if (skippable(name)) continue;
        if (name != "attribute") {
            reject_unknown(strict, name, "attributes");
            continue;
        }
        GexfAttribute a;
        a.id = require_attr(child, "id", "<attribute>");
        a.title = require_attr(child, "title", "<attribute>");
        std::string type = require_attr(child, "type", "<attribute>");
        try {
            a.type = parse_attr_type(type);
        } catch (const FormatError&) {
            if (strict) throw;
            continue;
        }
        if (auto d = child.get_optional<std::string>("default")) a.default_value = *d;
        if (!attr_ids.insert(a.id).second)
            throw FormatError("duplicate attribute id: " + a.id);
        doc.attributes.push_back(std::move(a));
    }
}

GexfNode parse_node(const bpt::ptree& el, bool strict,
                    const std::unordered_set<std::string>& attr_ids) {
    GexfNode n;
    n.id = require_attr(el, "id", "<node>");
    n.label = xml_attr(el, "label").value_or(n.id);
    for (const auto& [name, child] : el) {
        if (skippable(name)) continue;
        if (name != "attvalues") {
            reject_unknown(strict, name, "node");
            continue;
        }
        for (const auto& [vname, vel] : child) {
            if (skippable(vname)) continue;
            if (vname != "attvalue") {
                reject_unknown(strict, vname, "attvalues");
                continue;
            }
            GexfAttvalue av;
            av.for_id = require_attr(vel, "for", "<attvalue>");
            av.value = require_attr(vel, "value", "<attvalue>");
            if (!attr_ids.count(av.for_id)) {
                if (strict)
                    throw FormatError("attvalue references undeclared attribute: " + av.for_id);
                continue;
            }
            n.attvalues.push_back(std::move(av));
        }
    }
    return n;
}

} // namespace

GexfDocument parse_gexf(std::string_view xml, bool strict) {
    bpt::ptree tree;
    std::istringstream in{std::string(xml)};
    try {
        bpt::read_xml(in, tree,
                      bpt::xml_parser::trim_whitespace | bpt::xml_parser::no_comments);
    } catch (const bpt::xml_parser_error& e) {
        throw FormatError(std::string("malformed xml: ") + e.what());
    }

    auto root = tree.get_child_optional("gexf");
    if (!root) throw FormatError("missing <gexf> root element");

    GexfDocument doc;
    const bpt::ptree* graph = nullptr;
    for (const auto& [name, child] : *root) {
        if (skippable(name)) continue;
        if (name == "meta") {
            doc.creator = child.get<std::string>("creator", "");
            doc.description = child.get<std::string>("description", "");
        } else if (name == "graph") {
            if (graph) throw FormatError("multiple <graph> elements");
            graph = &child;
        } else {
            reject_unknown(strict, name, "gexf");
        }
    }
    if (!graph) throw FormatError("missing <graph> element");

    std::string edgetype = xml_attr(*graph, "defaultedgetype").value_or("undirected");
    if (edgetype == "directed")
        doc.directed = true;
    else if (edgetype == "undirected")
        doc.directed = false;
    else
        throw FormatError("unsupported defaultedgetype: " + edgetype);

    std::unordered_set<std::string> attr_ids;
    std::unordered_set<std::string> node_ids;
    const char* own_type = doc.directed ? "directed" : "undirected";

    for (const auto& [name, child] : *graph) {
        if (skippable(name)) continue;
        if (name == "attributes") {
            parse_attributes_block(child, strict, doc, attr_ids);
        } else if (name == "nodes") {
            for (const auto& [nname, nel] : child) {
                if (skippable(nname)) continue;
                if (nname != "node") {
                    reject_unknown(strict, nname, "nodes");
                    continue;
                }
                GexfNode n = parse_node(nel, strict, attr_ids);
                if (!node_ids.insert(n.id).second)
                    throw FormatError("duplicate node id: " + n.id);
                doc.nodes.push_back(std::move(n));
            }
        } else if (name == "edges") {
            for (const auto& [ename, eel] : child) {
                if (skippable(ename)) continue;
                if (ename != "edge") {
                    reject_unknown(strict, ename, "edges");
                    continue;
                }
                GexfEdge e;
                e.source = require_attr(eel, "source", "<edge>");
                e.target = require_attr(eel, "target", "<edge>");
                if (auto t = xml_attr(eel, "type"); t && *t != own_type)
                    throw FormatError("edge type '" + *t + "' contradicts defaultedgetype");
                if (!node_ids.count(e.source) || !node_ids.count(e.target)) {
                    if (strict)
                        throw FormatError("edge references unknown node: " + e.source + " -> " +
                                          e.target);
                    continue;
                }
                doc.edges.push_back(std::move(e));
            }
        } else {
            reject_unknown(strict, name, "graph");
        }
    }
    return doc;
}

std::string emit_gexf(const GexfDocument& doc) {
    std::vector<const GexfAttribute*> attrs;
    for (const auto& a : doc.attributes) attrs.push_back(&a);
    std::sort(attrs.begin(), attrs.end(),
              [](const GexfAttribute* a, const GexfAttribute* b) { return IdLess{}(a->id, b->id); });

    std::vector<const GexfNode*> nodes;
    for (const auto& n : doc.nodes) nodes.push_back(&n);
    std::sort(nodes.begin(), nodes.end(),
              [](const GexfNode* a, const GexfNode* b) { return IdLess{}(a->id, b->id); });

    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(doc.edges.size());
    for (const auto& e : doc.edges) {
        std::string s = e.source, t = e.target;
        if (!doc.directed && IdLess{}(t, s)) std::swap(s, t);
        edges.emplace_back(std::move(s), std::move(t));
    }
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return IdLess{}(a.first, b.first);
        return IdLess{}(a.second, b.second);
    });

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
    if (!doc.creator.empty() || !doc.description.empty()) {
        out << "  <meta>\n";
        if (!doc.creator.empty())
            out << "    <creator>" << xml_escape(doc.creator) << "</creator>\n";
        if (!doc.description.empty())
            out << "    <description>" << xml_escape(doc.description) << "</description>\n";
        out << "  </meta>\n";
    }
    out << "  <graph defaultedgetype=\"" << (doc.directed ? "directed" : "undirected")
        << "\">\n";
    if (!attrs.empty()) {
        out << "    <attributes class=\"node\">\n";
        for (const auto* a : attrs) {
            out << "      <attribute id=\"" << xml_escape(a->id) << "\" title=\""
                << xml_escape(a->title) << "\" type=\"" << attr_type_name(a->type) << "\"";
            if (a->default_value) {
                out << ">\n        <default>" << xml_escape(*a->default_value)
                    << "</default>\n      </attribute>\n";
            } else {
                out << "/>\n";
            }
        }
        out << "    </attributes>\n";
    }
    out << "    <nodes>\n";
    for (const auto* n : nodes) {
        out << "      <node id=\"" << xml_escape(n->id) << "\" label=\"" << xml_escape(n->label)
            << "\"";
        if (n->attvalues.empty()) {
            out << "/>\n";
            continue;
        }
        std::vector<const GexfAttvalue*> avs;
        for (const auto& av : n->attvalues) avs.push_back(&av);
        std::sort(avs.begin(), avs.end(), [](const GexfAttvalue* a, const GexfAttvalue* b) {
            return IdLess{}(a->for_id, b->for_id);
        });
        out << ">\n        <attvalues>\n";
        for (const auto* av : avs)
            out << "          <attvalue for=\"" << xml_escape(av->for_id) << "\" value=\""
                << xml_escape(av->value) << "\"/>\n";
        out << "        </attvalues>\n      </node>\n";
    }
    out << "    </nodes>\n";
    out << "    <edges>\n";
    for (const auto& [s, t] : edges)
        out << "      <edge source=\"" << xml_escape(s) << "\" target=\"" << xml_escape(t)
            << "\"/>\n";
    out << "    </edges>\n";
    out << "  </graph>\n";
    out << "</gexf>\n";
    return out.str();
}

bool same_structure(const GexfDocument& a, const GexfDocument& b) {
    if (a.directed != b.directed) return false;

    auto attr_map = [](const GexfDocument& d) {
        std::map<std::string, std::tuple<std::string, GexfAttrType, std::optional<std::string>>> m;
        for (const auto& x : d.attributes) m[x.id] = {x.title, x.type, x.default_value};
        return m;
    };
    if (attr_map(a) != attr_map(b)) return false;

    auto node_map = [](const GexfDocument& d) {
        std::map<std::string, std::map<std::string, std::string>> m;
        for (const auto& n : d.nodes) {
            auto& vals = m[n.id];
            for (const auto& av : n.attvalues) vals[av.for_id] = av.value;
        }
        return m;
    };
    if (node_map(a) != node_map(b)) return false;

    auto edge_set = [](const GexfDocument& d) {
        std::multiset<std::pair<std::string, std::string>> m;
        for (const auto& e : d.edges) {
            std::string s = e.source, t = e.target;
            if (!d.directed && IdLess{}(t, s)) std::swap(s, t);
            m.emplace(std::move(s), std::move(t));
        }
        return m;
    };
    return edge_set(a) == edge_set(b);
}

namespace {

NodeId parse_node_id(const std::string& s) {
    if (s.empty() || s.size() > 10 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw FormatError("node id is not an unsigned integer: " + s);
    unsigned long long v = 0;
    for (char c : s) v = v * 10 + static_cast<unsigned>(c - '0');
    if (v > 0xFFFFFFFFull) throw FormatError("node id out of range: " + s);
    return static_cast<NodeId>(v);
}

bool boolean_value(const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw FormatError("boolean attvalue must be 'true' or 'false', got '" + v + "'");
}

} // namespace

SocialGraph graph_from_gexf(const GexfDocument& doc, const AttributeDictionary& dict,
                            GraphMode mode) {
    if (doc.directed != mode.directed)
        throw ValidationError("document edge direction does not match requested mode");

    // gexf attribute id -> dictionary slot (0-based), plus per-slot defaults
    std::unordered_map<std::string, std::size_t> slot_of;
    std::vector<bool> defaults(dict.size(), false);
    std::unordered_map<std::string, const GexfAttribute*> by_title;
    for (const auto& a : doc.attributes) {
        if (!by_title.emplace(a.title, &a).second)
            throw ValidationError("duplicate attribute title: " + a.title);
    }
    for (const auto& e : dict.entries()) {
        auto it = by_title.find(e.name);
        if (it == by_title.end())
            throw ValidationError("attribute missing from document: " + e.name);
        const GexfAttribute& a = *it->second;
        GexfAttrType want =
            e.domain == AttrDomain::boolean ? GexfAttrType::boolean_t : GexfAttrType::string_t;
        if (a.type != want)
            throw ValidationError("attribute type mismatch for '" + e.name + "'");
        slot_of[a.id] = e.index - 1;
        if (a.default_value) {
            defaults[e.index - 1] = e.domain == AttrDomain::boolean
                                        ? boolean_value(*a.default_value)
                                        : !a.default_value->empty();
        }
    }
    for (const auto& a : doc.attributes)
        if (!slot_of.count(a.id))
            throw ValidationError("attribute not in dictionary: " + a.title);

    SocialGraph g(mode);
    for (const auto& n : doc.nodes) {
        NodeId id = parse_node_id(n.id);
        BitVec bits(dict.size());
        for (std::size_t i = 0; i < dict.size(); ++i) bits.set(i, defaults[i]);
        for (const auto& av : n.attvalues) {
            auto it = slot_of.find(av.for_id);
            if (it == slot_of.end())
                throw ValidationError("attvalue outside dictionary: " + av.for_id);
            const DictEntry& e = dict.at(it->second + 1);
            bool v = e.domain == AttrDomain::boolean ? boolean_value(av.value)
                                                     : !av.value.empty();
            bits.set(it->second, v);
        }
        try {
            g.add_node_with_id(id, bits);
        } catch (const InvalidArgument&) {
            throw FormatError("duplicate node id: " + n.id);
        }
    }
    for (const auto& e : doc.edges) {
        NodeId s = parse_node_id(e.source);
        NodeId t = parse_node_id(e.target);
        if (!g.has_node(s) || !g.has_node(t))
            throw FormatError("edge references unknown node: " + e.source + " -> " + e.target);
        if (s == t && !mode.loops)
            throw ValidationError("document contains a loop but the mode forbids loops");
        g.set_link(s, t, true);
    }
    return g;
}

GexfDocument gexf_from_graph(const SocialGraph& g, const AttributeDictionary& dict,
                             std::string creator, std::string description) {
    GexfDocument doc;
    doc.creator = std::move(creator);
    doc.description = std::move(description);
    doc.directed = g.mode().directed;
    for (const auto& e : dict.entries()) {
        GexfAttribute a;
        a.id = std::to_string(e.index);
        a.title = e.name;
        a.type = e.domain == AttrDomain::boolean ? GexfAttrType::boolean_t : GexfAttrType::string_t;
        doc.attributes.push_back(std::move(a));
    }
    for (NodeId id : g.node_ids()) {
        GexfNode n;
        n.id = std::to_string(id);
        n.label = n.id;
        const BitVec& bits = g.attributes(id);
        std::size_t limit = std::min<std::size_t>(bits.size(), dict.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (!bits.get(i)) continue;
            const DictEntry& e = dict.at(i + 1);
            n.attvalues.push_back(
                {std::to_string(e.index), e.domain == AttrDomain::boolean ? "true" : "1"});
        }
        doc.nodes.push_back(std::move(n));
    }
    for (auto [a, b] : g.links()) doc.edges.push_back({std::to_string(a), std::to_string(b)});
    return doc;
}

} // namespace ccc
