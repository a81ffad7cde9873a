#include "ccc/netsim.hpp"

#include "ccc/errors.hpp"
#include "ccc/selection.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

namespace ccc {

namespace {

/// Threshold Bernoulli on the top 53 bits, identical on every platform.
struct Sampler {
    std::mt19937_64 rng;

    explicit Sampler(std::uint64_t seed) : rng(seed) {}

    bool bernoulli(std::int64_t threshold53) {
        return static_cast<std::int64_t>(rng() >> 11) < threshold53;
    }

    static std::int64_t threshold(double p) {
        return std::llround(p * 9007199254740992.0); // 2^53
    }

    /// Uniform in [0, bound] by masked rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        unsigned width = static_cast<unsigned>(std::bit_width(bound));
        std::uint64_t mask = width >= 64 ? ~0ull : (1ull << width) - 1;
        std::uint64_t v;
        do {
            v = rng() & mask;
        } while (v > bound);
        return v;
    }

    void shuffle(std::vector<NodeId>& a) {
        for (std::size_t i = a.size(); i-- > 1;) std::swap(a[i], a[below(i)]);
    }
};

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

const char* yesno(bool b) { return b ? "true" : "false"; }

template <typename Fn>
void for_each_slot(GraphMode mode, std::size_t n, Fn&& fn) {
    if (mode.directed) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (a != b || mode.loops) fn(static_cast<NodeId>(a), static_cast<NodeId>(b));
    } else {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) fn(static_cast<NodeId>(a), static_cast<NodeId>(b));
            if (mode.loops) fn(static_cast<NodeId>(a), static_cast<NodeId>(a));
        }
    }
}

} // namespace

CoverSpec parse_cover_spec(std::string_view text) {
    CoverSpec spec;
    std::map<std::string, bool> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto eq = line.find('=');
        std::string key, value;
        if (eq != std::string::npos) {
            key = line.substr(0, eq);
            value = line.substr(eq + 1);
        } else {
            key = line;
        }
        auto trim = [](std::string& s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.pop_back();
        };
        trim(key);
        trim(value);
        if (key.empty()) continue;
        if (eq == std::string::npos)
            throw FormatError("cover spec line " + std::to_string(lineno) + ": expected key = value");
        try {
            if (key == "total_nodes")
                spec.total_nodes = std::stoull(value);
            else if (key == "community_nodes")
                spec.community_nodes = std::stoull(value);
            else if (key == "attributes")
                spec.attribute_count = std::stoull(value);
            else if (key == "background_probability")
                spec.background_probability = std::stod(value);
            else if (key == "community_density")
                spec.community_density = std::stod(value);
            else if (key == "mode")
                spec.mode = parse_mode(value);
            else if (key == "seed")
                spec.seed = std::stoull(value);
            else
                throw FormatError("cover spec: unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw FormatError("cover spec: bad value for '" + key + "'");
        } catch (const std::out_of_range&) {
            throw FormatError("cover spec: value out of range for '" + key + "'");
        }
        seen[key] = true;
    }
    for (const char* req : {"total_nodes", "community_nodes", "attributes",
                            "background_probability", "community_density"})
        if (!seen.count(req)) throw FormatError(std::string("cover spec: missing key '") + req + "'");
    return spec;
}

CoverResult generate_cover(const CoverSpec& spec) {
    if (spec.total_nodes < 2) throw InvalidArgument("cover: need at least 2 nodes");
    if (spec.community_nodes < 2)
        throw InvalidArgument("cover: need at least 2 community members");
    if (spec.community_nodes >= spec.total_nodes)
        throw InvalidArgument("cover: the community must be a proper subset of the network; a "
                              "community spanning every node cannot exceed the ambient density");
    if (spec.background_probability < 0.0 || spec.background_probability > 1.0 ||
        spec.community_density < 0.0 || spec.community_density > 1.0)
        throw InvalidArgument("cover: probabilities must lie in [0, 1]");
    if (!(spec.community_density > spec.background_probability))
        throw InvalidArgument("cover: community density must exceed the background probability");
    if (spec.attribute_count < 16)
        throw InvalidArgument("cover: need at least 16 attributes to keep vectors distinct");

    Sampler smp(spec.seed);

    SocialGraph g(spec.mode);
    std::map<std::vector<std::uint8_t>, NodeId> taken;
    for (std::size_t i = 0; i < spec.total_nodes; ++i) {
        BitVec attrs;
        for (int tries = 0;; ++tries) {
            if (tries > 1000) throw Error("cover: could not draw distinct attribute vectors");
            std::vector<std::uint8_t> raw((spec.attribute_count + 7) / 8);
            for (std::size_t bi = 0; bi < raw.size(); bi += 8) {
                std::uint64_t w = smp.rng();
                for (std::size_t k = 0; k < 8 && bi + k < raw.size(); ++k)
                    raw[bi + k] = static_cast<std::uint8_t>(w >> (8 * k));
            }
            attrs = BitVec::from_bytes(raw, spec.attribute_count);
            if (taken.emplace(attrs.bytes(), static_cast<NodeId>(i)).second) break;
        }
        g.add_node(attrs);
    }

    std::vector<NodeId> ids(spec.total_nodes);
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<NodeId>(i);
    smp.shuffle(ids);
    ids.resize(spec.community_nodes);
    std::sort(ids.begin(), ids.end());

    std::vector<bool> member(spec.total_nodes, false);
    for (NodeId id : ids) member[id] = true;

    std::int64_t th_bg = Sampler::threshold(spec.background_probability);
    std::int64_t th_comm = Sampler::threshold(spec.community_density);
    for_each_slot(spec.mode, spec.total_nodes, [&](NodeId a, NodeId b) {
        std::int64_t th = member[a] && member[b] ? th_comm : th_bg;
        if (smp.bernoulli(th)) g.set_link(a, b, true);
    });

    // Sampling noise can leave the planted community at or below the ambient
    // density in small configurations; densify deterministically if so.
    if (!g.is_community(ids)) {
        for (std::size_t a = 0; a < ids.size() && !g.is_community(ids); ++a)
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                if (g.has_link(ids[a], ids[b])) continue;
                g.set_link(ids[a], ids[b], true);
                if (g.is_community(ids)) break;
            }
        if (!g.is_community(ids)) throw Error("cover: could not densify the planted community");
    }

    return {std::move(g), make_community(std::move(ids)),
            AttributeDictionary::boolean_run(spec.attribute_count)};
}

std::string ScenarioReport::to_text() const {
    std::ostringstream o;
    o << "total_nodes " << total_nodes << '\n'
      << "community_nodes " << community_nodes << '\n'
      << "s " << s << '\n'
      << "payload_bits " << payload_bits << '\n'
      << "capacity_bits " << capacity_bits << '\n'
      << "edges_before " << edges_before << '\n'
      << "edges_after " << edges_after << '\n'
      << "links_changed " << links_changed << '\n'
      << "density_before " << fmt6(density_before) << '\n'
      << "density_after " << fmt6(density_after) << '\n'
      << "community_density_before " << fmt6(community_density_before) << '\n'
      << "community_density_after " << fmt6(community_density_after) << '\n'
      << "community_before " << yesno(community_before) << '\n'
      << "community_after " << yesno(community_after) << '\n'
      << "validated_members " << validated_members << '\n'
      << "membership_exact " << yesno(membership_exact) << '\n'
      << "roundtrip_exact " << yesno(roundtrip_exact) << '\n'
      << "gexf_bytes " << gexf_bytes << '\n'
      << "elapsed_ms " << fmt6(elapsed_ms) << '\n';
    return o.str();
}

ScenarioArtifacts run_scenario(const CoverSpec& spec, const Ciphertext& payload,
                               const MasterKey& key, const Nonce& nonce, std::size_t s,
                               bool trivial_order_flag) {
    auto t0 = std::chrono::steady_clock::now();

    CoverResult cover = generate_cover(spec);
    SeedBundle seeds = derive_seeds(nonce, key);

    std::vector<BitVec> member_attrs;
    member_attrs.reserve(cover.community.members.size());
    for (NodeId id : cover.community.members)
        member_attrs.push_back(cover.graph.attributes(id));
    BloomFilter filter = bloom_build(member_attrs, seeds.bloom_seed);
    auto ser = filter.serialize();
    Digest fd = sha256(ser);
    cover.community.bloom_digest.assign(fd.begin(), fd.end());

    SubCommunity sub = select_subcommunity(cover.community, s, seeds.sel_seed);
    LinkOrder order = trivial_order_flag ? trivial_order(sub, spec.mode)
                                         : permuted_order(sub, spec.mode, seeds.perm_seed);

    ScenarioReport rep;
    rep.total_nodes = spec.total_nodes;
    rep.community_nodes = spec.community_nodes;
    rep.s = s;
    rep.payload_bits = payload.size();
    rep.capacity_bits = order.links.size();
    rep.edges_before = cover.graph.link_count();
    rep.density_before = cover.graph.density();
    rep.community_density_before = cover.graph.induced_density(cover.community.members);
    rep.community_before = cover.graph.is_community(cover.community.members);

    Ciphertext pre = decode(cover.graph, order, order.links.size());
    encode(cover.graph, order, payload);
    Ciphertext padded = payload;
    while (padded.size() < order.links.size()) padded.push_back(false);
    rep.links_changed = pre.hamming_distance(padded);

    rep.edges_after = cover.graph.link_count();
    rep.density_after = cover.graph.density();
    rep.community_density_after = cover.graph.induced_density(cover.community.members);
    rep.community_after = cover.graph.is_community(cover.community.members);

    std::string gexf = emit_gexf(gexf_from_graph(cover.graph, cover.dict));
    rep.gexf_bytes = gexf.size();

    // Receiver: re-import and recover membership through the filter alone.
    SocialGraph g2 = graph_from_gexf(parse_gexf(gexf), cover.dict, spec.mode);
    std::vector<NodeId> validated;
    for (NodeId id : g2.node_ids())
        if (filter.query(g2.attributes(id))) validated.push_back(id);
    rep.validated_members = validated.size();
    rep.membership_exact = validated == cover.community.members;

    rep.roundtrip_exact = false;
    if (validated.size() >= s) {
        SubCommunity sub2 = select_subcommunity(make_community(validated), s, seeds.sel_seed);
        LinkOrder order2 = trivial_order_flag
                               ? trivial_order(sub2, spec.mode)
                               : permuted_order(sub2, spec.mode, seeds.perm_seed);
        Ciphertext decoded = decode(g2, order2, payload.size());
        rep.roundtrip_exact = decoded == payload;
    }

    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    return {std::move(rep),    std::move(cover.graph), std::move(cover.community),
            std::move(sub),    std::move(order),       std::move(filter),
            std::move(cover.dict), std::move(gexf)};
}

std::string ChurnReport::to_text() const {
    std::ostringstream o;
    o << "steps " << steps << '\n'
      << "examined " << examined << '\n'
      << "changed " << changed << '\n'
      << "protected_skipped " << protected_skipped << '\n'
      << "community_every_step " << yesno(community_every_step) << '\n'
      << "decode_exact_every_step " << yesno(decode_exact_every_step) << '\n'
      << "final_density " << fmt6(final_density) << '\n'
      << "final_community_density " << fmt6(final_community_density) << '\n';
    return o.str();
}

ChurnReport churn_run(SocialGraph& g, const CoverSpec& spec, const CommunityDescriptor& community,
                      const SubCommunity& sub, const LinkOrder& order, const Ciphertext& payload,
                      std::size_t steps, double rate, std::uint64_t seed) {
    if (rate < 0.0 || rate > 1.0) throw InvalidArgument("churn: rate must lie in [0, 1]");

    std::vector<bool> in_comm(spec.total_nodes, false);
    for (NodeId id : community.members) in_comm[id] = true;
    std::vector<bool> in_sub(spec.total_nodes, false);
    for (NodeId id : sub.members) in_sub[id] = true;

    Sampler smp(seed);
    std::int64_t th_rate = Sampler::threshold(rate);
    std::int64_t th_bg = Sampler::threshold(spec.background_probability);
    std::int64_t th_comm = Sampler::threshold(spec.community_density);

    ChurnReport rep;
    rep.steps = steps;
    rep.community_every_step = true;
    rep.decode_exact_every_step = true;

    for (std::size_t step = 0; step < steps; ++step) {
        for_each_slot(spec.mode, spec.total_nodes, [&](NodeId a, NodeId b) {
            if (!smp.bernoulli(th_rate)) return;
            if (in_sub[a] && in_sub[b]) {
                ++rep.protected_skipped;
                return;
            }
            ++rep.examined;
            bool want = smp.bernoulli(in_comm[a] && in_comm[b] ? th_comm : th_bg);
            if (want != g.has_link(a, b)) {
                g.set_link(a, b, want);
                ++rep.changed;
            }
        });
        if (!g.is_community(community.members)) rep.community_every_step = false;
        if (decode(g, order, payload.size()) != payload) rep.decode_exact_every_step = false;
    }

    rep.final_density = g.density();
    rep.final_community_density = g.induced_density(community.members);
    return rep;
}

} // namespace ccc
