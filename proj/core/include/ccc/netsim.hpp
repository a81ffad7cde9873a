#pragma once

#include "ccc/bloom.hpp"
#include "ccc/gexf.hpp"
#include "ccc/linkcodec.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace ccc {

/// Parameters for a synthetic cover network: a denser planted community on
/// top of ambient background links, with random per-node attribute vectors.
struct CoverSpec {
    std::size_t total_nodes = 0;
    std::size_t community_nodes = 0;
    std::size_t attribute_count = 0;
    double background_probability = 0.0;
    double community_density = 0.0; // must exceed background_probability
    GraphMode mode;
    std::uint64_t seed = 1;
};

/// "key = value" lines; '#' starts a comment. Required keys: total_nodes,
/// community_nodes, attributes, background_probability, community_density.
/// Optional: mode (default undirected), seed (default 1).
CoverSpec parse_cover_spec(std::string_view text);

struct CoverResult {
    SocialGraph graph;
    CommunityDescriptor community;
    AttributeDictionary dict;
};

/// Deterministic for a fixed spec on any platform: mt19937_64 plus explicit
/// threshold sampling, no distribution objects.
CoverResult generate_cover(const CoverSpec& spec);

struct ScenarioReport {
    std::size_t total_nodes = 0;
    std::size_t community_nodes = 0;
    std::size_t s = 0;
    std::size_t payload_bits = 0;
    std::size_t capacity_bits = 0;
    std::size_t edges_before = 0;
    std::size_t edges_after = 0;
    std::size_t links_changed = 0;
    double density_before = 0.0;
    double density_after = 0.0;
    double community_density_before = 0.0;
    double community_density_after = 0.0;
    bool community_before = false;
    bool community_after = false;
    std::size_t validated_members = 0;
    bool membership_exact = false;
    bool roundtrip_exact = false;
    std::size_t gexf_bytes = 0;
    double elapsed_ms = 0.0;

    std::string to_text() const;
};

struct ScenarioArtifacts {
    ScenarioReport report;
    SocialGraph carrier; // post-encode
    CommunityDescriptor community;
    SubCommunity sub;
    LinkOrder order;
    BloomFilter filter;
    AttributeDictionary dict;
    std::string gexf;
};

/// Full sender-to-receiver pass: generate the cover, derive seeds, build the
/// membership filter, select, encode, export GEXF, then re-import and decode
/// through filter validation alone.
ScenarioArtifacts run_scenario(const CoverSpec& spec, const Ciphertext& payload,
                               const MasterKey& key, const Nonce& nonce, std::size_t s,
                               bool trivial_order_flag = false);

struct ChurnReport {
    std::size_t steps = 0;
    std::size_t examined = 0;
    std::size_t changed = 0;
    std::size_t protected_skipped = 0;
    bool community_every_step = false;
    bool decode_exact_every_step = false;
    double final_density = 0.0;
    double final_community_density = 0.0;

    std::string to_text() const;
};

/// Background turnover: each step re-samples a `rate` fraction of all link
/// slots from their generative probability, never touching slots between
/// sub-community members, and checks the community property and an exact
/// decode after every step.
ChurnReport churn_run(SocialGraph& g, const CoverSpec& spec, const CommunityDescriptor& community,
                      const SubCommunity& sub, const LinkOrder& order, const Ciphertext& payload,
                      std::size_t steps, double rate, std::uint64_t seed);

} // namespace ccc
