#pragma once

#include "ccc/graph.hpp"
#include "ccc/hyper.hpp"
#include "ccc/keychain.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccc {

/// Everything a receiving peer needs besides the master key: the nonce, the
/// carrier mode, the sub-community size, and paths (relative to the bundle
/// file) to the membership filter, the attribute dictionary and, for
/// multi-level channels, the channel plan.
struct ApiBundle {
    unsigned version = 1;
    Nonce nonce;
    GraphMode mode;
    std::size_t s = 0;
    std::string bloom_path;
    std::string dict_path;
    std::string plan_path; // empty when single-channel
};

ApiBundle parse_bundle(std::string_view text);
std::string format_bundle(const ApiBundle& b);

/// Checks that the referenced files exist under base_dir and parse.
void validate_bundle(const ApiBundle& b, const std::filesystem::path& base_dir);

/// Lines of "<index> <name> <boolean|presence>", indices 1..n in order.
AttributeDictionary parse_dictionary(std::string_view text);
std::string format_dictionary(const AttributeDictionary& dict);

/// Comma/whitespace separated ids; "a-b" spans an inclusive range.
std::vector<NodeId> parse_id_list(std::string_view text);
std::string format_id_list(std::span<const NodeId> ids);

/// Raw little-endian-file payload bytes; bit count given explicitly or
/// defaulting to the full file.
BitVec read_payload_file(const std::filesystem::path& p, std::optional<std::size_t> bits);
void write_payload_file(const std::filesystem::path& p, const BitVec& payload);

std::string read_text_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, std::string_view text);
std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& p);
void write_binary_file(const std::filesystem::path& p, std::span<const std::uint8_t> data);

struct PlanFileLevel {
    std::vector<NodeId> members;
    std::size_t s = 0;
    std::size_t bits = 0;
    std::string payload_path;
};

/// Channel plan file:
///   mode undirected
///   level members=1-5 s=5 bits=10 payload=c1.bin
///   meta bits=6 payload=meta.bin
/// The meta line is required (bits may be 0); payload paths are optional on
/// decode.
struct PlanFile {
    GraphMode mode;
    std::vector<PlanFileLevel> levels;
    std::size_t meta_bits = 0;
    std::string meta_payload_path;

    ChannelPlan to_plan() const;
};

PlanFile parse_plan_file(std::string_view text);

} // namespace ccc
