#include "ccc/bundle.hpp"

#include "ccc/bloom.hpp"
#include "ccc/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ccc {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::string strip_comment(std::string line) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    return line;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw FormatError(std::string(what) + ": expected an unsigned integer, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::out_of_range&) {
        throw FormatError(std::string(what) + ": value out of range");
    }
}

} // namespace

ApiBundle parse_bundle(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw FormatError("bundle: empty file");
    auto head = split_ws(strip_comment(line));
    if (head.size() != 2 || head[0] != "ccc-bundle")
        throw FormatError("bundle: first line must be 'ccc-bundle <version>'");
    ApiBundle b;
    b.version = static_cast<unsigned>(parse_u64(head[1], "bundle version"));
    if (b.version != 1) throw FormatError("bundle: unsupported version " + head[1]);

    bool have_nonce = false, have_s = false, have_bloom = false, have_dict = false;
    while (std::getline(in, line)) {
        auto tok = split_ws(strip_comment(line));
        if (tok.empty()) continue;
        if (tok.size() != 2) throw FormatError("bundle: expected 'key value' lines");
        const std::string& k = tok[0];
        const std::string& v = tok[1];
        if (k == "nonce") {
            b.nonce = nonce_from_hex(v);
            have_nonce = true;
        } else if (k == "mode") {
            b.mode = parse_mode(v);
        } else if (k == "s") {
            b.s = parse_u64(v, "bundle s");
            have_s = true;
        } else if (k == "bloom") {
            b.bloom_path = v;
            have_bloom = true;
        } else if (k == "dict") {
            b.dict_path = v;
            have_dict = true;
        } else if (k == "plan") {
            b.plan_path = v;
        } else {
            throw FormatError("bundle: unknown key '" + k + "'");
        }
    }
    if (!have_nonce) throw FormatError("bundle: missing nonce");
    if (!have_bloom) throw FormatError("bundle: missing bloom path");
    if (!have_dict) throw FormatError("bundle: missing dict path");
    if (!have_s && b.plan_path.empty()) throw FormatError("bundle: missing s");
    return b;
}

std::string format_bundle(const ApiBundle& b) {
    std::ostringstream o;
    o << "ccc-bundle " << b.version << '\n';
    o << "nonce " << to_hex(b.nonce.bytes) << '\n';
    o << "mode " << format_mode(b.mode) << '\n';
    if (b.s > 0) o << "s " << b.s << '\n';
    o << "bloom " << b.bloom_path << '\n';
    o << "dict " << b.dict_path << '\n';
    if (!b.plan_path.empty()) o << "plan " << b.plan_path << '\n';
    return o.str();
}

void validate_bundle(const ApiBundle& b, const std::filesystem::path& base_dir) {
    auto bloom_file = base_dir / b.bloom_path;
    auto dict_file = base_dir / b.dict_path;
    if (!std::filesystem::exists(bloom_file))
        throw ValidationError("bundle: filter file not found: " + bloom_file.string());
    if (!std::filesystem::exists(dict_file))
        throw ValidationError("bundle: dictionary file not found: " + dict_file.string());
    BloomFilter::deserialize(read_binary_file(bloom_file));
    parse_dictionary(read_text_file(dict_file));
    if (!b.plan_path.empty()) {
        auto plan_file = base_dir / b.plan_path;
        if (!std::filesystem::exists(plan_file))
            throw ValidationError("bundle: plan file not found: " + plan_file.string());
        parse_plan_file(read_text_file(plan_file));
    }
}

AttributeDictionary parse_dictionary(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<DictEntry> entries;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = split_ws(strip_comment(line));
        if (tok.empty()) continue;
        if (tok.size() != 3)
            throw FormatError("dictionary line " + std::to_string(lineno) +
                              ": expected '<index> <name> <boolean|presence>'");
        DictEntry e;
        e.index = parse_u64(tok[0], "dictionary index");
        e.name = tok[1];
        if (tok[2] == "boolean")
            e.domain = AttrDomain::boolean;
        else if (tok[2] == "presence")
            e.domain = AttrDomain::presence;
        else
            throw FormatError("dictionary line " + std::to_string(lineno) +
                              ": domain must be boolean or presence");
        entries.push_back(std::move(e));
    }
    try {
        return AttributeDictionary(std::move(entries));
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("dictionary: ") + e.what());
    }
}

std::string format_dictionary(const AttributeDictionary& dict) {
    std::ostringstream o;
    for (const auto& e : dict.entries())
        o << e.index << ' ' << e.name << ' '
          << (e.domain == AttrDomain::boolean ? "boolean" : "presence") << '\n';
    return o.str();
}

std::vector<NodeId> parse_id_list(std::string_view text) {
    std::string norm;
    norm.reserve(text.size());
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        norm += strip_comment(line);
        norm.push_back(' ');
    }
    std::replace(norm.begin(), norm.end(), ',', ' ');
    std::vector<NodeId> out;
    for (const std::string& tok : split_ws(norm)) {
        auto dash = tok.find('-');
        if (dash != std::string::npos && dash > 0) {
            std::uint64_t lo = parse_u64(tok.substr(0, dash), "id range");
            std::uint64_t hi = parse_u64(tok.substr(dash + 1), "id range");
            if (lo > hi) throw FormatError("id range '" + tok + "' is reversed");
            if (hi - lo > 10'000'000) throw FormatError("id range '" + tok + "' is too wide");
            for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(static_cast<NodeId>(v));
        } else {
            std::uint64_t v = parse_u64(tok, "id");
            if (v > 0xFFFFFFFFull) throw FormatError("id out of range: " + tok);
            out.push_back(static_cast<NodeId>(v));
        }
    }
    return out;
}

std::string format_id_list(std::span<const NodeId> ids) {
    std::ostringstream o;
    for (NodeId id : ids) o << id << '\n';
    return o.str();
}

BitVec read_payload_file(const std::filesystem::path& p, std::optional<std::size_t> bits) {
    auto data = read_binary_file(p);
    std::size_t n = bits.value_or(data.size() * 8);
    if (n > data.size() * 8)
        throw FormatError("payload file " + p.string() + " holds only " +
                          std::to_string(data.size() * 8) + " bits, " + std::to_string(n) +
                          " requested");
    return BitVec::from_bytes(data, n);
}

void write_payload_file(const std::filesystem::path& p, const BitVec& payload) {
    write_binary_file(p, payload.bytes());
}

std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw FormatError("cannot open " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& p, std::string_view text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + p.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw FormatError("write failed for " + p.string());
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw FormatError("cannot open " + p.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    return data;
}

void write_binary_file(const std::filesystem::path& p, std::span<const std::uint8_t> data) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + p.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw FormatError("write failed for " + p.string());
}

ChannelPlan PlanFile::to_plan() const {
    ChannelPlan plan;
    plan.mode = mode;
    for (const auto& lvl : levels) plan.levels.push_back({lvl.members, lvl.s, lvl.bits});
    plan.meta_payload_bits = meta_bits;
    return plan;
}

PlanFile parse_plan_file(std::string_view text) {
    PlanFile pf;
    bool have_mode = false, have_meta = false;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;

    auto kv = [&](const std::string& tok) -> std::pair<std::string, std::string> {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw FormatError("plan line " + std::to_string(lineno) + ": expected key=value, got '" +
                              tok + "'");
        return {tok.substr(0, eq), tok.substr(eq + 1)};
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto tok = split_ws(strip_comment(line));
        if (tok.empty()) continue;
        if (tok[0] == "mode") {
            if (tok.size() != 2) throw FormatError("plan: mode line takes one value");
            pf.mode = parse_mode(tok[1]);
            have_mode = true;
        } else if (tok[0] == "level") {
            PlanFileLevel lvl;
            bool have_members = false, have_s = false, have_bits = false;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                auto [k, v] = kv(tok[i]);
                if (k == "members") {
                    lvl.members = parse_id_list(v);
                    have_members = true;
                } else if (k == "s") {
                    lvl.s = parse_u64(v, "plan s");
                    have_s = true;
                } else if (k == "bits") {
                    lvl.bits = parse_u64(v, "plan bits");
                    have_bits = true;
                } else if (k == "payload") {
                    lvl.payload_path = v;
                } else {
                    throw FormatError("plan: unknown level key '" + k + "'");
                }
            }
            if (!have_members || !have_bits)
                throw FormatError("plan line " + std::to_string(lineno) +
                                  ": level needs members= and bits=");
            if (!have_s) lvl.s = lvl.members.size();
            pf.levels.push_back(std::move(lvl));
        } else if (tok[0] == "meta") {
            bool have_bits = false;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                auto [k, v] = kv(tok[i]);
                if (k == "bits") {
                    pf.meta_bits = parse_u64(v, "meta bits");
                    have_bits = true;
                } else if (k == "payload") {
                    pf.meta_payload_path = v;
                } else {
                    throw FormatError("plan: unknown meta key '" + k + "'");
                }
            }
            if (!have_bits) throw FormatError("plan: meta needs bits=");
            have_meta = true;
        } else {
            throw FormatError("plan line " + std::to_string(lineno) + ": unknown record '" +
                              tok[0] + "'");
        }
    }
    if (!have_mode) throw FormatError("plan: missing mode line");
    if (pf.levels.empty()) throw FormatError("plan: needs at least one level");
    if (!have_meta) throw FormatError("plan: missing meta line");
    return pf;
}

} // namespace ccc
