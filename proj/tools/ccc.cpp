// Command line front end: key generation, membership filters, selection,
// capacity queries, encode/decode, multi-level channels, cover-network
// simulation and churn.
//
// Exit codes: 0 ok, 1 usage, 2 format, 3 capacity, 4 key/validation,
// 5 internal.

#include "ccc/bloom.hpp"
#include "ccc/bundle.hpp"
#include "ccc/errors.hpp"
#include "ccc/gexf.hpp"
#include "ccc/hyper.hpp"
#include "ccc/keychain.hpp"
#include "ccc/linkcodec.hpp"
#include "ccc/netsim.hpp"
#include "ccc/selection.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace ccc;

namespace {

struct CmdFailure {
    int code;
    std::string message;
};

SocialGraph load_carrier(const std::string& path, const AttributeDictionary& dict,
                         GraphMode mode, bool strict) {
    GexfDocument doc = parse_gexf(read_text_file(path), strict);
    return graph_from_gexf(doc, dict, mode);
}

std::vector<NodeId> members_from_filter(const SocialGraph& g, const BloomFilter& filter) {
    std::vector<NodeId> out;
    for (NodeId id : g.node_ids())
        if (filter.query(g.attributes(id))) out.push_back(id);
    return out;
}

std::vector<NodeId> checked_members(const SocialGraph& g, std::vector<NodeId> ids) {
    for (NodeId id : ids)
        if (!g.has_node(id))
            throw ValidationError("community member " + std::to_string(id) +
                                  " is not in the carrier");
    return ids;
}

struct ChannelArgs {
    std::string carrier, dict_path, community_path, bloom_path, bundle_path;
    std::string key_path, nonce_path;
    std::string mode_name = "undirected";
    std::size_t s = 0;
    bool trivial = false;

    void add_common(CLI::App* cmd, bool carrier_required = true) {
        cmd->add_option("--carrier,--graph", carrier, "carrier GEXF file")
            ->required(carrier_required);
        cmd->add_option("--dict", dict_path, "attribute dictionary file");
        cmd->add_option("--community", community_path, "community id list file");
        cmd->add_option("--bloom", bloom_path, "membership filter file");
        cmd->add_option("--bundle", bundle_path, "exchange bundle file");
        cmd->add_option("--key", key_path, "master key file")->required();
        cmd->add_option("--nonce", nonce_path, "nonce file");
        cmd->add_option("--mode", mode_name, "undirected|directed|undirected-loops|directed-loops");
        cmd->add_option("--s", s, "sub-community size");
        cmd->add_flag("--trivial-order", trivial, "bypass the keyed permutation (testing)");
    }

    // Resolved state.
    AttributeDictionary dict;
    Nonce nonce;
    GraphMode mode;
    std::optional<BloomFilter> filter;

    void resolve() {
        std::string dict_file = dict_path;
        std::string bloom_file = bloom_path;
        if (!bundle_path.empty()) {
            ApiBundle b = parse_bundle(read_text_file(bundle_path));
            fs::path base = fs::path(bundle_path).parent_path();
            nonce = b.nonce;
            mode = b.mode;
            if (s == 0) s = b.s;
            if (dict_file.empty()) dict_file = (base / b.dict_path).string();
            if (bloom_file.empty() && community_path.empty())
                bloom_file = (base / b.bloom_path).string();
        } else {
            if (nonce_path.empty()) throw InvalidArgument("--nonce (or --bundle) is required");
            nonce = read_nonce_file(nonce_path);
            mode = parse_mode(mode_name);
        }
        if (dict_file.empty()) throw InvalidArgument("--dict (or --bundle) is required");
        dict = parse_dictionary(read_text_file(dict_file));
        if (!bloom_file.empty())
            filter = BloomFilter::deserialize(read_binary_file(bloom_file));
        if (!filter && community_path.empty())
            throw InvalidArgument("need --community, --bloom or --bundle to find the community");
        if (s == 0) throw InvalidArgument("--s (or a bundle providing it) is required");
    }

    CommunityDescriptor community_of(const SocialGraph& g) const {
        std::vector<NodeId> members;
        if (!community_path.empty())
            members = checked_members(g, parse_id_list(read_text_file(community_path)));
        else
            members = members_from_filter(g, *filter);
        if (members.empty())
            throw ValidationError("no community members validated against this carrier");
        return make_community(std::move(members));
    }
};

int run(int argc, char** argv) {
    CLI::App app{"covert channels in community link structure"};
    app.require_subcommand(1);

    // keygen
    auto* keygen = app.add_subcommand("keygen", "generate key and nonce files");
    std::string kg_key, kg_nonce;
    keygen->add_option("--key-out", kg_key, "where to write the master key");
    keygen->add_option("--nonce-out", kg_nonce, "where to write the nonce");
    keygen->callback([&] {
        if (kg_key.empty() && kg_nonce.empty())
            throw InvalidArgument("keygen needs --key-out and/or --nonce-out");
        if (!kg_key.empty()) {
            write_key_file(kg_key, generate_key());
            std::cout << "wrote key " << kg_key << '\n';
        }
        if (!kg_nonce.empty()) {
            write_nonce_file(kg_nonce, generate_nonce());
            std::cout << "wrote nonce " << kg_nonce << '\n';
        }
    });

    // bloom build / query / info
    auto* bloom = app.add_subcommand("bloom", "membership filter operations");
    bloom->require_subcommand(1);

    auto* bbuild = bloom->add_subcommand("build", "build a filter from community members");
    std::string bb_graph, bb_dict, bb_members, bb_key, bb_nonce, bb_out, bb_mode = "undirected";
    std::size_t bb_t = std::size_t{1} << 20;
    unsigned bb_k = 64;
    bbuild->add_option("--carrier", bb_graph, "carrier GEXF file")->required();
    bbuild->add_option("--dict", bb_dict, "attribute dictionary file")->required();
    bbuild->add_option("--members", bb_members, "community id list file")->required();
    bbuild->add_option("--key", bb_key, "master key file")->required();
    bbuild->add_option("--nonce", bb_nonce, "nonce file")->required();
    bbuild->add_option("--out", bb_out, "output filter file")->required();
    bbuild->add_option("--mode", bb_mode, "carrier mode");
    bbuild->add_option("--t-bits", bb_t, "filter width in bits");
    bbuild->add_option("--k", bb_k, "hash function count");
    bbuild->callback([&] {
        AttributeDictionary dict = parse_dictionary(read_text_file(bb_dict));
        SocialGraph g = load_carrier(bb_graph, dict, parse_mode(bb_mode), true);
        auto members = checked_members(g, parse_id_list(read_text_file(bb_members)));
        SeedBundle seeds = derive_seeds(read_nonce_file(bb_nonce), read_key_file(bb_key));
        BloomFilter f(seeds.bloom_seed, BloomParams{bb_t, bb_k});
        for (NodeId id : members) f.insert(g.attributes(id));
        write_binary_file(bb_out, f.serialize());
        std::printf("inserted %zu members into %zu-bit filter (k=%u); wrote %s\n", members.size(),
                    f.params().t_bits, f.params().k, bb_out.c_str());
    });

    auto* bquery = bloom->add_subcommand("query", "test carrier nodes against a filter");
    std::string bq_filter, bq_graph, bq_dict, bq_mode = "undirected";
    std::optional<NodeId> bq_node;
    bool bq_all = false;
    bquery->add_option("--filter", bq_filter, "filter file")->required();
    bquery->add_option("--carrier", bq_graph, "carrier GEXF file")->required();
    bquery->add_option("--dict", bq_dict, "attribute dictionary file")->required();
    bquery->add_option("--node", bq_node, "single node id to test");
    bquery->add_flag("--all", bq_all, "list every validating node id");
    bquery->add_option("--mode", bq_mode, "carrier mode");
    bquery->callback([&] {
        AttributeDictionary dict = parse_dictionary(read_text_file(bq_dict));
        SocialGraph g = load_carrier(bq_graph, dict, parse_mode(bq_mode), true);
        BloomFilter f = BloomFilter::deserialize(read_binary_file(bq_filter));
        if (bq_node) {
            if (!g.has_node(*bq_node))
                throw ValidationError("node " + std::to_string(*bq_node) +
                                      " is not in the carrier");
            std::cout << (f.query(g.attributes(*bq_node)) ? "member" : "non-member") << '\n';
        } else if (bq_all) {
            for (NodeId id : members_from_filter(g, f)) std::cout << id << '\n';
        } else {
            throw InvalidArgument("bloom query needs --node or --all");
        }
    });

    auto* binfo = bloom->add_subcommand("info", "print filter parameters");
    std::string bi_filter;
    binfo->add_option("--filter", bi_filter, "filter file")->required();
    binfo->callback([&] {
        BloomFilter f = BloomFilter::deserialize(read_binary_file(bi_filter));
        std::printf("t_bits %zu\nk %u\nones %zu\nfill %.6f\n", f.params().t_bits, f.params().k,
                    f.ones(), static_cast<double>(f.ones()) /
                                  static_cast<double>(f.params().t_bits));
    });

    // select
    auto* select = app.add_subcommand("select", "derive the sub-community for a key and nonce");
    std::string sl_members, sl_key, sl_nonce, sl_out;
    std::size_t sl_s = 0;
    select->add_option("--community", sl_members, "community id list file")->required();
    select->add_option("--s", sl_s, "sub-community size")->required();
    select->add_option("--key", sl_key, "master key file")->required();
    select->add_option("--nonce", sl_nonce, "nonce file")->required();
    select->add_option("--out", sl_out, "write ids here instead of stdout");
    select->callback([&] {
        auto members = parse_id_list(read_text_file(sl_members));
        SeedBundle seeds = derive_seeds(read_nonce_file(sl_nonce), read_key_file(sl_key));
        SubCommunity sub = select_subcommunity(make_community(std::move(members)), sl_s,
                                               seeds.sel_seed);
        std::string text = format_id_list(sub.members);
        if (sl_out.empty())
            std::cout << text;
        else
            write_text_file(sl_out, text);
    });

    // capacity
    auto* cap = app.add_subcommand("capacity", "payload capacity for a mode and size");
    std::string cp_mode = "undirected", cp_plot;
    std::uint64_t cp_s = 0, cp_min = 2, cp_max = 5000;
    cap->add_option("--mode", cp_mode, "carrier mode");
    cap->add_option("--s", cp_s, "sub-community size");
    cap->add_option("--plot", cp_plot, "write an (s, log2 bits) table to this file");
    cap->add_option("--s-min", cp_min, "table start");
    cap->add_option("--s-max", cp_max, "table end");
    cap->callback([&] {
        GraphMode m = parse_mode(cp_mode);
        if (!cp_plot.empty()) {
            std::string text = "# s log2_bits (" + format_mode(m) + ")\n";
            for (auto [s, l2] : capacity_curve(m, cp_min, cp_max)) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%llu %.6f\n",
                              static_cast<unsigned long long>(s), l2);
                text += buf;
            }
            write_text_file(cp_plot, text);
            std::cout << "wrote " << cp_plot << '\n';
        }
        if (cp_s > 0)
            std::cout << capacity(m, cp_s) << '\n';
        else if (cp_plot.empty())
            throw InvalidArgument("capacity needs --s and/or --plot");
    });

    // encode
    auto* enc = app.add_subcommand("encode", "write a payload into a carrier");
    ChannelArgs ea;
    ea.add_common(enc);
    std::string en_payload, en_out, en_creator = "ccc", en_description;
    std::optional<std::size_t> en_bits;
    bool en_verify = false;
    enc->add_option("--payload", en_payload, "payload file (raw bytes)")->required();
    enc->add_option("--bits", en_bits, "payload length in bits (default: whole file)");
    enc->add_option("--out", en_out, "output GEXF file")->required();
    enc->add_flag("--verify", en_verify, "re-import the output and check the decode");
    enc->add_option("--creator", en_creator, "GEXF meta creator");
    enc->add_option("--description", en_description, "GEXF meta description");
    enc->callback([&] {
        ea.resolve();
        MasterKey key = read_key_file(ea.key_path);
        SeedBundle seeds = derive_seeds(ea.nonce, key);
        SocialGraph g = load_carrier(ea.carrier, ea.dict, ea.mode, true);
        CommunityDescriptor community = ea.community_of(g);
        SubCommunity sub = select_subcommunity(community, ea.s, seeds.sel_seed);
        LinkOrder order = ea.trivial ? trivial_order(sub, ea.mode)
                                     : permuted_order(sub, ea.mode, seeds.perm_seed);
        Ciphertext payload = read_payload_file(en_payload, en_bits);
        encode(g, order, payload);
        std::string xml = emit_gexf(gexf_from_graph(g, ea.dict, en_creator, en_description));
        write_text_file(en_out, xml);
        std::printf("encoded %zu bits into %zu slots over %zu members; wrote %s\n",
                    payload.size(), order.links.size(), sub.members.size(), en_out.c_str());
        if (en_verify) {
            SocialGraph g2 = load_carrier(en_out, ea.dict, ea.mode, true);
            CommunityDescriptor c2 = ea.community_of(g2);
            SubCommunity sub2 = select_subcommunity(c2, ea.s, seeds.sel_seed);
            LinkOrder order2 = ea.trivial ? trivial_order(sub2, ea.mode)
                                          : permuted_order(sub2, ea.mode, seeds.perm_seed);
            if (decode(g2, order2, payload.size()) != payload)
                throw ValidationError("verification decode did not reproduce the payload");
            std::cout << "verified\n";
        }
    });

    // decode
    auto* dec = app.add_subcommand("decode", "read a payload back out of a carrier");
    ChannelArgs da;
    da.add_common(dec);
    std::string de_out;
    std::size_t de_bits = 0;
    dec->add_option("--bits", de_bits, "payload length in bits")->required();
    dec->add_option("--out", de_out, "write payload bytes here (default: print bits)");
    dec->callback([&] {
        da.resolve();
        MasterKey key = read_key_file(da.key_path);
        SeedBundle seeds = derive_seeds(da.nonce, key);
        SocialGraph g = load_carrier(da.carrier, da.dict, da.mode, true);
        CommunityDescriptor community = da.community_of(g);
        SubCommunity sub = select_subcommunity(community, da.s, seeds.sel_seed);
        LinkOrder order = da.trivial ? trivial_order(sub, da.mode)
                                     : permuted_order(sub, da.mode, seeds.perm_seed);
        Ciphertext payload = decode(g, order, de_bits);
        if (de_out.empty())
            std::cout << payload.to_bit_string() << '\n';
        else
            write_payload_file(de_out, payload);
    });

    // hyper encode / decode
    auto* hyper = app.add_subcommand("hyper", "multi-level channel operations");
    hyper->require_subcommand(1);

    auto* henc = hyper->add_subcommand("encode", "encode every level of a channel plan");
    std::string he_carrier, he_dict, he_plan, he_key, he_nonce, he_out;
    bool he_trivial = false;
    henc->add_option("--carrier", he_carrier, "carrier GEXF file")->required();
    henc->add_option("--dict", he_dict, "attribute dictionary file")->required();
    henc->add_option("--plan", he_plan, "channel plan file")->required();
    henc->add_option("--key", he_key, "master key file")->required();
    henc->add_option("--nonce", he_nonce, "nonce file")->required();
    henc->add_option("--out", he_out, "output GEXF file")->required();
    henc->add_flag("--trivial-order", he_trivial, "bypass the keyed permutations (testing)");
    henc->callback([&] {
        PlanFile pf = parse_plan_file(read_text_file(he_plan));
        AttributeDictionary dict = parse_dictionary(read_text_file(he_dict));
        SocialGraph g = load_carrier(he_carrier, dict, pf.mode, true);
        SeedBundle seeds = derive_seeds(read_nonce_file(he_nonce), read_key_file(he_key));
        BoundPlan bound = bind_plan(pf.to_plan(), seeds, he_trivial);
        fs::path base = fs::path(he_plan).parent_path();
        std::vector<Ciphertext> payloads;
        for (const auto& lvl : pf.levels) {
            if (lvl.payload_path.empty())
                throw InvalidArgument("plan level lacks payload= (required for encode)");
            payloads.push_back(read_payload_file(base / lvl.payload_path, lvl.bits));
        }
        Ciphertext meta(pf.meta_bits);
        if (!pf.meta_payload_path.empty())
            meta = read_payload_file(base / pf.meta_payload_path, pf.meta_bits);
        else if (pf.meta_bits > 0)
            throw InvalidArgument("plan meta lacks payload= (required for encode)");
        encode_multi(g, bound, payloads, meta);
        write_text_file(he_out, emit_gexf(gexf_from_graph(g, dict)));
        std::size_t total = meta.size();
        for (const auto& p : payloads) total += p.size();
        std::printf("encoded %zu levels + meta (%zu bits total); wrote %s\n", payloads.size(),
                    total, he_out.c_str());
    });

    auto* hdec = hyper->add_subcommand("decode", "decode every level of a channel plan");
    std::string hd_carrier, hd_dict, hd_plan, hd_key, hd_nonce, hd_outdir;
    bool hd_trivial = false;
    hdec->add_option("--carrier", hd_carrier, "carrier GEXF file")->required();
    hdec->add_option("--dict", hd_dict, "attribute dictionary file")->required();
    hdec->add_option("--plan", hd_plan, "channel plan file")->required();
    hdec->add_option("--key", hd_key, "master key file")->required();
    hdec->add_option("--nonce", hd_nonce, "nonce file")->required();
    hdec->add_option("--out-dir", hd_outdir, "write level<N>.bin and meta.bin here");
    hdec->add_flag("--trivial-order", hd_trivial, "bypass the keyed permutations (testing)");
    hdec->callback([&] {
        PlanFile pf = parse_plan_file(read_text_file(hd_plan));
        AttributeDictionary dict = parse_dictionary(read_text_file(hd_dict));
        SocialGraph g = load_carrier(hd_carrier, dict, pf.mode, true);
        SeedBundle seeds = derive_seeds(read_nonce_file(hd_nonce), read_key_file(hd_key));
        BoundPlan bound = bind_plan(pf.to_plan(), seeds, hd_trivial);
        MultiDecoded out = decode_multi(g, bound);
        if (hd_outdir.empty()) {
            for (std::size_t i = 0; i < out.levels.size(); ++i)
                std::cout << "level" << i << ' ' << out.levels[i].to_bit_string() << '\n';
            std::cout << "meta " << out.meta.to_bit_string() << '\n';
        } else {
            fs::create_directories(hd_outdir);
            for (std::size_t i = 0; i < out.levels.size(); ++i)
                write_payload_file(fs::path(hd_outdir) / ("level" + std::to_string(i) + ".bin"),
                                   out.levels[i]);
            write_payload_file(fs::path(hd_outdir) / "meta.bin", out.meta);
            std::cout << "wrote " << out.levels.size() << " level payloads + meta to " << hd_outdir
                      << '\n';
        }
    });

    // bundle make / check
    auto* bundle = app.add_subcommand("bundle", "exchange bundle operations");
    bundle->require_subcommand(1);

    auto* bmake = bundle->add_subcommand("make", "write an exchange bundle");
    std::string bm_nonce, bm_mode = "undirected", bm_bloom, bm_dict, bm_plan, bm_out;
    std::size_t bm_s = 0;
    bmake->add_option("--nonce", bm_nonce, "nonce file")->required();
    bmake->add_option("--mode", bm_mode, "carrier mode");
    bmake->add_option("--s", bm_s, "sub-community size");
    bmake->add_option("--bloom", bm_bloom, "filter path (relative to the bundle)")->required();
    bmake->add_option("--dict", bm_dict, "dictionary path (relative to the bundle)")->required();
    bmake->add_option("--plan", bm_plan, "plan path (relative to the bundle)");
    bmake->add_option("--out", bm_out, "output bundle file")->required();
    bmake->callback([&] {
        ApiBundle b;
        b.nonce = read_nonce_file(bm_nonce);
        b.mode = parse_mode(bm_mode);
        b.s = bm_s;
        b.bloom_path = bm_bloom;
        b.dict_path = bm_dict;
        b.plan_path = bm_plan;
        if (b.s == 0 && b.plan_path.empty())
            throw InvalidArgument("bundle make needs --s (or --plan)");
        write_text_file(bm_out, format_bundle(b));
        validate_bundle(b, fs::path(bm_out).parent_path());
        std::cout << "wrote " << bm_out << '\n';
    });

    auto* bcheck = bundle->add_subcommand("check", "validate a bundle and its referenced files");
    std::string bc_bundle;
    bcheck->add_option("--bundle", bc_bundle, "bundle file")->required();
    bcheck->callback([&] {
        ApiBundle b = parse_bundle(read_text_file(bc_bundle));
        validate_bundle(b, fs::path(bc_bundle).parent_path());
        std::cout << "ok\n";
    });

    // gexf canon
    auto* gexf = app.add_subcommand("gexf", "carrier file utilities");
    gexf->require_subcommand(1);
    auto* gcanon = gexf->add_subcommand("canon", "re-emit a GEXF file deterministically");
    std::string gc_in, gc_out;
    bool gc_lenient = false;
    gcanon->add_option("--in", gc_in, "input GEXF file")->required();
    gcanon->add_option("--out", gc_out, "output GEXF file")->required();
    gcanon->add_flag("--lenient", gc_lenient, "skip unsupported elements instead of failing");
    gcanon->callback([&] {
        GexfDocument doc = parse_gexf(read_text_file(gc_in), !gc_lenient);
        write_text_file(gc_out, emit_gexf(doc));
        std::printf("canonicalized %zu nodes, %zu edges; wrote %s\n", doc.nodes.size(),
                    doc.edges.size(), gc_out.c_str());
    });

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a cover network and run a full pass");
    std::string sm_config, sm_payload, sm_key, sm_nonce, sm_report, sm_carrier_out,
        sm_community_out, sm_sub_out, sm_bloom_out;
    std::optional<std::size_t> sm_bits;
    std::size_t sm_s = 0;
    bool sm_trivial = false;
    sim->add_option("--config", sm_config, "cover spec file")->required();
    sim->add_option("--payload", sm_payload, "payload file")->required();
    sim->add_option("--bits", sm_bits, "payload length in bits");
    sim->add_option("--s", sm_s, "sub-community size")->required();
    sim->add_option("--key", sm_key, "master key file")->required();
    sim->add_option("--nonce", sm_nonce, "nonce file")->required();
    sim->add_option("--report", sm_report, "also write the report here");
    sim->add_option("--carrier-out", sm_carrier_out, "write the encoded carrier GEXF");
    sim->add_option("--community-out", sm_community_out, "write the community subgraph GEXF");
    sim->add_option("--sub-out", sm_sub_out, "write the sub-community subgraph GEXF");
    sim->add_option("--bloom-out", sm_bloom_out, "write the membership filter");
    sim->add_flag("--trivial-order", sm_trivial, "bypass the keyed permutation (testing)");
    sim->callback([&] {
        CoverSpec spec = parse_cover_spec(read_text_file(sm_config));
        Ciphertext payload = read_payload_file(sm_payload, sm_bits);
        ScenarioArtifacts art =
            run_scenario(spec, payload, read_key_file(sm_key), read_nonce_file(sm_nonce), sm_s,
                         sm_trivial);
        std::string text = art.report.to_text();
        std::cout << text;
        if (!sm_report.empty()) write_text_file(sm_report, text);
        if (!sm_carrier_out.empty()) write_text_file(sm_carrier_out, art.gexf);
        if (!sm_community_out.empty())
            write_text_file(sm_community_out,
                            emit_gexf(gexf_from_graph(
                                induced_subgraph(art.carrier, art.community.members), art.dict)));
        if (!sm_sub_out.empty())
            write_text_file(sm_sub_out,
                            emit_gexf(gexf_from_graph(
                                induced_subgraph(art.carrier, art.sub.members), art.dict)));
        if (!sm_bloom_out.empty()) write_binary_file(sm_bloom_out, art.filter.serialize());
        if (!art.report.membership_exact || !art.report.roundtrip_exact)
            throw ValidationError("scenario round trip failed (see report)");
    });

    // churn
    auto* churn = app.add_subcommand("churn", "encode, then resample background links");
    std::string ch_config, ch_payload, ch_key, ch_nonce, ch_report;
    std::optional<std::size_t> ch_bits;
    std::size_t ch_s = 0, ch_steps = 100;
    double ch_rate = 0.001;
    std::uint64_t ch_seed = 7;
    bool ch_trivial = false;
    churn->add_option("--config", ch_config, "cover spec file")->required();
    churn->add_option("--payload", ch_payload, "payload file")->required();
    churn->add_option("--bits", ch_bits, "payload length in bits");
    churn->add_option("--s", ch_s, "sub-community size")->required();
    churn->add_option("--key", ch_key, "master key file")->required();
    churn->add_option("--nonce", ch_nonce, "nonce file")->required();
    churn->add_option("--steps", ch_steps, "churn steps");
    churn->add_option("--rate", ch_rate, "fraction of slots resampled per step");
    churn->add_option("--churn-seed", ch_seed, "rng seed for the churn stream");
    churn->add_option("--report", ch_report, "also write both reports here");
    churn->add_flag("--trivial-order", ch_trivial, "bypass the keyed permutation (testing)");
    churn->callback([&] {
        CoverSpec spec = parse_cover_spec(read_text_file(ch_config));
        Ciphertext payload = read_payload_file(ch_payload, ch_bits);
        ScenarioArtifacts art =
            run_scenario(spec, payload, read_key_file(ch_key), read_nonce_file(ch_nonce), ch_s,
                         ch_trivial);
        ChurnReport cr = churn_run(art.carrier, spec, art.community, art.sub, art.order, payload,
                                   ch_steps, ch_rate, ch_seed);
        std::string text = art.report.to_text() + cr.to_text();
        std::cout << text;
        if (!ch_report.empty()) write_text_file(ch_report, text);
        if (!cr.community_every_step || !cr.decode_exact_every_step)
            throw ValidationError("churn broke the channel (see report)");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 5;
    }
}
