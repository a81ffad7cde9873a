#include <ccc/bloom.hpp>
#include <ccc/keychain.hpp>
#include <ccc/linkcodec.hpp>
#include <ccc/netsim.hpp>
#include <ccc/selection.hpp>

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

using namespace ccc;

namespace {

Digest fixed_seed(std::uint8_t fill) {
    Digest d;
    d.fill(fill);
    return d;
}

SubCommunity sized_sub(std::size_t n) {
    std::vector<NodeId> members;
    for (NodeId id = 1; id <= n; ++id) members.push_back(id);
    SubCommunity sub;
    sub.parent = make_community(members);
    sub.members = std::move(members);
    sub.s = n;
    return sub;
}

void bm_keystream(benchmark::State& state) {
    Keystream ks(fixed_seed(0x42));
    for (auto _ : state) benchmark::DoNotOptimize(ks.next_bits(64));
    state.SetBytesProcessed(state.iterations() * 8);
}
BENCHMARK(bm_keystream);

void bm_keyed_permutation(benchmark::State& state) {
    Digest seed = fixed_seed(0x17);
    std::size_t m = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(keyed_permutation(seed, m));
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(bm_keyed_permutation)->Arg(1000)->Arg(30000);

void bm_selection(benchmark::State& state) {
    std::vector<NodeId> members;
    for (NodeId id = 0; id < 2000; ++id) members.push_back(id);
    CommunityDescriptor comm = make_community(std::move(members));
    Digest seed = fixed_seed(0x33);
    for (auto _ : state)
        benchmark::DoNotOptimize(select_subcommunity(comm, 500, seed));
}
BENCHMARK(bm_selection);

void bm_bloom_insert(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::vector<BitVec> vecs;
    for (int i = 0; i < 1024; ++i) {
        BitVec v(64);
        for (std::size_t b = 0; b < 64; ++b) v.set(b, rng() & 1);
        vecs.push_back(v);
    }
    BloomFilter filter(fixed_seed(0x01));
    std::size_t i = 0;
    for (auto _ : state) {
        filter.insert(vecs[i++ & 1023]);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(bm_bloom_insert);

void bm_bloom_query(benchmark::State& state) {
    std::mt19937_64 rng(2);
    BloomFilter filter(fixed_seed(0x02));
    std::vector<BitVec> vecs;
    for (int i = 0; i < 1024; ++i) {
        BitVec v(64);
        for (std::size_t b = 0; b < 64; ++b) v.set(b, rng() & 1);
        vecs.push_back(v);
        filter.insert(v);
    }
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(filter.query(vecs[i++ & 1023]));
}
BENCHMARK(bm_bloom_query);

void bm_encode(benchmark::State& state) {
    std::size_t s = static_cast<std::size_t>(state.range(0));
    SubCommunity sub = sized_sub(s);
    GraphMode mode = parse_mode("undirected");
    LinkOrder order = permuted_order(sub, mode, fixed_seed(0x05));
    Ciphertext payload(order.links.size());
    std::mt19937_64 rng(3);
    for (std::size_t i = 0; i < payload.size(); ++i) payload.set(i, rng() & 1);
    SocialGraph g(mode);
    for (NodeId id = 1; id <= s; ++id) g.add_node_with_id(id, BitVec{});
    for (auto _ : state) {
        encode(g, order, payload);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * order.links.size());
}
BENCHMARK(bm_encode)->Arg(50)->Arg(237);

void bm_decode(benchmark::State& state) {
    std::size_t s = static_cast<std::size_t>(state.range(0));
    SubCommunity sub = sized_sub(s);
    GraphMode mode = parse_mode("undirected");
    LinkOrder order = permuted_order(sub, mode, fixed_seed(0x06));
    Ciphertext payload(order.links.size());
    std::mt19937_64 rng(4);
    for (std::size_t i = 0; i < payload.size(); ++i) payload.set(i, rng() & 1);
    SocialGraph g(mode);
    for (NodeId id = 1; id <= s; ++id) g.add_node_with_id(id, BitVec{});
    encode(g, order, payload);
    for (auto _ : state)
        benchmark::DoNotOptimize(decode(g, order, order.links.size()));
    state.SetItemsProcessed(state.iterations() * order.links.size());
}
BENCHMARK(bm_decode)->Arg(50)->Arg(237);

void bm_generate_cover(benchmark::State& state) {
    CoverSpec spec;
    spec.total_nodes = static_cast<std::size_t>(state.range(0));
    spec.community_nodes = spec.total_nodes / 4;
    spec.attribute_count = 16;
    spec.background_probability = 0.05;
    spec.community_density = 0.3;
    spec.mode = parse_mode("undirected");
    spec.seed = 9;
    for (auto _ : state) benchmark::DoNotOptimize(generate_cover(spec));
}
BENCHMARK(bm_generate_cover)->Arg(200)->Arg(1489)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
