#pragma once

#include "ccc/bitvec.hpp"
#include "ccc/selection.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ccc {

/// Payload bits; bit i maps to link slot i of the agreed link order.
using Ciphertext = BitVec;

using Link = std::pair<NodeId, NodeId>;

/// The agreed enumeration of placeable links among sub-community members.
struct LinkOrder {
    std::vector<Link> links;
    GraphMode mode;
};

/// Number of placeable links among s members:
///   directed+loops s^2, directed s(s-1),
///   undirected+loops s(s-1)/2 + s, undirected s(s-1)/2.
std::uint64_t capacity(GraphMode mode, std::uint64_t s);

/// Canonical enumeration over ascending members i1 < ... < is:
/// undirected pairs {ia, ib} (a < b) in lexicographic order, or directed
/// ordered pairs (ia, ib), a != b, row by row; when loops are allowed the
/// s loops follow in ascending order.
LinkOrder trivial_order(const SubCommunity& sub, GraphMode mode);

/// Trivial order shuffled by the keyed permutation: slot i holds trivial
/// link perm[i].
LinkOrder permuted_order(const SubCommunity& sub, GraphMode mode, const Digest& perm_seed);

/// Writes payload bit i as presence of order.links[i]; slots past the
/// payload are forced absent. Validates everything before the first
/// mutation. Touches no link outside the order.
void encode(SocialGraph& g, const LinkOrder& order, const Ciphertext& payload);

/// Reads nbits slots back as a bit vector.
Ciphertext decode(const SocialGraph& g, const LinkOrder& order, std::size_t nbits);

/// Moves a carrier from old_payload to new_payload touching only the slots
/// whose effective bit differs (tail slots count as 0); returns how many
/// links changed.
std::size_t reconfigure(SocialGraph& g, const LinkOrder& order, const Ciphertext& old_payload,
                        const Ciphertext& new_payload);

/// (s, log2 capacity) samples for plotting, s stepped over [s_min, s_max].
std::vector<std::pair<std::uint64_t, double>> capacity_curve(GraphMode mode, std::uint64_t s_min,
                                                             std::uint64_t s_max);

} // namespace ccc
