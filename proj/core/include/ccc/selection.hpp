#pragma once

#include "ccc/graph.hpp"
#include "ccc/keychain.hpp"

#include <cstddef>
#include <vector>

namespace ccc {

/// A keyed choice of s members out of a community, kept with its parent.
struct SubCommunity {
    std::vector<NodeId> members; // strictly ascending, exactly s entries
    CommunityDescriptor parent;
    std::size_t s = 0;
};

/// Keystream decimation: walk the not-yet-selected members in ascending id
/// order, keep a member when the next stream bit is 1, and wrap around for
/// further passes until exactly s members are kept. Requires 1 <= s <= |C|.
SubCommunity select_subcommunity(const CommunityDescriptor& community, std::size_t s,
                                 const Digest& sel_seed);

/// Same walk with an arbitrary bit source (test hook).
SubCommunity select_with_source(const CommunityDescriptor& community, std::size_t s,
                                BitSource& bits);

/// |selection(a_seed) ∩ selection(b_seed)| for one community and size.
std::size_t selection_agreement(const CommunityDescriptor& community, std::size_t s,
                                const Digest& a_seed, const Digest& b_seed);

} // namespace ccc
