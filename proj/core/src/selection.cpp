#include "ccc/selection.hpp"

#include "ccc/errors.hpp"

#include <algorithm>

namespace ccc {

SubCommunity select_with_source(const CommunityDescriptor& community, std::size_t s,
                                BitSource& bits) {
    const auto& members = community.members;
    if (members.empty()) throw InvalidArgument("selection: community is empty");
    if (!std::is_sorted(members.begin(), members.end()) ||
        std::adjacent_find(members.begin(), members.end()) != members.end())
        throw InvalidArgument("selection: community members must be strictly ascending");
    if (s == 0 || s > members.size())
        throw CapacityError("selection: s must satisfy 1 <= s <= " +
                            std::to_string(members.size()));

    std::vector<bool> picked(members.size(), false);
    std::size_t chosen = 0;
    std::size_t stalled_passes = 0;
    while (chosen < s) {
        bool progressed = false;
        for (std::size_t i = 0; i < members.size() && chosen < s; ++i) {
            if (picked[i]) continue;
            if (bits.next_bit()) {
                picked[i] = true;
                ++chosen;
                progressed = true;
            }
        }
        if (!progressed && ++stalled_passes > 65536)
            throw Error("selection: bit source made no progress");
        if (progressed) stalled_passes = 0;
    }

    SubCommunity sub;
    sub.parent = community;
    sub.s = s;
    sub.members.reserve(s);
    for (std::size_t i = 0; i < members.size(); ++i)
        if (picked[i]) sub.members.push_back(members[i]);
    return sub;
}

SubCommunity select_subcommunity(const CommunityDescriptor& community, std::size_t s,
                                 const Digest& sel_seed) {
    Keystream ks(sel_seed);
    return select_with_source(community, s, ks);
}

std::size_t selection_agreement(const CommunityDescriptor& community, std::size_t s,
                                const Digest& a_seed, const Digest& b_seed) {
    SubCommunity a = select_subcommunity(community, s, a_seed);
    SubCommunity b = select_subcommunity(community, s, b_seed);
    std::vector<NodeId> common;
    std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                          std::back_inserter(common));
    return common.size();
}

} // namespace ccc
