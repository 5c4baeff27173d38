#pragma once

#include <cstddef>
#include <vector>

#include "mledca/scenario.hpp"

namespace mledca {

/// AIFS zone structure of one link.
///
/// After every busy period the idle timeline is measured in slots following the
/// shortest AIFS among the link's ACs. An AC whose AIFS exceeds that minimum by
/// h slots may first transmit in slot h + 1. Zones are the maximal runs of slots
/// with a constant set of eligible ACs; ACs sharing an AIFS share a zone.
///
/// All zone indices are 1-based: zones run 1..J. Per-AC vectors are indexed by
/// the AC's position in the link's original (unsorted) list.
struct ZoneModel {
    /// sorted_acs[s] = original index of the AC at sorted position s (ascending AIFS, stable).
    std::vector<std::size_t> sorted_acs;
    /// Slot offset h of each AC in sorted order; h[0] == 0.
    std::vector<int> offsets;
    /// Distinct offsets, one per zone: zone_offsets[j-1] is where zone j starts.
    std::vector<int> zone_offsets;
    /// eligible_count[j-1] = Z_j, the number of ACs allowed to contend in zone j.
    std::vector<int> eligible_count;
    /// first_zone[i] = Z_i^0 for original AC index i.
    std::vector<int> first_zone;
    /// slot_zone[j-1] = zone of idle slot j, for j = 1..max offset.
    std::vector<int> slot_zone;

    int num_zones() const { return static_cast<int>(zone_offsets.size()); }
    int num_acs() const { return static_cast<int>(sorted_acs.size()); }

    /// Offset h of original AC i.
    int offset_of(std::size_t ac) const;

    /// Number of slots in zone j (j < J); the last zone is unbounded.
    int zone_width(int zone) const;

    /// True if original AC i may contend in zone j.
    bool eligible(std::size_t ac, int zone) const { return first_zone[ac] <= zone; }

    /// Zone containing idle slot j >= 1 (slots past the last offset lie in zone J).
    int zone_of_slot(int slot) const;
};

/// Builds the zone model of a link. Requires at least one AC.
ZoneModel build_zones(const LinkScenario& link);

}  // namespace mledca
