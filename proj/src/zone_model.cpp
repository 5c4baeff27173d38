#include "mledca/zone_model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace mledca {

int ZoneModel::offset_of(std::size_t ac) const {
    for (std::size_t s = 0; s < sorted_acs.size(); ++s) {
        if (sorted_acs[s] == ac) {
            return offsets[s];
        }
    }
    assert(false && "AC index outside the zone model");
    return 0;
}

int ZoneModel::zone_width(int zone) const {
    assert(zone >= 1 && zone < num_zones());
    return zone_offsets[zone] - zone_offsets[zone - 1];
}

int ZoneModel::zone_of_slot(int slot) const {
    assert(slot >= 1);
    if (slot <= static_cast<int>(slot_zone.size())) {
        return slot_zone[static_cast<std::size_t>(slot - 1)];
    }
    return num_zones();
}

ZoneModel build_zones(const LinkScenario& link) {
    if (link.acs.empty()) {
        throw ConfigError("build_zones: link has no active AC");
    }
    ZoneModel zm;
    const std::size_t n = link.acs.size();
    zm.sorted_acs.resize(n);
    std::iota(zm.sorted_acs.begin(), zm.sorted_acs.end(), std::size_t{0});
    std::stable_sort(zm.sorted_acs.begin(), zm.sorted_acs.end(),
                     [&](std::size_t a, std::size_t b) {
                         return link.acs[a].aifsn < link.acs[b].aifsn;
                     });

    const double aifs_min = aifs_of(link.acs[zm.sorted_acs.front()], link.phy);
    zm.offsets.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        const double gap = (aifs_of(link.acs[zm.sorted_acs[s]], link.phy) - aifs_min) /
                           link.phy.slot_us;
        const long h = std::lround(gap);
        assert(std::abs(gap - static_cast<double>(h)) < 1e-9);
        zm.offsets.push_back(static_cast<int>(h));
    }

    // Equal offsets collapse into one zone.
    zm.first_zone.assign(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (zm.zone_offsets.empty() || zm.zone_offsets.back() != zm.offsets[s]) {
            zm.zone_offsets.push_back(zm.offsets[s]);
        }
        zm.first_zone[zm.sorted_acs[s]] = static_cast<int>(zm.zone_offsets.size());
    }
    for (int offset : zm.zone_offsets) {
        zm.eligible_count.push_back(static_cast<int>(
            std::count_if(zm.offsets.begin(), zm.offsets.end(),
                          [&](int h) { return h <= offset; })));
    }

    // Slot j (j >= 1) belongs to the last zone whose offset is at most j - 1,
    // i.e. the zone of every AC whose AIFS has elapsed before the slot starts.
    const int max_offset = zm.offsets.back();
    zm.slot_zone.reserve(static_cast<std::size_t>(max_offset));
    for (int j = 1; j <= max_offset; ++j) {
        int zone = 0;
        for (int z = 0; z < zm.num_zones(); ++z) {
            if (zm.zone_offsets[static_cast<std::size_t>(z)] <= j - 1) {
                zone = z + 1;
            }
        }
        zm.slot_zone.push_back(zone);
    }
    return zm;
}

}  // namespace mledca
