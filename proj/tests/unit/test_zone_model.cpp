#include "doctest.h"
#include "fixtures.hpp"
#include "mledca/zone_model.hpp"

using namespace mledca;

namespace {

LinkScenario with_aifsn(std::vector<int> aifsn) {
    LinkScenario link;
    link.phy = table_i_phy();
    for (int a : aifsn) {
        link.acs.push_back(fixtures::ac(32, 1024, a, 0, 7, 1));
    }
    return link;
}

}  // namespace

TEST_CASE("single ac has one zone") {
    const auto zm = build_zones(with_aifsn({5}));
    CHECK(zm.num_zones() == 1);
    CHECK(zm.offsets == std::vector<int>{0});
    CHECK(zm.eligible_count == std::vector<int>{1});
    CHECK(zm.first_zone == std::vector<int>{1});
}

TEST_CASE("two offsets") {
    const auto zm = build_zones(with_aifsn({2, 4}));
    CHECK(zm.offsets == std::vector<int>{0, 2});
    CHECK(zm.num_zones() == 2);
    CHECK(zm.eligible_count == std::vector<int>{1, 2});
    CHECK(zm.zone_width(1) == 2);
    // The AC with offset 2 first contends in slot 3.
    CHECK(zm.zone_of_slot(1) == 1);
    CHECK(zm.zone_of_slot(2) == 1);
    CHECK(zm.zone_of_slot(3) == 2);
    CHECK(zm.zone_of_slot(50) == 2);
}

TEST_CASE("equal aifs shares a zone") {
    const auto zm = build_zones(with_aifsn({2, 2, 5}));
    CHECK(zm.offsets == std::vector<int>{0, 0, 3});
    CHECK(zm.num_zones() == 2);
    CHECK(zm.eligible_count == std::vector<int>{2, 3});
    CHECK(zm.first_zone == std::vector<int>{1, 1, 2});
}

TEST_CASE("zones follow aifs order, not list order") {
    const auto zm = build_zones(with_aifsn({9, 3, 6}));
    CHECK(zm.sorted_acs == std::vector<std::size_t>{1, 2, 0});
    CHECK(zm.offset_of(0) == 6);
    CHECK(zm.offset_of(1) == 0);
    CHECK(zm.first_zone == std::vector<int>{3, 1, 2});
    CHECK(zm.eligible(2, 2));
    CHECK_FALSE(zm.eligible(0, 2));
}
