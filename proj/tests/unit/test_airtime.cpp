#include "doctest.h"
#include "fixtures.hpp"
#include "mledca/airtime.hpp"

using namespace mledca;
using doctest::Approx;

TEST_CASE("frame airtimes") {
    const auto phy = table_i_phy();
    const auto a = fixtures::ac(32, 1024, 2, 0, 7, 1, 1000.0);
    const auto t = frame_times(a, phy);
    CHECK(t.t_data == Approx(939.6363636363636).epsilon(1e-12));
    CHECK(t.t_rts == Approx(352.0));
    CHECK(t.t_cts == Approx(304.0));
    CHECK(t.t_ack == Approx(304.0));
    CHECK(t.delta == Approx(1263.6363636363636).epsilon(1e-12));

    SUBCASE("header-only frame") {
        const auto empty = frame_times(fixtures::ac(32, 1024, 2, 0, 7, 1, 0.0), phy);
        CHECK(empty.t_data == Approx(192.0 + 224.0 / 11.0));
    }
}

TEST_CASE("packets per txop") {
    const auto phy = table_i_phy();
    auto a = fixtures::ac(32, 1024, 2, 0, 7, 1, 1000.0);
    const auto t = frame_times(a, phy);
    CHECK(txop_count(a, t) == 1);
    a.txop_us = 4080;
    CHECK(txop_count(a, t) == 3);
    a.txop_us = 4064;
    CHECK(txop_count(a, t) == 3);
    // Exactly one exchange long.
    AcTiming exact = t;
    exact.delta = 1248.0;
    a.txop_us = 1248;
    CHECK(txop_count(a, exact) == 1);
    a.txop_us = 1216;
    CHECK(txop_count(a, exact) == 1);
}

TEST_CASE("occupancy times") {
    const auto phy = table_i_phy();
    const auto a = fixtures::ac(32, 1024, 2, 0, 7, 1, 1000.0);
    const auto t = ac_timing(a, phy);
    CHECK(t.t_collision == Approx(402.0));
    CHECK(t.t_success == Approx(1979.6363636363636).epsilon(1e-12));

    SUBCASE("success minus collision") {
        for (int txop : {0, 2048, 4064, 8160}) {
            auto b = fixtures::ac(32, 1024, 6, txop, 7, 1, 600.0);
            const auto tb = ac_timing(b, phy);
            CHECK(tb.t_success - tb.t_collision ==
                  Approx(tb.t_cts + tb.n_txop * tb.delta + phy.sifs_us));
        }
    }
}

TEST_CASE("lattice rounding") {
    const auto phy = table_i_phy();
    CHECK(to_lattice(50.0, phy) == 5);
    CHECK(to_lattice(939.64, phy) == 94);
    CHECK(to_lattice(-3.0, phy) == 0);
}
