#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mledca/ccdf.hpp"
#include "mledca/delay_gf.hpp"
#include "oracles/oracles.hpp"

using namespace mledca;
using doctest::Approx;

namespace {

struct Built {
    LinkScenario link;
    ZoneModel zm;
    FixedPointSolution sol;
};

Built build(LinkScenario link) {
    Built b{link, build_zones(link), {}};
    b.sol = solve(b.link, b.zm, {});
    return b;
}

/// A hand-made operating point: the given p, collision probabilities from the model.
FixedPointSolution at(const LinkScenario& link, const ZoneModel& zm, std::vector<double> p) {
    FixedPointSolution s;
    s.p = p;
    for (double v : p) {
        s.r.push_back(1.0 - v);
    }
    s.zones = zone_stationary(link, zm, s.p);
    for (std::size_t i = 0; i < p.size(); ++i) {
        s.c.push_back(collision_prob(link, zm, s.zones, s.p, i));
        s.loss.push_back(std::pow(s.c.back(), link.acs[i].retry_limit));
    }
    return s;
}

LinkScenario three_acs() {
    LinkScenario link;
    link.phy = table_i_phy();
    link.acs = {fixtures::ac(16, 1024, 2, 1504, 7, 2, 200.0),
                fixtures::ac(32, 512, 5, 0, 6, 3, 800.0),
                fixtures::ac(8, 64, 9, 3008, 4, 2, 1500.0)};
    return link;
}

std::vector<cplx> disk_points(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> pts;
    for (int i = 0; i < count; ++i) {
        pts.push_back(std::polar(std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng)));
    }
    return pts;
}

}  // namespace

TEST_CASE("defer") {
    const auto b = build(three_acs());
    SUBCASE("highest priority waits exactly its aifs") {
        const DelayGf gf(b.link, b.zm, b.sol, 0);
        CHECK(gf.defer_interruptions().empty());
        const cplx z = std::polar(0.9, 0.3);
        CHECK(std::abs(gf.defer(z) - std::pow(z, 5)) < 1e-14);
    }
    SUBCASE("normalized for every ac") {
        for (std::size_t k = 0; k < 3; ++k) {
            const DelayGf gf(b.link, b.zm, b.sol, k);
            CHECK(std::abs(gf.defer(1.0) - 1.0) < 1e-9);
        }
    }
    SUBCASE("nearly never idle") {
        // Three always-colliding stations leave the later AC an idle AIFS gap
        // with probability around 1e-182.
        LinkScenario link;
        link.phy = table_i_phy();
        link.acs = {fixtures::ac(2, 2, 7, 0, 7, 3), fixtures::ac(512, 1024, 13, 0, 7, 10)};
        const auto nb = build(link);
        const DelayGf gf(nb.link, nb.zm, nb.sol, 1);
        REQUIRE(gf.defer_idle_probability() < 1e-100);
        REQUIRE(gf.defer_idle_probability() > 0.0);
        CHECK(std::abs(gf.defer(1.0) - 1.0) < 1e-12);
        CHECK(std::abs(gf.total(1.0) - 1.0) < 1e-9);
        for (const cplx z : disk_points(200, 4)) {
            CHECK(std::abs(gf.defer(z)) <= 1.0 + 1e-12);
        }
    }
    SUBCASE("silent competitors") {
        LinkScenario link;
        link.phy = table_i_phy();
        link.acs = {fixtures::ac(32, 1024, 2, 0, 7, 2), fixtures::ac(32, 1024, 3, 0, 7, 1)};
        const auto zm = build_zones(link);
        const auto sol = at(link, zm, {0.0, 0.2});
        const DelayGf gf(link, zm, sol, 1);
        CHECK(gf.defer_idle_probability() == 1.0);
        const cplx z = std::polar(0.8, -1.1);
        CHECK(std::abs(gf.defer(z) - std::pow(z, 7)) < 1e-14);
    }
}

TEST_CASE("slot occupancy") {
    SUBCASE("normalized") {
        const auto b = build(three_acs());
        for (std::size_t k = 0; k < 3; ++k) {
            const DelayGf gf(b.link, b.zm, b.sol, k);
            CHECK(std::abs(gf.occupancy(1.0) - 1.0) < 1e-12);
            double blocked = gf.nu();
            for (std::size_t l = 0; l < 3; ++l) {
                blocked += gf.gamma(l);
            }
            CHECK(blocked == Approx(gf.collision_probability()).epsilon(1e-12));
        }
    }
    SUBCASE("lone station sees idle slots only") {
        const auto b = build(fixtures::lone_station());
        const DelayGf gf(b.link, b.zm, b.sol, 0);
        const cplx z = std::polar(0.7, 2.0);
        CHECK(std::abs(gf.occupancy(z) - z * z) < 1e-15);
    }
    SUBCASE("symmetric blocking") {
        const auto b = build(fixtures::two_ac_baseline());
        const DelayGf a0(b.link, b.zm, b.sol, 0);
        const DelayGf a1(b.link, b.zm, b.sol, 1);
        CHECK(a0.gamma(1) == Approx(a1.gamma(0)).epsilon(1e-14));
        CHECK(a0.gamma(0) == Approx(a1.gamma(1)).epsilon(1e-14));
    }
}

TEST_CASE("backoff") {
    const auto b = build(three_acs());
    SUBCASE("normalized") {
        for (std::size_t k = 0; k < 3; ++k) {
            const DelayGf gf(b.link, b.zm, b.sol, k);
            CHECK(std::abs(gf.backoff(1.0) - 1.0) < 1e-12);
        }
    }
    SUBCASE("bounded on the unit disk") {
        for (std::size_t k = 0; k < 3; ++k) {
            const DelayGf gf(b.link, b.zm, b.sol, k);
            for (const cplx z : disk_points(1000, 11 + k)) {
                CHECK(std::abs(gf.backoff(z)) <= 1.0 + 1e-12);
            }
        }
    }
    SUBCASE("one attempt without collisions is one uniform window") {
        auto link = fixtures::lone_station(32, 1);
        const auto zm = build_zones(link);
        const DelayGf gf(link, zm, solve(link, zm, {}), 0);
        for (const cplx z : disk_points(50, 5)) {
            const cplx y = gf.occupancy(z);
            const cplx expect = (1.0 - std::pow(y, 32)) / (32.0 * (1.0 - y));
            CHECK(std::abs(gf.backoff(z) - expect) < 1e-12);
        }
    }
}

TEST_CASE("total delay") {
    SUBCASE("normalized for random operating points") {
        std::mt19937_64 rng(19);
        std::uniform_real_distribution<double> prob(0.0, 0.3);
        const auto link = three_acs();
        const auto zm = build_zones(link);
        for (int trial = 0; trial < 30; ++trial) {
            const auto sol = at(link, zm, {prob(rng), prob(rng), prob(rng)});
            for (std::size_t k = 0; k < 3; ++k) {
                CHECK(std::abs(DelayGf(link, zm, sol, k).total(1.0) - 1.0) < 1e-9);
            }
        }
    }
    SUBCASE("single packet per txop") {
        const auto b = build(three_acs());
        const DelayGf gf(b.link, b.zm, b.sol, 1);
        REQUIRE(gf.txop_packets() == 1);
        for (const cplx z : disk_points(20, 2)) {
            CHECK(std::abs(gf.total(z) - gf.backoff(z) * gf.transmission(z) * gf.defer(z)) <
                  1e-14);
        }
    }
    SUBCASE("lattice evaluation agrees with direct evaluation") {
        const auto b = build(three_acs());
        const DelayGf gf(b.link, b.zm, b.sol, 2);
        const Lattice lattice(0.999, 4000);
        const auto on = gf.on(lattice);
        for (long n : {0L, 1L, 17L, 1999L, 3999L}) {
            CHECK(std::abs(on.total(n) - gf.total(lattice.point(n))) < 1e-10);
        }
    }
}

TEST_CASE("lone station delay matches enumeration") {
    for (int retry : {1, 7}) {
        const auto link = fixtures::lone_station(32, retry);
        const auto zm = build_zones(link);
        const DelayGf gf(link, zm, solve(link, zm, {}), 0);
        const auto t = ac_timing(link.acs[0], link.phy);
        const auto pmf = oracle::lone_station_pmf(aifs_of(link.acs[0], link.phy), link.phy.slot_us,
                                                  t.t_data, 32, link.phy.delta_us);
        for (const cplx z : disk_points(30, 23)) {
            cplx poly{0.0, 0.0};
            for (const auto& [k, mass] : pmf) {
                poly += mass * std::pow(z, static_cast<int>(k));
            }
            CHECK(std::abs(gf.total(z) - poly) < 1e-12);
        }
        const long last = pmf.rbegin()->first;
        for (long x = 1; x <= last + 5; ++x) {
            CHECK(invert_ccdf(gf, x).probability == Approx(oracle::tail(pmf, x)).epsilon(1e-8));
        }
    }
}

TEST_CASE("complex helpers") {
    const cplx y = std::polar(0.97, 0.4);
    CHECK(std::abs(ipow(y, 0) - 1.0) == 0.0);
    CHECK(std::abs(ipow(y, 37) - std::pow(y, 37)) < 1e-13);
    for (const cplx near : {cplx{1.0, 0.0}, cplx{1.0 - 1e-7, 1e-8}, cplx{0.99995, -2e-5}}) {
        cplx direct{0.0, 0.0};
        for (int b = 0; b < 64; ++b) {
            direct += std::pow(near, b);
        }
        CHECK(std::abs(uniform_window(near, 64) - direct / 64.0) < 1e-12);
    }
}
