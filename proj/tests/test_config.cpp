#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "comet/config.hpp"
#include "comet/errors.hpp"

using namespace comet;
using doctest::Approx;

TEST_CASE("empty config yields the stock defaults") {
    const Scenario s = parse_config("");
    CHECK(s.node == "15nm");
    CHECK(s.material.ms_pma == Approx(0.3e6));
    CHECK(s.material.kappa_me == Approx(0.2 / 3e8));
    CHECK(s.transistor.r_on == 3480.0);
    CHECK(s.geometry.f_feat == Approx(15e-9));
    CHECK(s.drive.v_fe == Approx(0.110));
}

TEST_CASE("unit suffixes convert at ingestion") {
    const Scenario s = parse_config(
        "[material]\n"
        "ms_pma = 0.3e6 A/m\n"
        "a_ex = 10 pJ/m\n"
        "d_dmi = 0.8 mJ/m2\n"
        "[drive]\n"
        "v_fe = 110 mV\n"
        "[geometry]\n"
        "h_shm = 3 nm\n");
    CHECK(s.material.ms_pma == Approx(3e5));
    CHECK(s.material.a_ex == Approx(1e-11));
    CHECK(s.material.d_dmi == Approx(0.8e-3));
    CHECK(s.drive.v_fe == Approx(0.110));
    CHECK(s.geometry.h_shm == Approx(3e-9));
}

TEST_CASE("unknown keys are rejected with the nearest match named") {
    try {
        parse_config("[material]\nms_pm = 0.3e6\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("ms_pm") != std::string::npos);
        CHECK(msg.find("material.ms_pma") != std::string::npos);
    }
}

TEST_CASE("unit dimension mismatches are rejected") {
    CHECK_THROWS_AS(parse_config("[drive]\nv_fe = 110 nm\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[material]\nms_pma = 1 lightyear\n"), ConfigError);
}

TEST_CASE("parse errors carry the line number") {
    try {
        parse_config("[drive]\nv_fe 110\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("keys outside a section are rejected") {
    CHECK_THROWS_AS(parse_config("v_fe = 0.1\n"), ConfigError);
}

TEST_CASE("node selects the preset before field overrides") {
    const Scenario s = parse_config(
        "[geometry]\nnode = 7nm\n[transistor]\nr_on = 5000 ohm\n");
    CHECK(s.geometry.f_feat == Approx(7e-9));
    CHECK(s.transistor.r_on == 5000.0);
    CHECK(s.transistor.leak_energy_per_gate == Approx(13.7e-18));
}

TEST_CASE("feature size override re-derives the dependent lengths") {
    Scenario s = parse_config("[geometry]\nf_feat = 10 nm\n");
    CHECK(s.geometry.nucleation_offset == Approx(20e-9));
    CHECK(s.geometry.propagation_distance == Approx(40e-9));
    CHECK(s.geometry.fe_in_area == Approx(2e-16));
    CHECK(s.geometry.h_fe_in == Approx(5e-9)); // thicknesses retained
}

TEST_CASE("command-line style overrides") {
    Scenario s = Scenario::from_preset("15nm");
    apply_override(s, "drive.j_c=5e11");
    apply_override(s, "material.alpha=0.05");
    CHECK(s.drive.j_c == Approx(5e11));
    CHECK(s.material.alpha == Approx(0.05));
    CHECK_THROWS_AS(apply_override(s, "drive.jc=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(s, "nonsense"), ConfigError);
}

TEST_CASE("space lists parse with shared unit suffix") {
    const Scenario s = parse_config("[space]\nvfe_values = 110, 150 mV\n");
    REQUIRE(s.space.vfe_values.size() == 2);
    CHECK(s.space.vfe_values[0] == Approx(0.110));
    CHECK(s.space.vfe_values[1] == Approx(0.150));
}

// Serialization round-trip: every field reparses bit for bit.
TEST_CASE("config round-trip is exact") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        Scenario s = Scenario::from_preset(trial % 2 ? "7nm" : "15nm");
        s.material.ms_pma *= u(rng);
        s.material.ku_pma *= u(rng);
        s.material.a_ex *= u(rng);
        s.material.alpha = 0.3 * u(rng) / 3.0 + 1e-3;
        s.material.d_dmi *= u(rng);
        s.drive.v_fe *= u(rng);
        s.drive.j_c *= u(rng);
        s.transistor.r_on *= u(rng);
        s.geometry.h_shm *= u(rng);
        s.fe.p_remnant *= u(rng);
        s.dw.dt *= u(rng);
        s.space.jc_values = {1e10 * u(rng), 1e11 * u(rng), 1e12 * u(rng)};

        const std::string text = serialize_config(s);
        const Scenario t = parse_config(text);
        CHECK(t.material.ms_pma == s.material.ms_pma);
        CHECK(t.material.ku_pma == s.material.ku_pma);
        CHECK(t.material.a_ex == s.material.a_ex);
        CHECK(t.material.alpha == s.material.alpha);
        CHECK(t.material.d_dmi == s.material.d_dmi);
        CHECK(t.drive.v_fe == s.drive.v_fe);
        CHECK(t.drive.j_c == s.drive.j_c);
        CHECK(t.transistor.r_on == s.transistor.r_on);
        CHECK(t.geometry.h_shm == s.geometry.h_shm);
        CHECK(t.fe.p_remnant == s.fe.p_remnant);
        CHECK(t.dw.dt == s.dw.dt);
        REQUIRE(t.space.jc_values.size() == 3);
        CHECK(t.space.jc_values[0] == s.space.jc_values[0]);
        CHECK(t.space.jc_values[1] == s.space.jc_values[1]);
        CHECK(t.space.jc_values[2] == s.space.jc_values[2]);
        // And the serialization itself is a fixed point.
        CHECK(serialize_config(t) == text);
    }
}
