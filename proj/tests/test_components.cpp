#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "microgrid/components.hpp"
#include "microgrid/rng.hpp"

using namespace microgrid;

TEST_CASE("pv_power at standard test conditions") {
    PvSpec spec;
    spec.rated_kw = 1.0;
    CHECK(pv_power(spec, 1.0, 25.0) == doctest::Approx(1.0));
    CHECK(pv_power(spec, 0.0, 25.0) == 0.0);
}

TEST_CASE("pv_power temperature derating") {
    PvSpec spec;
    spec.rated_kw = 1.0;
    spec.temp_coeff = -0.004;
    CHECK(pv_power(spec, 1.0, 50.0) == doctest::Approx(0.9).epsilon(1e-12));
    // extreme derating cannot go negative
    CHECK(pv_power(spec, 1.0, 400.0) == 0.0);
}

TEST_CASE("pv_power matches hand evaluation on randomized inputs") {
    rng::Stream s(21);
    for (int i = 0; i < 50; ++i) {
        PvSpec spec;
        spec.rated_kw = s.uniform(0.1, 500.0);
        spec.g_stc = s.uniform(0.5, 1.5);
        spec.temp_coeff = s.uniform(-0.01, 0.001);
        spec.t_stc = 25.0;
        double g = s.uniform(0.0, 1.2);
        double t = s.uniform(-10.0, 45.0);
        double expected =
            std::max(0.0, spec.rated_kw * g / spec.g_stc *
                              (1.0 + spec.temp_coeff * (t - spec.t_stc)));
        CHECK(pv_power(spec, g, t) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("pv_power monotone in irradiance while the temperature term is nonnegative") {
    PvSpec spec;
    spec.rated_kw = 10.0;
    spec.temp_coeff = -0.004;
    rng::Stream s(22);
    for (int i = 0; i < 200; ++i) {
        double g1 = s.uniform(0.0, 1.0);
        double g2 = g1 + s.uniform(0.0, 0.5);
        double t = s.uniform(-10.0, 60.0);
        CHECK(pv_power(spec, g2, t) >= pv_power(spec, g1, t));
    }
}

TEST_CASE("wind_power piecewise branches") {
    WindSpec spec;
    spec.rated_kw = 100.0;
    spec.v_cut_in = 3.0;
    spec.v_rated = 12.0;
    spec.v_cut_out = 25.0;
    CHECK(wind_power(spec, 0.0) == 0.0);
    CHECK(wind_power(spec, 3.0) == 0.0);  // boundary belongs to the zero branch
    CHECK(wind_power(spec, 7.5) == doctest::Approx(50.0));
    CHECK(wind_power(spec, 12.0) == doctest::Approx(100.0));
    CHECK(wind_power(spec, 20.0) == 100.0);
    CHECK(wind_power(spec, 25.0) == 100.0);
    CHECK(wind_power(spec, 26.0) == 0.0);
}

TEST_CASE("wind_power continuous across the ramp") {
    WindSpec spec;
    spec.rated_kw = 100.0;
    spec.v_cut_in = 3.0;
    spec.v_rated = 12.0;
    spec.v_cut_out = 25.0;
    CHECK(wind_power(spec, 12.0 - 1e-9) == doctest::Approx(100.0).epsilon(1e-6));
    CHECK(wind_power(spec, 3.0 + 1e-9) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("wind spec validation") {
    WindSpec spec;
    spec.v_cut_in = 12.0;
    spec.v_rated = 3.0;
    CHECK_THROWS_AS(wind_power(spec, 5.0), InvalidParameter);
}

TEST_CASE("battery_step follows the SOC recursion") {
    BatterySpec spec;
    spec.capacity_kwh = 100.0;
    spec.eta_charge = 0.9;
    spec.eta_discharge = 0.9;
    spec.p_charge_max = 50.0;
    spec.p_discharge_max = 50.0;

    SUBCASE("idle identity") { CHECK(battery_step(spec, 0.5, 0.0, 0.0) == 0.5); }
    SUBCASE("charging") {
        CHECK(battery_step(spec, 0.5, 10.0, 0.0) == doctest::Approx(0.59).epsilon(1e-12));
    }
    SUBCASE("discharging") {
        CHECK(battery_step(spec, 0.59, 0.0, 9.0) == doctest::Approx(0.49).epsilon(1e-12));
    }
    SUBCASE("simultaneous charge/discharge rejected") {
        CHECK_THROWS_AS(battery_step(spec, 0.5, 1.0, 1.0), InvalidParameter);
    }
    SUBCASE("discharge through the floor rejected") {
        CHECK_THROWS_AS(battery_step(spec, 0.15, 0.0, 40.0), SimulationError);
    }
}

TEST_CASE("battery round trip recovers eta_ch * eta_dch of the energy") {
    BatterySpec spec;
    spec.capacity_kwh = 200.0;
    spec.eta_charge = 0.95;
    spec.eta_discharge = 0.92;
    spec.p_charge_max = 1000.0;
    spec.p_discharge_max = 1000.0;

    double soc = 0.3;
    double charged_kwh = 40.0;
    soc = battery_step(spec, soc, charged_kwh, 0.0);
    // discharge exactly back to the start
    double stored = (soc - 0.3) * spec.capacity_kwh;
    double discharge_kwh = stored * spec.eta_discharge;
    soc = battery_step(spec, soc, 0.0, discharge_kwh);
    CHECK(soc == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(discharge_kwh ==
          doctest::Approx(charged_kwh * spec.eta_charge * spec.eta_discharge).epsilon(1e-12));
}

TEST_CASE("max charge and discharge powers") {
    BatterySpec spec;
    spec.capacity_kwh = 100.0;
    spec.eta_charge = 0.9;
    spec.eta_discharge = 0.9;
    spec.p_charge_max = 1e9;
    spec.p_discharge_max = 1e9;

    CHECK(max_charge_power(spec, spec.soc_max) == 0.0);
    CHECK(max_discharge_power(spec, spec.soc_min) == 0.0);
    CHECK(max_discharge_power(spec, 0.5) == doctest::Approx(36.0).epsilon(1e-12));
}

TEST_CASE("max powers are exact inverses of battery_step") {
    rng::Stream s(23);
    for (int i = 0; i < 100; ++i) {
        BatterySpec spec;
        spec.capacity_kwh = s.uniform(10.0, 5000.0);
        spec.eta_charge = s.uniform(0.7, 1.0);
        spec.eta_discharge = s.uniform(0.7, 1.0);
        spec.soc_min = s.uniform(0.0, 0.3);
        spec.soc_max = s.uniform(0.7, 1.0);
        spec.soc_init = spec.soc_min;
        spec.p_charge_max = 1e12;
        spec.p_discharge_max = 1e12;
        double soc = s.uniform(spec.soc_min, spec.soc_max);

        double pc = max_charge_power(spec, soc);
        double after_charge = battery_step(spec, soc, pc, 0.0);
        CHECK(after_charge == doctest::Approx(spec.soc_max).epsilon(1e-9));

        double pd = max_discharge_power(spec, soc);
        if (pd > 0.0) {
            double after_discharge = battery_step(spec, soc, 0.0, pd);
            CHECK(after_discharge == doctest::Approx(spec.soc_min).epsilon(1e-9));
        }
    }
}

TEST_CASE("scaled battery keeps the power-to-capacity ratio") {
    BatterySpec spec;
    spec.capacity_kwh = 100.0;
    spec.p_charge_max = 50.0;
    spec.p_discharge_max = 40.0;
    auto s = spec.scaled_to(250.0);
    CHECK(s.capacity_kwh == 250.0);
    CHECK(s.p_charge_max == doctest::Approx(125.0));
    CHECK(s.p_discharge_max == doctest::Approx(100.0));
}
