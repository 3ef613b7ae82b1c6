#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "microgrid/economics.hpp"
#include "microgrid/rng.hpp"

using namespace microgrid;

namespace {

ComponentSpecs basic_specs() {
    ComponentSpecs s;
    s.turbine.emissions_factor = 0.7;
    s.turbine.fuel_rate = 0.3;
    return s;
}

DispatchTrace trace_with(double load, double mt_kwh, double unserved, long hll,
                         const ComponentSpecs& specs) {
    DispatchTrace t;
    t.total_load_kwh = load;
    t.unserved_kwh = unserved;
    t.total_served_kwh = load - unserved;
    t.mt_kwh = mt_kwh;
    t.renewable_served_kwh = t.total_served_kwh - mt_kwh;
    t.hll = hll;
    t.emissions_kg = mt_kwh * specs.turbine.emissions_factor;
    t.fuel_units = mt_kwh * specs.turbine.fuel_rate;
    return t;
}

CostParams basic_costs() {
    CostParams p;
    p.capex_unit = {1000.0, 2000.0, 500.0, 800.0};
    p.opex_unit = {10.0, 30.0, 5.0, 20.0};
    p.carbon_tax = 0.05;
    p.fuel_price = 1.2;
    p.voll = 5.0;
    p.discount_rate = 0.08;
    p.lifetime_years = 20;
    p.h_max = 10.0;
    p.penalty_r = 10.0;
    return p;
}

}  // namespace

TEST_CASE("crf formula") {
    CHECK(crf(0.08, 20) == doctest::Approx(0.101852).epsilon(1e-4));
    CHECK(crf(1e-9, 20) == doctest::Approx(1.0 / 20.0).epsilon(1e-6));
    CHECK(crf(0.08, 1) == doctest::Approx(1.08).epsilon(1e-12));

    // hand-evaluated oracle over randomized rates
    rng::Stream s(41);
    for (int i = 0; i < 30; ++i) {
        double rate = s.uniform(0.001, 0.3);
        long n = 1 + static_cast<long>(s.uniform(0, 40));
        double growth = std::pow(1.0 + rate, static_cast<double>(n));
        double expected = rate * growth / (growth - 1.0);
        CHECK(crf(rate, n) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("renewable penetration subsidy gating") {
    DesignVector d{0, 0, 0, 0, 0.221, 0.0};
    CHECK(incentive_rp(d, 1000.0, 0.30) == doctest::Approx(221.0));
    CHECK(incentive_rp(d, 1000.0, 0.20) == 0.0);
    d.t_rp = 0.0;
    CHECK(incentive_rp(d, 1000.0, 0.9) == 0.0);
}

TEST_CASE("emissions reduction subsidy gating") {
    CHECK(incentive_er(1000.0, 0.069, 0.10) == doctest::Approx(69.0));
    CHECK(incentive_er(1000.0, 0.069, 0.05) == 0.0);
    CHECK(incentive_er(1000.0, 0.0, 0.5) == 0.0);
    // literal reversed gate pays when the target is missed
    CHECK(incentive_er(1000.0, 0.069, 0.05, true) == doctest::Approx(69.0));
    CHECK(incentive_er(1000.0, 0.069, 0.10, true) == 0.0);
}

TEST_CASE("evaluate_loss zero-cost identity") {
    auto specs = basic_specs();
    CostParams p = basic_costs();
    p.capex_unit = {};
    p.opex_unit = {};
    p.carbon_tax = p.fuel_price = p.voll = 0.0;
    DesignVector d{100, 100, 100, 100, 0.0, 0.0};
    auto t = trace_with(1000.0, 100.0, 0.0, 5, specs);
    auto b = evaluate_loss(d, {t}, specs, p);
    CHECK(b.loss == 0.0);
    CHECK(b.penalty == 0.0);
}

TEST_CASE("penalty activates exactly above h_max") {
    auto specs = basic_specs();
    CostParams p = basic_costs();
    DesignVector d{10, 10, 10, 10, 0.0, 0.0};

    auto at_limit = trace_with(1000.0, 100.0, 0.0, 10, specs);
    auto b1 = evaluate_loss(d, {at_limit}, specs, p);
    CHECK(b1.penalty == 0.0);
    CHECK(b1.loss == doctest::Approx(b1.npc));

    auto over = trace_with(1000.0, 100.0, 0.0, 13, specs);
    auto b2 = evaluate_loss(d, {over}, specs, p);
    CHECK(b2.penalty == doctest::Approx(10.0 * 9.0));  // r * (hll - h_max)^2
    CHECK(b2.loss == doctest::Approx(b2.npc + 90.0));
}

TEST_CASE("npc assembles all cash flows") {
    auto specs = basic_specs();
    CostParams p = basic_costs();
    DesignVector d{100, 50, 200, 80, 0.0, 0.0};
    auto t = trace_with(10000.0, 2000.0, 50.0, 0, specs);
    auto b = evaluate_loss(d, {t}, specs, p);

    double capex = 100 * 1000.0 + 50 * 2000.0 + 200 * 500.0 + 80 * 800.0;
    double opex = (100 * 10.0 + 50 * 30.0 + 200 * 5.0 + 80 * 20.0) * 20.0;
    double tax = 2000.0 * 0.7 * 0.05 * 20.0;
    double fuel = 2000.0 * 0.3 * 1.2 * 20.0;
    double voll = 50.0 * 5.0 * 20.0;
    CHECK(b.capex_total == doctest::Approx(capex));
    CHECK(b.opex_total == doctest::Approx(opex));
    CHECK(b.carbon_tax_cost == doctest::Approx(tax));
    CHECK(b.fuel_cost == doctest::Approx(fuel));
    CHECK(b.voll_cost == doctest::Approx(voll));
    CHECK(b.npc ==
          doctest::Approx((capex + opex + tax + fuel + voll) * crf(0.08, 20)).epsilon(1e-9));
}

TEST_CASE("literal single-year convention drops the lifetime multiplier") {
    auto specs = basic_specs();
    CostParams p = basic_costs();
    p.lifetime_sum = false;
    DesignVector d{100, 0, 0, 0, 0.0, 0.0};
    auto t = trace_with(1000.0, 100.0, 10.0, 0, specs);
    auto b = evaluate_loss(d, {t}, specs, p);
    CHECK(b.opex_total == doctest::Approx(100 * 10.0));
    CHECK(b.voll_cost == doctest::Approx(10.0 * 5.0));
}

TEST_CASE("crossing the penetration threshold drops npc by capex * t_rp * crf") {
    auto specs = basic_specs();
    CostParams p = basic_costs();
    DesignVector d{100, 100, 100, 100, 0.3, 0.0};

    auto below = trace_with(1000.0, 800.0, 0.0, 0, specs);   // r_rp = 0.2
    auto above = trace_with(1000.0, 650.0, 0.0, 0, specs);   // r_rp = 0.35
    auto b_below = evaluate_loss(d, {below}, specs, p);
    auto b_above = evaluate_loss(d, {above}, specs, p);
    CHECK(b_below.subsidy_rp == 0.0);
    CHECK(b_above.subsidy_rp == doctest::Approx(b_above.capex_total * 0.3));

    // isolate the subsidy: same trace, threshold just below vs just above r_rp
    DesignVector d_lo = d;
    d_lo.t_rp = 0.19;
    auto gated_on = evaluate_loss(d_lo, {below}, specs, p);
    double drop = b_below.npc - gated_on.npc;
    CHECK(drop == doctest::Approx(gated_on.capex_total * 0.19 * gated_on.crf).epsilon(1e-9));
}

TEST_CASE("doubling every cash-flow rate doubles npc") {
    auto specs = basic_specs();
    CostParams p = basic_costs();
    DesignVector d{120, 40, 300, 90, 0.1, 0.05};
    auto t = trace_with(8000.0, 1500.0, 20.0, 0, specs);
    auto b1 = evaluate_loss(d, {t}, specs, p);

    CostParams p2 = p;
    for (auto& v : p2.capex_unit) v *= 2.0;
    for (auto& v : p2.opex_unit) v *= 2.0;
    p2.carbon_tax *= 2.0;
    p2.fuel_price *= 2.0;
    p2.voll *= 2.0;
    auto b2 = evaluate_loss(d, {t}, specs, p2);
    CHECK(b2.npc == doctest::Approx(2.0 * b1.npc).epsilon(1e-12));
}

TEST_CASE("multiple traces average the operational terms") {
    auto specs = basic_specs();
    CostParams p = basic_costs();
    DesignVector d{10, 10, 10, 10, 0.0, 0.0};
    auto t1 = trace_with(1000.0, 100.0, 0.0, 4, specs);
    auto t2 = trace_with(1000.0, 300.0, 10.0, 8, specs);
    auto b = evaluate_loss(d, {t1, t2}, specs, p);
    CHECK(b.hll == doctest::Approx(6.0));
    CHECK(b.unserved_kwh == doctest::Approx(5.0));
    CHECK(b.fuel_cost == doctest::Approx(200.0 * 0.3 * 1.2 * 20.0));
}

TEST_CASE("empty trace list is rejected") {
    auto specs = basic_specs();
    CostParams p = basic_costs();
    DesignVector d{1, 1, 1, 1, 0.0, 0.0};
    CHECK_THROWS_AS(evaluate_loss(d, {}, specs, p), InvalidParameter);
}
