#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "microgrid/rng.hpp"
#include "microgrid/scenario.hpp"

using namespace microgrid;

namespace {

TypicalYear flat_tmy(double irradiance = 0.5, double load = 100.0) {
    TypicalYear t;
    t.irradiance.assign(kHoursPerYear, irradiance);
    t.temperature.assign(kHoursPerYear, 20.0);
    t.wind_speed.assign(kHoursPerYear, 6.0);
    t.load.assign(kHoursPerYear, load);
    return t;
}

}  // namespace

TEST_CASE("perturb_solar with zero sigma is the identity") {
    auto tmy = flat_tmy();
    StochasticParams p;
    p.sigma_pv = 0.0;
    auto out = perturb_solar(tmy, p, 1);
    CHECK(out == tmy.irradiance);
}

TEST_CASE("perturb_solar clamps to zero and preserves night hours") {
    auto tmy = flat_tmy(0.5);
    for (std::size_t h = 0; h < kHoursPerYear; h += 2) tmy.irradiance[h] = 0.0;  // "night"
    StochasticParams p;
    p.sigma_pv = 5.0;  // noise far larger than the base, negatives guaranteed pre-clamp
    auto out = perturb_solar(tmy, p, 7);
    bool clamped_some = false;
    for (std::size_t h = 0; h < kHoursPerYear; ++h) {
        REQUIRE(out[h] >= 0.0);
        if (h % 2 == 0) REQUIRE(out[h] == 0.0);
        if (h % 2 == 1 && out[h] == 0.0) clamped_some = true;
    }
    CHECK(clamped_some);
}

TEST_CASE("perturb_solar applies the case-study noise level") {
    auto tmy = flat_tmy(0.5);
    StochasticParams p;
    p.sigma_pv = 0.0724;  // 72.4 W/m^2
    auto out = perturb_solar(tmy, p, 3);
    double sum = 0.0, sq = 0.0;
    for (std::size_t h = 0; h < kHoursPerYear; ++h) {
        double d = out[h] - 0.5;
        sum += d;
        sq += d * d;
    }
    double mean = sum / kHoursPerYear;
    double sd = std::sqrt(sq / kHoursPerYear - mean * mean);
    CHECK(sd == doctest::Approx(0.0724).epsilon(0.05));
}

TEST_CASE("sample_wind matches Weibull mean and CDF identities") {
    StochasticParams p;
    p.weibull_shape = 2.0;
    p.weibull_scale = 6.8;
    const std::size_t n = 1000000;
    auto draws = sample_wind(p, n, 11);

    double sum = 0.0;
    std::size_t below_scale = 0;
    for (double v : draws) {
        REQUIRE(v >= 0.0);
        sum += v;
        if (v <= 6.8) ++below_scale;
    }
    double expected_mean = 6.8 * std::tgamma(1.5);
    CHECK(sum / n == doctest::Approx(expected_mean).epsilon(0.01));
    double cdf_at_scale = static_cast<double>(below_scale) / n;
    CHECK(cdf_at_scale == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(0.01));
}

TEST_CASE("sample_wind rejects invalid parameters") {
    StochasticParams p;
    p.weibull_shape = 0.0;
    CHECK_THROWS_AS(sample_wind(p, 10, 0), InvalidParameter);
    p.weibull_shape = 2.0;
    p.weibull_scale = -1.0;
    CHECK_THROWS_AS(sample_wind(p, 10, 0), InvalidParameter);
}

TEST_CASE("availability chain starts available and never fails with lambda = 0") {
    ReliabilityParams p{0.0, 0.5};
    auto chain = sample_availability(p, 10000, 5);
    for (auto s : chain) REQUIRE(s == 1);
}

TEST_CASE("availability long-run fraction matches mu/(lambda+mu)") {
    const std::size_t n = 1000000;

    ReliabilityParams sym{0.05, 0.05};
    auto chain = sample_availability(sym, n, 6);
    double frac = 0.0;
    for (auto s : chain) frac += s;
    CHECK(frac / n == doctest::Approx(0.5).epsilon(0.02));

    ReliabilityParams skew{0.01, 0.09};
    chain = sample_availability(skew, n, 7);
    frac = 0.0;
    for (auto s : chain) frac += s;
    CHECK(std::abs(frac / n - 0.9) < 0.01);
}

TEST_CASE("build_scenario composes deterministically") {
    auto tmy = flat_tmy();
    StochasticParams sp;
    sp.sigma_pv = 0.1;
    std::array<ReliabilityParams, kNumComponents> rp;
    rp.fill(ReliabilityParams{0.001, 0.1});

    auto a = build_scenario(tmy, sp, rp, 42);
    auto b = build_scenario(tmy, sp, rp, 42);
    CHECK(a.irradiance == b.irradiance);
    CHECK(a.wind_speed == b.wind_speed);
    for (std::size_t c = 0; c < kNumComponents; ++c)
        CHECK(a.availability[c] == b.availability[c]);

    auto c = build_scenario(tmy, sp, rp, 43);
    CHECK(a.irradiance != c.irradiance);
}

TEST_CASE("build_scenario with zero noise and no failures reproduces the TMY") {
    auto tmy = flat_tmy();
    StochasticParams sp;
    sp.sigma_pv = 0.0;
    std::array<ReliabilityParams, kNumComponents> rp;
    rp.fill(ReliabilityParams{0.0, 1.0});
    auto s = build_scenario(tmy, sp, rp, 9);
    CHECK(s.irradiance == tmy.irradiance);
    CHECK(s.temperature == tmy.temperature);
    CHECK(s.load == tmy.load);
    for (const auto& mask : s.availability)
        for (auto v : mask) REQUIRE(v == 1);
}

TEST_CASE("load_tmy_csv rejects malformed files") {
    CHECK_THROWS_AS(load_tmy_csv("/nonexistent/tmy.csv"), InvalidParameter);

    const char* path = "tmy_bad_header.csv";
    {
        std::ofstream f(path);
        f << "hour,wrong\n";
    }
    CHECK_THROWS_AS(load_tmy_csv(path), InvalidParameter);
    std::remove(path);

    const char* short_path = "tmy_short.csv";
    {
        std::ofstream f(short_path);
        f << "hour,irradiance_kw_m2,temperature_c,wind_speed_m_s,load_kw\n";
        f << "0,0.5,20,6,100\n";
    }
    CHECK_THROWS_AS(load_tmy_csv(short_path), InvalidParameter);
    std::remove(short_path);
}

TEST_CASE("load_tmy_csv round-trips a generated year") {
    const char* path = "tmy_ok.csv";
    {
        std::ofstream f(path);
        f << "hour,irradiance_kw_m2,temperature_c,wind_speed_m_s,load_kw\n";
        for (std::size_t h = 0; h < kHoursPerYear; ++h)
            f << h << ",0.25,15.5,7.25," << (100.0 + h % 24) << "\n";
    }
    auto tmy = load_tmy_csv(path);
    CHECK(tmy.irradiance.size() == kHoursPerYear);
    CHECK(tmy.irradiance[0] == 0.25);
    CHECK(tmy.load[25] == 101.0);
    std::remove(path);
}
