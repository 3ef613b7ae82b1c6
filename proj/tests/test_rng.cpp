#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "microgrid/rng.hpp"

using namespace microgrid;

TEST_CASE("derive_seed is stable and stream-name sensitive") {
    auto a = rng::derive_seed(42, "solar");
    auto b = rng::derive_seed(42, "solar");
    auto c = rng::derive_seed(42, "wind");
    auto d = rng::derive_seed(43, "solar");
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a != d);
    CHECK(rng::derive_seed(42, "availability", 0) != rng::derive_seed(42, "availability", 1));
}

TEST_CASE("streams are deterministic per seed") {
    rng::Stream s1(7), s2(7), s3(8);
    bool same = true, diff = false;
    for (int i = 0; i < 100; ++i) {
        auto a = s1.next_u64();
        same = same && (a == s2.next_u64());
        diff = diff || (a != s3.next_u64());
    }
    CHECK(same);
    CHECK(diff);
}

TEST_CASE("uniform stays in [0, 1) and has the right mean") {
    rng::Stream s(1);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double u = s.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal matches mean and variance") {
    rng::Stream s(2);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double x = s.normal(3.0, 2.0);
        sum += x;
        sq += x * x;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(mean == doctest::Approx(3.0).epsilon(0.01));
    CHECK(var == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("weibull rejects bad parameters") {
    rng::Stream s(3);
    CHECK_THROWS(s.weibull(0.0, 1.0));
    CHECK_THROWS(s.weibull(1.0, -1.0));
}

TEST_CASE("sign draws only +-1 with near-zero mean") {
    rng::Stream s(4);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        double v = s.sign();
        REQUIRE((v == 1.0 || v == -1.0));
        sum += v;
    }
    CHECK(std::abs(sum / 100000.0) < 0.02);
}
