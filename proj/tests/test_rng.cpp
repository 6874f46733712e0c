#include <doctest.h>

#include <cmath>
#include <vector>

#include "nsopt/rng.hpp"

using nsopt::RandomStream;

TEST_CASE("identical stream ids reproduce bit-identical draws") {
    RandomStream a(123, 4, 1), b(123, 4, 1);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    RandomStream c(123, 4, 1), d(123, 4, 1);
    for (int i = 0; i < 100; ++i) CHECK(c.gaussian() == d.gaussian());
}

TEST_CASE("distinct substreams differ") {
    RandomStream a(123, 4, 0), b(123, 4, 1), c(123, 5, 0);
    int same_ab = 0, same_ac = 0;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        if (va == b.next_u64()) ++same_ab;
        if (va == c.next_u64()) ++same_ac;
    }
    CHECK(same_ab == 0);
    CHECK(same_ac == 0);
}

TEST_CASE("uniform lies in [0,1) with mean 1/2") {
    RandomStream rng(9, 0, 0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("gaussian moments") {
    RandomStream rng(17, 0, 0);
    const int n = 1000000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        s1 += g;
        s2 += g * g;
    }
    const double mean = s1 / n;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(s2 / n - mean * mean == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("rademacher is a fair sign") {
    RandomStream rng(23, 0, 0);
    int pos = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double s = rng.rademacher();
        REQUIRE((s == 1.0 || s == -1.0));
        if (s > 0) ++pos;
    }
    CHECK(static_cast<double>(pos) / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("uniform_int respects the range and hits every value") {
    RandomStream rng(31, 0, 0);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto v = rng.uniform_int(7);
        REQUIRE(v < 7);
        ++counts[static_cast<int>(v)];
    }
    for (int k = 0; k < 7; ++k)
        CHECK(static_cast<double>(counts[k]) / 10000.0 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("streams are uncorrelated at lag 0") {
    RandomStream a(5, 0, 1), b(5, 1, 1);
    const int n = 100000;
    double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = a.uniform(), y = b.uniform();
        sx += x; sy += y; sxy += x * y; sxx += x * x; syy += y * y;
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double vx = sxx / n - (sx / n) * (sx / n);
    const double vy = syy / n - (sy / n) * (sy / n);
    CHECK(std::abs(cov / std::sqrt(vx * vy)) < 0.01);
}
