#include "cocreate/error.hpp"
#include "cocreate/random.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <vector>

using namespace cocreate;

TEST_CASE("same labels give the same first 1000 draws")
{
    auto a = derive_stream(42, {"exp4", "instance", 17});
    auto b = derive_stream(42, {"exp4", "instance", 17});
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(a() == b());
    }
}

TEST_CASE("labels differing in one id give different prefixes")
{
    // 10^4 label pairs, first 10 draws each; any full-prefix collision fails
    std::set<std::array<std::uint64_t, 10>> prefixes;
    for (std::uint64_t id = 0; id < 10'000; ++id) {
        auto s = derive_stream(42, {"exp3", "exposure", id});
        std::array<std::uint64_t, 10> prefix{};
        for (auto& v : prefix) {
            v = s();
        }
        REQUIRE(prefixes.insert(prefix).second);
    }
    CHECK(derive_stream(42, {"a", 1})() != derive_stream(43, {"a", 1})());
    CHECK(derive_stream(42, {"a", 1})() != derive_stream(42, {"a", 1, 0})());
    CHECK(derive_stream(42, {"ab"})() != derive_stream(42, {"a", "b"})());
}

TEST_CASE("label order matters")
{
    CHECK(derive_stream(1, {"x", 2})() != derive_stream(1, {2, "x"})());
}

TEST_CASE("empty label path is rejected")
{
    CHECK_THROWS_AS(derive_stream(42, {}), ParameterError);
}

TEST_CASE("fork does not depend on the parent position and does not advance it")
{
    auto parent = derive_stream(7, {"p"});
    const auto early = parent.fork({"child", 3});
    parent();
    parent();
    const auto pos = parent.position();
    auto late = parent.fork({"child", 3});
    CHECK(parent.position() == pos);
    auto e = early;
    for (int i = 0; i < 50; ++i) {
        REQUIRE(e() == late());
    }
}

TEST_CASE("copied streams replay identically")
{
    auto s = derive_stream(9, {"copy"});
    s();
    auto t = s;
    for (int i = 0; i < 100; ++i) {
        REQUIRE(s() == t());
    }
}

TEST_CASE("uniform_index stays in range and is close to uniform")
{
    auto s = derive_stream(1, {"uniform_index"});
    constexpr std::uint64_t bound = 7;
    constexpr int draws = 70'000;
    std::array<int, bound> counts{};
    for (int i = 0; i < draws; ++i) {
        const auto v = uniform_index(s, bound);
        REQUIRE(v < bound);
        ++counts[v];
    }
    double chi2 = 0.0;
    const double expected = draws / static_cast<double>(bound);
    for (int c : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    // chi-square with 6 df: P(> 22.46) = 0.001
    CHECK(chi2 < 22.46);
    CHECK(uniform_index(s, 1) == 0);
    CHECK_THROWS_AS(uniform_index(s, 0), ParameterError);
}

TEST_CASE("uniform01 and standard_normal moments")
{
    auto s = derive_stream(2, {"moments"});
    constexpr int n = 200'000;
    double su = 0, sz = 0, szz = 0;
    for (int i = 0; i < n; ++i) {
        const double u = uniform01(s);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        su += u;
        const double z = standard_normal(s);
        sz += z;
        szz += z * z;
    }
    // tolerances are about 5 standard errors
    CHECK(std::abs(su / n - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(sz / n) < 5.0 / std::sqrt(n));
    CHECK(std::abs(szz / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("uniform_real respects its bounds")
{
    auto s = derive_stream(3, {"real"});
    for (int i = 0; i < 1000; ++i) {
        const double v = uniform_real(s, 0.01, 0.5);
        REQUIRE(v >= 0.01);
        REQUIRE(v < 0.5);
    }
}
