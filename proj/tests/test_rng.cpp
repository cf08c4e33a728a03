// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>

#include "cokernel_lab/rng.hpp"

using namespace cokernel_lab;

TEST_CASE("reference outputs")
{
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xe220a8397b1dcdafULL);
    Xoshiro256 g(std::array<std::uint64_t, 4>{1, 2, 3, 4});
    CHECK(g() == 11520);
    CHECK(g() == 0);
    CHECK(g() == 1509978240);
    CHECK(g() == 1215971899390074240ULL);
}

TEST_CASE("streams are reproducible and distinct")
{
    const auto a = block_streams(42, 4);
    const auto b = block_streams(42, 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(a[i].state() == b[i].state());
    CHECK(a[0].state() != a[1].state());
    auto x = a[0];
    auto y = a[1];
    int same = 0;
    for (int i = 0; i < 1000; ++i)
        same += x() == y();
    CHECK(same == 0);
    CHECK(block_count(0) == 0);
    CHECK(block_count(1) == 1);
    CHECK(block_count(kBlockSize + 1) == 2);
}

TEST_CASE("bounded draws are uniform")
{
    Xoshiro256 g(7);
    const int n = 6;
    const int draws = 60000;
    std::array<int, n> hist{};
    for (int i = 0; i < draws; ++i)
        ++hist[static_cast<std::size_t>(g.below(n))];
    double chi2 = 0;
    for (int h : hist)
        chi2 += (h - draws / n) * (h - draws / n) / double(draws / n);
    CHECK(chi2 < 20.5); // 5 dof, p ~ 0.001
    double mean = 0;
    for (int i = 0; i < 10000; ++i) {
        const double u = g.uniform01();
        CHECK(u >= 0);
        CHECK(u < 1);
        mean += u;
    }
    CHECK(std::abs(mean / 10000 - 0.5) < 0.02);
}
