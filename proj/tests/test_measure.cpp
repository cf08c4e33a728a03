// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>

#include "cokernel_lab/measure.hpp"
#include "cokernel_lab/submodules.hpp"

using namespace cokernel_lab;

namespace {

/// Euler's pentagonal number theorem: prod (1 - x^u) = sum_k (-1)^k x^{k(3k-1)/2}.
double eta_pentagonal(double q)
{
    const double x = 1.0 / q;
    double s = 1.0;
    for (int k = 1; k < 30; ++k) {
        const double sign = (k % 2) ? -1.0 : 1.0;
        s += sign * (std::pow(x, k * (3 * k - 1) / 2.0) + std::pow(x, k * (3 * k + 1) / 2.0));
    }
    return s;
}

MeasureValue mv(long num, long den, std::vector<std::uint64_t> etas)
{
    return MeasureValue(mpq_class(num, den), std::move(etas));
}

} // namespace

TEST_CASE("eta values")
{
    const auto e3 = eta(3, 1e-9);
    CHECK(std::abs(e3.value - 0.5601260779279489) < 1e-9);
    CHECK(std::abs(e3.value - eta_pentagonal(3)) < 1e-9);
    CHECK(std::pow(3.0, -e3.depth) / (1 - 1 / 3.0) < 1e-9);
    CHECK(std::pow(3.0, -(e3.depth - 1)) / (1 - 1 / 3.0) >= 1e-9);
    CHECK(std::abs(eta(9, 1e-9).value - 0.8765603540359642) < 1e-9);
    for (std::uint64_t q : {3u, 5u, 7u, 9u, 25u, 27u, 169u})
        CHECK(std::abs(eta_value(q) - eta_pentagonal(static_cast<double>(q))) < 1e-14);
    const auto degenerate = eta(3, 2.0);
    CHECK(degenerate.depth == 0);
    CHECK(degenerate.value == 1.0);
    CHECK_THROWS_AS(eta(1), std::invalid_argument);
    CHECK_THROWS_AS(eta(3, 0.0), std::invalid_argument);
}

TEST_CASE("c constants")
{
    const RingSpec r = RingSpec::local(Poly::x(3), 2);
    CHECK(c_constant(r, {0}) == mv(1, 1, {3}));
    CHECK(c_constant_local(3, 1) == mv(3, 2, {3}));
    CHECK(c_constant_local(3, 2) == mv(27, 16, {3}));
    CHECK(std::abs(c_constant_local(3, 1).value() - 0.8402) < 1e-4);
    CHECK_THROWS_AS(c_constant_local(3, -1), std::invalid_argument);

    const RingSpec two({LocalRingSpec(parse_poly("X-1", 3), 1), LocalRingSpec(parse_poly("X^2+1", 3), 2)});
    const auto c0 = c_constant(two, {0, 0});
    CHECK(c0.eta_factors == std::vector<std::uint64_t>{3, 9});
    CHECK(std::abs(c0.value(1e-12) - eta(3).value * eta(9).value) < 2e-12);
    CHECK_THROWS_AS(c_constant(two, {0}), std::invalid_argument);
}

TEST_CASE("mu examples")
{
    const RingSpec f3 = RingSpec::local(Poly::x(3), 1);
    const RingSpec r = RingSpec::local(Poly::x(3), 2);
    CHECK(mu(ModuleType::trivial(f3)) == mv(1, 1, {3}));
    CHECK(mu(ModuleType(r, {Partition{1, 1}})) == mv(1, 48, {3}));
    CHECK(mu(ModuleType(r, {Partition{2}})) == mv(1, 4, {3}));
    CHECK(mu(ModuleType::trivial(r)) == c_constant(r, {0}));
    for (int n = 0; n <= 6; ++n)
        for (const auto& t : enumerate_module_types(r, n))
            CHECK(mu(t).rational > 0);
}

TEST_CASE("rank distribution")
{
    CHECK(rank_distribution(3, 1, 2, 1) == mv(1, 2, {3}));
    // e = 2, rank 2: (1,1) has j = 0, (2) has j = 1 and carries c_{R,1}.
    CHECK(rank_distribution(3, 1, 2, 2) == mv(13, 48, {3}));
    // With e >= 3 every rank-2 module has j = 0.
    CHECK(rank_distribution(3, 1, 3, 2) == mv(3, 16, {3}));
    CHECK(rank_distribution(3, 1, 3, 2).rational == mpq_class(1, 48) + mpq_class(1, 6));
    CHECK(rank_distribution(9, 2, 2, 3) == MeasureValue::zero({9}));
    // e = 1: the only rank-2 module is F_9 itself, j = 1, |Aut| = 8.
    CHECK(rank_distribution(LocalRingSpec(parse_poly("X^2+1", 3), 1), 2) == mv(9, 64, {9}));
    CHECK(rank_distribution(LocalRingSpec(parse_poly("X^2+1", 3), 2), 2) == mv(1, 8, {9}));

    const RingSpec r = RingSpec::local(Poly::x(3), 2);
    for (int m = 0; m <= 5; ++m) {
        MeasureValue direct = MeasureValue::zero({3});
        for (const auto& t : enumerate_module_types(r, m))
            direct = direct + mu(t);
        CHECK(direct == rank_distribution(3, 1, 2, m));
    }
}

TEST_CASE("partition form agrees with the direct sum")
{
    CHECK(rank_distribution_partition_form(3, 1, 2, 0) == mv(1, 1, {3}));
    CHECK(rank_distribution_partition_form(3, 1, 3, 2) == mv(3, 16, {3}));
    for (auto [q, k] : {std::pair<std::uint64_t, int>{3, 1}, {5, 1}, {9, 2}})
        for (int e = 1; e <= 4; ++e)
            for (int m = 0; m <= 8; ++m) {
                CAPTURE(q);
                CAPTURE(e);
                CAPTURE(m);
                CHECK(rank_distribution_partition_form(q, k, e, m) == rank_distribution(q, k, e, m));
            }
}

TEST_CASE("rank distribution sums to one")
{
    for (auto [q, e] : {std::pair<std::uint64_t, int>{3, 2}, {3, 1}, {5, 3}}) {
        double total = 0;
        double prev_tail = 2;
        for (int m = 0; m <= 40; ++m) {
            total += rank_distribution(q, 1, e, m).value();
            const double tail = 1 - total;
            CHECK(tail <= prev_tail);
            prev_tail = tail;
        }
        CHECK(std::abs(total - 1) < 1e-6);
    }
}

TEST_CASE("gaussian binomials")
{
    CHECK(qbinom(2, 1, 3) == 4);
    CHECK(qbinom(5, 0, 3) == 1);
    CHECK(qbinom(3, 1, 2) == 7);
    CHECK(qbinom(2, 3, 3) == 0);
    CHECK(qbinom(4, 2, 3) == 130);
    // lines of F_3^3 by direct count: nonzero vectors / scalars
    CHECK(qbinom(3, 1, 3) == (27 - 1) / 2);
    for (int n = 1; n < 8; ++n)
        for (int k = 1; k < n; ++k)
            CHECK(qbinom(n, k, 5) == qbinom(n - 1, k - 1, 5) + qbinom(n - 1, k, 5) * mpz_class(static_cast<unsigned long>(std::pow(5, k))));
}

TEST_CASE("submodule count formula")
{
    CHECK(submodule_count(Partition{2}, Partition{1}, 3) == 1);
    CHECK(submodule_count(Partition{1, 1}, Partition{1}, 3) == 4);
    CHECK(submodule_count(Partition{2, 2}, Partition{2, 2}, 3) == 1);
    CHECK(submodule_count(Partition{1}, Partition{2}, 3) == 0);
}

TEST_CASE("moments")
{
    CHECK(moment_rank(3, 1, 1) == 2);
    CHECK(moment_rank(3, 1, 2) == 6);
    CHECK(moment_rank(3, 2, 0) == 1);
    CHECK(moment_rank(9, 3, 0) == 1);
    for (int e = 1; e <= 3; ++e)
        for (int k = 0; e * k <= 6; ++k) {
            const RingSpec r = RingSpec::local(Poly::x(3), e);
            const ModuleType free_module(r, {Partition(std::vector<int>(static_cast<std::size_t>(k), e))});
            CHECK(moment_rank(3, e, k) == count_submodules(free_module));
        }
    const RingSpec q9 = RingSpec::local(parse_poly("X^2+1", 3), 1);
    CHECK(moment_rank(9, 1, 3) == count_submodules(ModuleType(q9, {Partition{1, 1, 1}})));
}

TEST_CASE("divisor densities")
{
    const Poly xm1 = parse_poly("X-1", 3);
    const Poly xp1 = parse_poly("X+1", 3);

    const auto none = divisor_density({{xm1, 0}});
    CHECK(none.value == mv(1, 1, {3}));
    CHECK(std::abs(none.value.value() - 0.560126) < 1e-6);
    CHECK(none.eta_product_gt_half);

    const auto once = divisor_density({{xm1, 1}});
    CHECK(once.value == mv(1, 2, {3}));

    const auto both = divisor_density({{xm1, 0}, {xp1, 0}});
    CHECK(both.value == mv(1, 1, {3, 3}));
    CHECK(std::abs(both.value.value() - 0.31374) < 1e-5);
    CHECK_FALSE(both.eta_product_gt_half);

    CHECK_THROWS_AS(divisor_density({{parse_poly("X^2-1", 3), 0}}), std::invalid_argument);
    CHECK_THROWS_AS(divisor_density({{xm1, 0}, {parse_poly("2*X-2", 3), 1}}), std::invalid_argument);
    CHECK_THROWS_AS(divisor_density({{xm1, -1}}), std::invalid_argument);
}

TEST_CASE("independence")
{
    const RingSpec r({LocalRingSpec(parse_poly("X-1", 3), 2), LocalRingSpec(parse_poly("X+1", 3), 2)});
    for (int n = 0; n <= 4; ++n)
        for (const auto& t : enumerate_module_types(r, n)) {
            const auto p = independence_prediction(t);
            CHECK(p.joint == p.product_of_factors);
        }
    const RingSpec r1({LocalRingSpec(parse_poly("X-1", 3), 1), LocalRingSpec(parse_poly("X+1", 3), 1)});
    CHECK(independence_prediction(ModuleType::trivial(r1)).joint == mv(1, 1, {3, 3}));
    CHECK(independence_prediction(ModuleType(r, {Partition{1}, Partition{}})).joint == mv(1, 2, {3, 3}));
    // over fields the single part is maximal, so c_{R,1} = 3/2 applies
    CHECK(independence_prediction(ModuleType(r1, {Partition{1}, Partition{}})).joint == mv(3, 4, {3, 3}));
}

TEST_CASE("finite n constants")
{
    CHECK(finite_n_constant(3, 0, 1) == mpq_class(2, 3));
    mpq_class prod = 1;
    double prev = 1;
    for (int n = 1; n <= 12; ++n) {
        prod *= mpq_class(1) - mpq_class(1, static_cast<unsigned long>(std::pow(3, n)));
        const auto c = finite_n_constant(3, 0, n);
        CHECK(c == prod);
        CHECK(c.get_d() < prev);
        prev = c.get_d();
    }
    CHECK_THROWS_AS(finite_n_constant(3, 3, 2), std::invalid_argument);
}

TEST_CASE("measure value arithmetic")
{
    CHECK_THROWS_AS(mv(1, 2, {3}) + mv(1, 2, {5}), std::invalid_argument);
    CHECK((mv(1, 2, {5}) * mv(1, 3, {3})).eta_factors == std::vector<std::uint64_t>{3, 5});
    CHECK_THROWS_AS(mv(1, 2, {3}) / mpz_class(0), std::domain_error);
}
