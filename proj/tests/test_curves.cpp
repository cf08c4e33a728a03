// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "cokernel_lab/curves.hpp"
#include "cokernel_lab/oracles.hpp"

using namespace cokernel_lab;

namespace {

std::vector<mpz_class> zv(std::initializer_list<long> xs)
{
    std::vector<mpz_class> out;
    for (long x : xs)
        out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("galois field axioms")
{
    for (std::uint32_t q : {3u, 5u, 9u, 25u, 27u}) {
        const GaloisField F(q);
        CHECK(F.size() == q);
        int squares = 0;
        for (std::uint32_t i = 0; i < q; ++i) {
            CHECK(F.to_int(F.from_int(i)) == i);
            const auto a = F.from_int(i);
            if (!F.is_zero(a)) {
                CHECK(F.mul(a, F.inv(a)) == F.one());
                squares += F.chi(a) == 1;
            }
            CHECK(F.add(a, F.neg(a)) == F.zero());
            for (std::uint32_t j = 0; j < q; ++j) {
                const auto b = F.from_int(j);
                CHECK(F.chi(F.mul(a, b)) == F.chi(a) * F.chi(b));
                for (std::uint32_t k = 0; k < q; k += 2) {
                    const auto c = F.from_int(k);
                    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
        }
        CHECK(squares == static_cast<int>((q - 1) / 2));
    }
    CHECK_THROWS_AS(GaloisField(8), std::invalid_argument);
    CHECK_THROWS_AS(GaloisField(15), std::invalid_argument);
    CHECK_THROWS_AS(GaloisField(3).inv(GaloisField(3).zero()), std::domain_error);
    // prime fields use the integer residues
    const GaloisField F7(7);
    CHECK(F7.to_int(F7.add(F7.from_int(5), F7.from_int(4))) == 2);
    CHECK(F7.to_int(F7.mul(F7.from_int(5), F7.from_int(4))) == 6);
}

TEST_CASE("embeddings are ring homomorphisms")
{
    for (auto [q, n] : {std::pair<std::uint32_t, std::uint32_t>{5, 25}, {9, 81}, {3, 27}, {9, 729}}) {
        const GaloisField small(q), big(n);
        const auto e = embedding(small, big);
        for (std::uint32_t i = 0; i < q; ++i)
            for (std::uint32_t j = 0; j < q; ++j) {
                const auto a = small.from_int(i), b = small.from_int(j);
                CHECK(e[small.add(a, b)] == big.add(e[a], e[b]));
                CHECK(e[small.mul(a, b)] == big.mul(e[a], e[b]));
            }
    }
    CHECK_THROWS_AS(embedding(GaloisField(9), GaloisField(27)), std::invalid_argument);
}

TEST_CASE("worked curve over F_5")
{
    const CurveContext ctx(5, 1);
    const std::vector<std::uint32_t> f{1, 1, 0, 1};
    CHECK(is_squarefree(ctx, f));
    const auto n = point_counts(ctx, f);
    CHECK(n == std::vector<std::int64_t>{9});
    const auto cp = char_poly_from_counts(n, 5, 1);
    CHECK(cp == zv({5, 3, 1}));
    const Poly red = reduce_mod(cp, 3);
    CHECK(red == parse_poly("X^2+2", 3));
    CHECK(red == parse_poly("X-1", 3) * parse_poly("X+1", 3));
    CHECK(factor_multiplicity(red, parse_poly("X-1", 3)) == 1);
    CHECK(oracle::naive_point_count_prime(5, f) == 9);

    const std::vector<std::uint32_t> g{0, 4, 0, 1}; // x^3 - x
    CHECK(point_counts(ctx, g).front() == oracle::naive_point_count_prime(5, g));
    CHECK(point_counts(ctx, g).front() == oracle::naive_point_count(5, 1, g));
}

TEST_CASE("char poly from counts")
{
    CHECK(char_poly_from_counts({6}, 5, 1) == zv({5, 0, 1}));
    CHECK(char_poly_from_counts({14}, 13, 1) == zv({13, 0, 1}));
    CHECK_THROWS_AS(char_poly_from_counts({}, 5, 1), std::invalid_argument);
    // N_1 = 6, N_2 = 37 gives 2 e_2 = p_1^2 - p_2 = 0 - (-11), not integral
    CHECK_THROWS_AS(char_poly_from_counts({6, 37}, 5, 2), std::logic_error);
    CHECK(functional_equation_holds(zv({5, 3, 1}), 5, 1));
    CHECK_FALSE(functional_equation_holds(zv({4, 3, 1}), 5, 1));
    CHECK(weil_deviation(zv({5, 3, 1}), 5) < 1e-12);
    CHECK(weil_deviation(zv({25, 10, 1}), 25) < 1e-9); // double root -5
    CHECK(weil_deviation(zv({1, 0, 1}), 5) > 1);
}

TEST_CASE("point counts agree with the naive oracle")
{
    for (auto [q, g] : {std::pair<std::uint32_t, int>{5, 1}, {5, 2}, {7, 2}}) {
        const CurveContext ctx(q, g);
        Xoshiro256 rng(1000 + q * 10 + static_cast<std::uint32_t>(g));
        for (int t = 0; t < 50; ++t) {
            const auto s = sample_curve(ctx, rng);
            const auto n = point_counts(ctx, s.f);
            for (int i = 1; i <= g; ++i)
                CHECK(n[static_cast<std::size_t>(i - 1)] == oracle::naive_point_count(q, i, s.f));
            const auto cp = char_poly_from_counts(n, q, g);
            CHECK(functional_equation_holds(cp, q, g));
            CHECK(cp.front() == mpz_class(static_cast<unsigned long>(std::pow(q, g))));
            // N_1 = q + 1 - p_1 and p_1 = -c_{2g-1}
            CHECK(n[0] == static_cast<std::int64_t>(q) + 1 + cp[static_cast<std::size_t>(2 * g - 1)].get_si());
            CHECK(weil_deviation(cp, q) < 1e-6);
        }
    }
}

TEST_CASE("prime power base fields agree with extensions of the prime field")
{
    // A curve with F_3 coefficients counted over F_9 directly and as the
    // second count over F_3.
    const CurveContext c3(3, 2), c9(9, 1);
    Xoshiro256 rng(9);
    for (int t = 0; t < 20; ++t) {
        const auto s = sample_curve(c3, rng);
        std::vector<std::uint32_t> f9;
        for (auto c : s.f)
            f9.push_back(c9.base().to_int(embedding(c3.base(), c9.base())[c3.base().from_int(c)]));
        CHECK(point_counts(c9, f9).front() == point_counts(c3, s.f)[1]);
    }
    const CurveContext c9g2(9, 2);
    Xoshiro256 rng2(10);
    for (int t = 0; t < 5; ++t) {
        const auto s = sample_curve(c9g2, rng2);
        const auto cp = char_poly_from_counts(point_counts(c9g2, s.f), 9, 2);
        CHECK(functional_equation_holds(cp, 9, 2));
        CHECK(weil_deviation(cp, 9) < 1e-6);
    }
}

TEST_CASE("squarefree sampling")
{
    const CurveContext ctx(5, 1);
    int squarefree = 0;
    for (std::uint32_t idx = 0; idx < 125; ++idx)
        squarefree += is_squarefree(ctx, {idx % 5, idx / 5 % 5, idx / 25, 1});
    CHECK(squarefree == 100);

    Xoshiro256 rng(3);
    std::uint64_t proposals = 0;
    const int accepted = 8000;
    for (int i = 0; i < accepted; ++i)
        CHECK(is_squarefree(ctx, sample_curve(ctx, rng, &proposals).f));
    const double rate = accepted / static_cast<double>(proposals);
    CHECK(std::abs(rate - 0.8) < 3 * std::sqrt(0.8 * 0.2 / static_cast<double>(proposals)));

    Xoshiro256 a(77), b(77);
    CHECK(sample_curve(ctx, a).f == sample_curve(ctx, b).f);
}

TEST_CASE("hypothesis gates")
{
    CurveRunConfig cfg;
    cfg.l = 3;
    cfg.q = 7;
    cfg.conditions = {{parse_poly("X-1", 3), 0}};
    CHECK_THROWS_WITH_AS(validate_curve_config(cfg), doctest::Contains("P(q)"), std::invalid_argument);
    cfg.q = 9;
    cfg.conditions = {{parse_poly("X+1", 3), 0}};
    CHECK_THROWS_WITH_AS(validate_curve_config(cfg), doctest::Contains("divide q"), std::invalid_argument);
    cfg.q = 5;
    cfg.conditions = {{parse_poly("X", 3), 0}, {parse_poly("2*X", 3), 1}};
    CHECK_THROWS_WITH_AS(validate_curve_config(cfg), doctest::Contains("coprime"), std::invalid_argument);
    cfg.conditions = {{parse_poly("X^2-1", 3), 0}};
    CHECK_THROWS_WITH_AS(validate_curve_config(cfg), doctest::Contains("irreducible"), std::invalid_argument);
    cfg.l = 9;
    CHECK_THROWS_AS(validate_curve_config(cfg), std::invalid_argument);
    cfg.l = 3;
    cfg.conditions = {{parse_poly("X-1", 3), 1}, {parse_poly("X^2+1", 3), 0}};
    CHECK_NOTHROW(validate_curve_config(cfg));
}

TEST_CASE("exhaustive census over F_5 in genus 1")
{
    CurveRunConfig cfg;
    cfg.l = 3;
    cfg.q = 5;
    cfg.g = 1;
    cfg.exhaustive = true;
    cfg.conditions = {{parse_poly("X-1", 3), 0}};
    const auto a = curve_census(cfg, Execution::Serial);
    cfg.seed = 99;
    const auto b = curve_census(cfg, Execution::Parallel);
    REQUIRE(a.size() == 100);
    REQUIRE(b.size() == 100);
    std::vector<std::vector<mpz_class>> pa, pb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa.push_back(a[i].curve.char_poly);
        pb.push_back(b[i].curve.char_poly);
        CHECK(functional_equation_holds(a[i].curve.char_poly, 5, 1));
        CHECK(weil_deviation(a[i].curve.char_poly, 5) < 1e-6);
    }
    CHECK(pa == pb);

    const auto rep = density_report(a, cfg);
    std::uint64_t sum = 0;
    for (const auto& [m, count] : rep.multiplicity_histograms[0])
        sum += count;
    CHECK(sum == rep.trials);
    CHECK(rep.hits == rep.multiplicity_histograms[0].at(0));
    CHECK(rep.predicted.value == MeasureValue(1, {3}));
}

TEST_CASE("random curve census is reproducible")
{
    CurveRunConfig cfg;
    cfg.l = 3;
    cfg.q = 7;
    cfg.g = 2;
    cfg.trials = 300;
    cfg.seed = 7;
    cfg.conditions = {{parse_poly("X+1", 3), 0}, {parse_poly("X^2+1", 3), 0}};
    const auto a = curve_census(cfg, Execution::Serial);
    cfg.workers = 4;
    const auto b = curve_census(cfg, Execution::Parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].curve.f == b[i].curve.f);
        CHECK(a[i].multiplicities == b[i].multiplicities);
    }
    const auto rep = independence_report(a, cfg);
    CHECK(rep.trials == 300);
    CHECK(rep.table[0][0] + rep.table[0][1] + rep.table[1][0] + rep.table[1][1] == 300);
}

TEST_CASE("independence harness self tests")
{
    Xoshiro256 rng(5);
    std::vector<std::pair<bool, bool>> indep, same;
    for (int i = 0; i < 5000; ++i) {
        const bool a = rng.uniform01() < 0.4;
        const bool b = rng.uniform01() < 0.7;
        indep.emplace_back(a, b);
        same.emplace_back(a, a);
    }
    const auto r = independence_from_labels(indep);
    CHECK(r.chi_square < 10.83);
    CHECK(std::abs(r.gap) < 3 * r.standard_error);
    const auto d = independence_from_labels(same);
    CHECK(d.gap == doctest::Approx(d.p1 * (1 - d.p1)));
    CHECK(d.chi_square == doctest::Approx(5000.0));
    CHECK(std::abs(d.gap) > 10 * d.standard_error);
}
