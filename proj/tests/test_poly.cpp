// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <random>

#include "cokernel_lab/poly.hpp"
#include "cokernel_lab/ring.hpp"

using namespace cokernel_lab;

namespace {

Poly random_poly(std::mt19937_64& rng, Residue l, int max_degree)
{
    std::vector<Residue> c(static_cast<std::size_t>(max_degree + 1));
    for (auto& x : c)
        x = static_cast<Residue>(rng() % l);
    return Poly(l, std::move(c));
}

/// All monic polynomials of exactly the given degree.
std::vector<Poly> monics(Residue l, int degree)
{
    std::vector<Poly> out;
    std::uint64_t n = 1;
    for (int i = 0; i < degree; ++i)
        n *= l;
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        std::vector<Residue> c(static_cast<std::size_t>(degree + 1));
        auto v = idx;
        for (int i = 0; i < degree; ++i) {
            c[static_cast<std::size_t>(i)] = static_cast<Residue>(v % l);
            v /= l;
        }
        c.back() = 1;
        out.emplace_back(l, std::move(c));
    }
    return out;
}

bool irreducible_by_trial_division(const Poly& p)
{
    for (int d = 1; 2 * d <= p.degree(); ++d)
        for (const auto& q : monics(p.modulus(), d))
            if ((p % q).is_zero())
                return false;
    return true;
}

} // namespace

TEST_CASE("prime field inverses and axioms")
{
    for (Residue l : {3u, 5u, 7u}) {
        const PrimeField f(l);
        for (Residue a = 1; a < l; ++a)
            CHECK(f.mul(a, f.inv(a)) == 1);
    }
    const PrimeField f(3);
    for (Residue a = 0; a < 3; ++a)
        for (Residue b = 0; b < 3; ++b)
            for (Residue c = 0; c < 3; ++c) {
                CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            }
    CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
}

TEST_CASE("gcd and division examples over F_3")
{
    const Residue l = 3;
    const Poly x2m1 = parse_poly("X^2-1", l);
    const Poly xm1 = parse_poly("X-1", l);
    CHECK(gcd(x2m1, xm1) == Poly(l, {2, 1}));
    CHECK(gcd(Poly::zero(l), Poly::x(l)) == Poly::x(l));

    const auto [q, r] = divmod(parse_poly("X^2+2", l), xm1);
    CHECK(q == Poly(l, {1, 1}));
    CHECK(r.is_zero());
    CHECK_THROWS_AS(divmod(xm1, Poly::zero(l)), std::domain_error);
    CHECK_THROWS_AS(Poly::x(3) + Poly::x(5), std::invalid_argument);
}

TEST_CASE("divmod reconstructs the dividend")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Poly a = random_poly(rng, 5, 7);
        Poly b = random_poly(rng, 5, 3);
        if (b.is_zero())
            continue;
        const auto [q, r] = divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
        const auto eg = extended_gcd(a, b);
        CHECK(eg.s * a + eg.t * b == eg.g);
        CHECK(eg.g == gcd(a, b));
    }
}

TEST_CASE("irreducibility examples")
{
    CHECK(is_irreducible(parse_poly("X^2+1", 3)));
    CHECK_FALSE(is_irreducible(parse_poly("X^2-1", 3)));
    CHECK(is_irreducible(Poly::x(5)));
    CHECK_THROWS_AS(is_irreducible(Poly::constant(3, 2)), std::invalid_argument);
}

TEST_CASE("X^2+1 is irreducible over F_3 because -1 is not a square")
{
    bool minus_one_is_square = false;
    for (Residue a = 0; a < 3; ++a)
        minus_one_is_square |= (a * a) % 3 == 2;
    CHECK_FALSE(minus_one_is_square);
}

TEST_CASE("is_irreducible agrees with trial division for deg <= 4")
{
    for (Residue l : {3u, 5u})
        for (int d = 1; d <= 4; ++d) {
            if (l == 5 && d == 4) {
                // 625 polynomials; sample every 7th to keep the suite quick
                const auto all = monics(l, d);
                for (std::size_t i = 0; i < all.size(); i += 7)
                    CHECK(is_irreducible(all[i]) == irreducible_by_trial_division(all[i]));
                continue;
            }
            for (const auto& p : monics(l, d))
                CHECK(is_irreducible(p) == irreducible_by_trial_division(p));
        }
}

TEST_CASE("factor multiplicity")
{
    const Residue l = 3;
    const Poly xm1 = parse_poly("X-1", l);
    CHECK(factor_multiplicity(parse_poly("X^2+2", l), xm1) == 1);
    CHECK(factor_multiplicity(pow(xm1, 3) * parse_poly("X+1", l), xm1) == 3);
    CHECK(factor_multiplicity(parse_poly("X^2+1", l), xm1) == 0);
    CHECK(parse_poly("X^2+1", l).evaluate(1) == 2);
    CHECK_THROWS_AS(factor_multiplicity(Poly::zero(l), xm1), std::domain_error);

    std::mt19937_64 rng(500);
    const std::vector<Poly> primes = {xm1, parse_poly("X^2+1", l), parse_poly("X^3+2*X+1", l)};
    for (int trial = 0; trial < 500; ++trial) {
        const Poly f = random_poly(rng, l, 6);
        if (f.is_zero())
            continue;
        const Poly& p = primes[static_cast<std::size_t>(trial) % primes.size()];
        CHECK(factor_multiplicity(f * p, p) == factor_multiplicity(f, p) + 1);
    }
}

TEST_CASE("polynomial parsing")
{
    CHECK(parse_poly("X^2+2", 3).coeffs() == std::vector<Residue>{2, 0, 1});
    CHECK(parse_poly("2*X^3 - X + 1", 5).coeffs() == std::vector<Residue>{1, 4, 0, 2});
    CHECK(parse_poly("X-a", 3, 2) == Poly(3, {1, 1}));
    CHECK(parse_poly("x + 4", 3) == Poly(3, {1, 1}));
    CHECK_THROWS_AS(parse_poly("X-a", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("X^^2", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("", 3), std::invalid_argument);
    CHECK(to_string(parse_poly("X^2+2", 3)) == "X^2 + 2");
}

TEST_CASE("quotient ring arithmetic")
{
    const RingSpec r = RingSpec::local(Poly::x(3), 2);
    const RingElem x = r.from_poly(Poly::x(3));
    CHECK(r.mul(x, x) == r.zero());

    const RingElem u = r.from_poly(parse_poly("1+X", 3));
    CHECK(r.is_unit(u));
    CHECK(r.inverse(u) == r.from_poly(parse_poly("1+2*X", 3)));
    CHECK_FALSE(r.is_unit(x));
    CHECK_THROWS_AS(r.inverse(x), std::domain_error);

    const RingSpec f3 = RingSpec::local(Poly::x(3), 1);
    CHECK(f3.mul(f3.constant(2), f3.constant(2)) == f3.one());

    const RingSpec other = RingSpec::local(Poly::x(5), 1);
    CHECK_THROWS_AS(r.add(x, other.one()), std::invalid_argument);
}

TEST_CASE("ring validation")
{
    CHECK_THROWS_AS(RingSpec::local(parse_poly("X^2-1", 3), 1), std::invalid_argument);
    CHECK_THROWS_AS(RingSpec::local(Poly::x(3), 0), std::invalid_argument);
    CHECK_THROWS_AS(RingSpec({LocalRingSpec(Poly::x(3), 1), LocalRingSpec(Poly::x(3), 2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RingSpec({LocalRingSpec(Poly::x(3), 1), LocalRingSpec(Poly::x(5), 1)}),
                    std::invalid_argument);
    const RingSpec ok({LocalRingSpec(parse_poly("X-1", 3), 1), LocalRingSpec(parse_poly("X^2+1", 3), 2)});
    CHECK(ok.dimension() == 5);
    CHECK(ok.size() == 243);
    CHECK(ok.factors()[1].residue_size() == 9);
}

TEST_CASE("ring axioms on random elements")
{
    const RingSpec r({LocalRingSpec(parse_poly("X-1", 5), 2), LocalRingSpec(parse_poly("X^2+2", 5), 2)});
    std::mt19937_64 rng(1000);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto a = r.element(rng() % r.size());
        const auto b = r.element(rng() % r.size());
        const auto c = r.element(rng() % r.size());
        CHECK(r.add(r.add(a, b), c) == r.add(a, r.add(b, c)));
        CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
        if (r.is_unit(a))
            CHECK(r.mul(a, r.inverse(a)) == r.one());
    }
}
