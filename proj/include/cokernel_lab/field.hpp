// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>

namespace cokernel_lab {

using Residue = std::uint32_t;

/// Deterministic trial-division primality test; moduli here are desk-scale.
constexpr bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

/// Returns (p, r) with q = p^r, or (0, 0) when q is not a prime power.
struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;
};

constexpr PrimePower prime_power_decomposition(std::uint64_t q)
{
    if (q < 2)
        return {};
    std::uint64_t p = 2;
    while (p * p <= q && q % p != 0)
        ++p;
    if (q % p != 0)
        p = q;
    unsigned r = 0;
    while (q % p == 0) {
        q /= p;
        ++r;
    }
    if (q != 1)
        return {};
    return {p, r};
}

constexpr std::uint64_t ipow(std::uint64_t base, unsigned exp)
{
    std::uint64_t r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

/// Arithmetic in F_l for an odd prime l.
class PrimeField {
public:
    explicit PrimeField(Residue l) : l_(l)
    {
        if (l < 3 || !is_prime(l))
            throw std::invalid_argument("field modulus must be an odd prime");
    }

    Residue modulus() const { return l_; }

    Residue reduce(std::int64_t v) const
    {
        auto r = v % static_cast<std::int64_t>(l_);
        return static_cast<Residue>(r < 0 ? r + l_ : r);
    }
    Residue add(Residue a, Residue b) const { return (a + b) % l_; }
    Residue sub(Residue a, Residue b) const { return (a + l_ - b) % l_; }
    Residue neg(Residue a) const { return a == 0 ? 0 : l_ - a; }
    Residue mul(Residue a, Residue b) const
    {
        return static_cast<Residue>(std::uint64_t{a} * b % l_);
    }
    Residue pow(Residue a, std::uint64_t e) const
    {
        std::uint64_t r = 1, b = a % l_;
        while (e > 0) {
            if (e & 1)
                r = r * b % l_;
            b = b * b % l_;
            e >>= 1;
        }
        return static_cast<Residue>(r);
    }
    Residue inv(Residue a) const
    {
        if (a % l_ == 0)
            throw std::domain_error("inverse of zero in F_l");
        return pow(a, l_ - 2);
    }

private:
    Residue l_;
};

} // namespace cokernel_lab
