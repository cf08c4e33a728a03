// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "cokernel_lab/poly.hpp"

namespace cokernel_lab {

/// F_Q for odd prime powers Q, stored in discrete-log form over a primitive
/// modulus. Addition goes through a Zech logarithm table.
class GaloisField {
public:
    using Elem = std::uint32_t;

    /// Throws std::invalid_argument unless q is an odd prime power <= 2^24.
    explicit GaloisField(std::uint32_t q);

    std::uint32_t size() const { return q_; }
    Residue characteristic() const { return p_; }
    int degree() const { return k_; }
    /// Primitive irreducible defining polynomial over F_p.
    const Poly& modulus() const { return modulus_; }

    Elem zero() const { return q_ - 1; }
    Elem one() const { return 0; }
    bool is_zero(Elem a) const { return a == q_ - 1; }

    /// Integer form sum_j d_j p^j <-> coefficient vector of the polynomial
    /// basis 1, t, ..., t^{k-1}.
    Elem from_int(std::uint32_t digits) const { return log_[digits]; }
    std::uint32_t to_int(Elem a) const { return is_zero(a) ? 0 : exp_[a]; }

    Elem add(Elem a, Elem b) const
    {
        if (is_zero(a))
            return b;
        if (is_zero(b))
            return a;
        const std::uint32_t d = b >= a ? b - a : b + order_ - a;
        const Elem z = zech_[d];
        if (is_zero(z))
            return z;
        const std::uint32_t s = a + z;
        return s >= order_ ? s - order_ : s;
    }
    Elem neg(Elem a) const
    {
        if (is_zero(a))
            return a;
        const std::uint32_t s = a + order_ / 2;
        return s >= order_ ? s - order_ : s;
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const
    {
        if (is_zero(a) || is_zero(b))
            return zero();
        const std::uint32_t s = a + b;
        return s >= order_ ? s - order_ : s;
    }
    /// Throws std::domain_error on zero.
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t e) const;

    /// Quadratic character: 0 at zero, +1 on even logs, -1 on odd logs.
    int chi(Elem a) const { return is_zero(a) ? 0 : (a % 2 == 0 ? 1 : -1); }

    /// Image of the prime-field element c.
    Elem from_prime(std::uint32_t c) const { return log_[c % p_]; }

private:
    std::uint32_t q_;
    Residue p_;
    int k_;
    std::uint32_t order_; ///< q - 1
    Poly modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<Elem> log_;
    std::vector<Elem> zech_;
};

/// Field embedding F_q -> F_{q^n}: the image of each element of `small`,
/// indexed by its log form (zero last). Sends the generator of `small` to a
/// root of its modulus in `big`.
std::vector<GaloisField::Elem> embedding(const GaloisField& small, const GaloisField& big);

} // namespace cokernel_lab
