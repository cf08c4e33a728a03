// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "cokernel_lab/poly.hpp"

namespace cokernel_lab {

/// F_l[X]/(p^e) with p monic irreducible.
class LocalRingSpec {
public:
    LocalRingSpec(Poly p, int e);

    Residue characteristic() const { return p_.modulus(); }
    const Poly& prime() const { return p_; }
    int exponent() const { return e_; }
    /// p^e
    const Poly& modulus() const { return modulus_; }
    int residue_degree() const { return p_.degree(); }
    /// |F_l[X]/(p)| = l^deg p
    std::uint64_t residue_size() const { return residue_size_; }
    /// F_l-dimension of the ring, e * deg p.
    int dimension() const { return e_ * p_.degree(); }

    friend bool operator==(const LocalRingSpec& a, const LocalRingSpec& b)
    {
        return a.p_ == b.p_ && a.e_ == b.e_;
    }

private:
    Poly p_;
    int e_;
    Poly modulus_;
    std::uint64_t residue_size_;
};

/// CRT-local factors of F_l[X]/(prod p_i^{e_i}), p_i distinct monic irreducibles.
struct RingElem {
    std::vector<Poly> residues;
    friend bool operator==(const RingElem&, const RingElem&) = default;
};

class RingSpec {
public:
    /// Validates irreducibility, shared l and pairwise distinct primes.
    explicit RingSpec(std::vector<LocalRingSpec> factors);

    /// Convenience: single local factor.
    static RingSpec local(Poly p, int e);

    Residue characteristic() const { return factors_.front().characteristic(); }
    const std::vector<LocalRingSpec>& factors() const { return factors_; }
    std::size_t factor_count() const { return factors_.size(); }
    /// F_l-dimension of the ring.
    int dimension() const;
    /// |R| = l^dimension; throws std::overflow_error past 2^63.
    std::uint64_t size() const;

    RingElem zero() const;
    RingElem one() const;
    /// Constant polynomial c reduced into every factor.
    RingElem constant(std::int64_t c) const;
    /// Image of a polynomial of F_l[X].
    RingElem from_poly(const Poly& f) const;
    /// Element with index in [0, size()): factor-major, coefficients base l.
    RingElem element(std::uint64_t index) const;

    RingElem add(const RingElem& a, const RingElem& b) const;
    RingElem sub(const RingElem& a, const RingElem& b) const;
    RingElem neg(const RingElem& a) const;
    RingElem mul(const RingElem& a, const RingElem& b) const;
    /// A unit iff every component is coprime to its prime.
    bool is_unit(const RingElem& a) const;
    /// Throws std::domain_error on non-units.
    RingElem inverse(const RingElem& a) const;

    /// Throws std::invalid_argument when `a` is not a reduced element of this ring.
    void check(const RingElem& a) const;

    friend bool operator==(const RingSpec&, const RingSpec&) = default;

private:
    std::vector<LocalRingSpec> factors_;
};

} // namespace cokernel_lab
