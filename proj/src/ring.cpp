// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/ring.hpp"

#include <limits>
#include <stdexcept>

namespace cokernel_lab {

LocalRingSpec::LocalRingSpec(Poly p, int e) : p_(std::move(p)), e_(e)
{
    if (e_ < 1)
        throw std::invalid_argument("local ring exponent must be >= 1");
    if (p_.degree() < 1)
        throw std::invalid_argument("local ring prime must be non-constant");
    if (!p_.is_monic())
        throw std::invalid_argument("local ring prime must be monic: " + to_string(p_));
    if (!is_irreducible(p_))
        throw std::invalid_argument("local ring prime is reducible: " + to_string(p_));
    modulus_ = pow(p_, static_cast<unsigned>(e_));
    residue_size_ = 1;
    for (int i = 0; i < p_.degree(); ++i) {
        if (residue_size_ > std::numeric_limits<std::uint64_t>::max() / p_.modulus())
            throw std::overflow_error("residue field too large");
        residue_size_ *= p_.modulus();
    }
}

RingSpec::RingSpec(std::vector<LocalRingSpec> factors) : factors_(std::move(factors))
{
    if (factors_.empty())
        throw std::invalid_argument("ring needs at least one local factor");
    const auto l = factors_.front().characteristic();
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].characteristic() != l)
            throw std::invalid_argument("local factors over different fields");
        for (std::size_t j = 0; j < i; ++j)
            if (factors_[i].prime() == factors_[j].prime())
                throw std::invalid_argument("local factor primes must be pairwise coprime");
    }
}

RingSpec RingSpec::local(Poly p, int e) { return RingSpec({LocalRingSpec(std::move(p), e)}); }

int RingSpec::dimension() const
{
    int d = 0;
    for (const auto& f : factors_)
        d += f.dimension();
    return d;
}

std::uint64_t RingSpec::size() const
{
    std::uint64_t s = 1;
    const auto l = characteristic();
    for (int i = 0; i < dimension(); ++i) {
        if (s > (std::uint64_t{1} << 63) / l)
            throw std::overflow_error("ring too large to enumerate");
        s *= l;
    }
    return s;
}

RingElem RingSpec::zero() const
{
    RingElem r;
    for (const auto& f : factors_)
        r.residues.push_back(Poly::zero(f.characteristic()));
    return r;
}

RingElem RingSpec::one() const { return constant(1); }

RingElem RingSpec::constant(std::int64_t c) const
{
    const auto l = characteristic();
    auto v = c % static_cast<std::int64_t>(l);
    if (v < 0)
        v += l;
    return from_poly(Poly::constant(l, static_cast<Residue>(v)));
}

RingElem RingSpec::from_poly(const Poly& f) const
{
    RingElem r;
    for (const auto& fac : factors_)
        r.residues.push_back(f % fac.modulus());
    return r;
}

RingElem RingSpec::element(std::uint64_t index) const
{
    const auto l = characteristic();
    RingElem r;
    for (const auto& f : factors_) {
        std::vector<Residue> c(static_cast<std::size_t>(f.dimension()));
        for (auto& x : c) {
            x = static_cast<Residue>(index % l);
            index /= l;
        }
        r.residues.emplace_back(l, std::move(c));
    }
    return r;
}

void RingSpec::check(const RingElem& a) const
{
    if (a.residues.size() != factors_.size())
        throw std::invalid_argument("ring element has wrong number of components");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& r = a.residues[i];
        if (r.modulus() != characteristic() || r.degree() >= factors_[i].modulus().degree())
            throw std::invalid_argument("ring element component not reduced for this ring");
    }
}

RingElem RingSpec::add(const RingElem& a, const RingElem& b) const
{
    check(a);
    check(b);
    RingElem r;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        r.residues.push_back(a.residues[i] + b.residues[i]);
    return r;
}

RingElem RingSpec::sub(const RingElem& a, const RingElem& b) const
{
    check(a);
    check(b);
    RingElem r;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        r.residues.push_back(a.residues[i] - b.residues[i]);
    return r;
}

RingElem RingSpec::neg(const RingElem& a) const
{
    check(a);
    RingElem r;
    for (const auto& x : a.residues)
        r.residues.push_back(-x);
    return r;
}

RingElem RingSpec::mul(const RingElem& a, const RingElem& b) const
{
    check(a);
    check(b);
    RingElem r;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        r.residues.push_back(mulmod(a.residues[i], b.residues[i], factors_[i].modulus()));
    return r;
}

bool RingSpec::is_unit(const RingElem& a) const
{
    check(a);
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if ((a.residues[i] % factors_[i].prime()).is_zero())
            return false;
    return true;
}

RingElem RingSpec::inverse(const RingElem& a) const
{
    if (!is_unit(a))
        throw std::domain_error("element is not a unit");
    RingElem r;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto eg = extended_gcd(a.residues[i], factors_[i].modulus());
        r.residues.push_back(eg.s % factors_[i].modulus());
    }
    return r;
}

} // namespace cokernel_lab
