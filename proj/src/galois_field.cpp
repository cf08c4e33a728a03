// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/galois_field.hpp"

#include <stdexcept>
#include <string>

namespace cokernel_lab {

namespace {

/// Multiply the integer-form element by t modulo the monic modulus.
std::uint32_t times_t(std::uint32_t a, const Poly& modulus, Residue p, int k, std::uint32_t top_weight)
{
    const std::uint32_t top = a / top_weight;
    std::uint32_t shifted = (a % top_weight) * p;
    if (top == 0)
        return shifted;
    // subtract top * (modulus - t^k), digit by digit
    std::uint32_t out = 0;
    std::uint32_t w = 1;
    for (int j = 0; j < k; ++j) {
        const std::uint32_t d = shifted / w % p;
        const std::uint32_t m = modulus[static_cast<std::size_t>(j)];
        const std::uint32_t nd = (d + p - top * m % p) % p;
        out += nd * w;
        w *= p;
    }
    return out;
}

} // namespace

GaloisField::GaloisField(std::uint32_t q) : q_(q), p_(0), k_(0), order_(q - 1), modulus_(Poly::zero(3))
{
    if (q < 3 || q > (1u << 24))
        throw std::invalid_argument("field size must be an odd prime power in [3, 2^24]");
    const auto pp = prime_power_decomposition(q);
    if (pp.prime == 0 || pp.prime == 2)
        throw std::invalid_argument("field size must be an odd prime power: " + std::to_string(q));
    p_ = static_cast<Residue>(pp.prime);
    k_ = static_cast<int>(pp.exponent);
    std::uint32_t top_weight = 1;
    for (int j = 1; j < k_; ++j)
        top_weight *= p_;

    // First monic irreducible (in integer order of the lower coefficients)
    // for which t has order q - 1.
    for (std::uint32_t idx = 0; idx < q; ++idx) {
        std::vector<Residue> c(static_cast<std::size_t>(k_ + 1));
        auto v = idx;
        for (int j = 0; j < k_; ++j) {
            c[static_cast<std::size_t>(j)] = v % p_;
            v /= p_;
        }
        c.back() = 1;
        Poly cand(p_, c);
        if (cand[0] == 0 || !is_irreducible(cand))
            continue;
        modulus_ = cand;
        exp_.assign(order_, 0);
        // generator: t, or the root -c_0 when k = 1
        std::uint32_t cur = 1;
        bool primitive = true;
        for (std::uint32_t i = 0; i < order_; ++i) {
            if (i > 0 && cur == 1) {
                primitive = false;
                break;
            }
            exp_[i] = cur;
            cur = k_ == 1 ? static_cast<std::uint32_t>(std::uint64_t{cur} * ((p_ - cand[0]) % p_) % p_)
                          : times_t(cur, cand, p_, k_, top_weight);
        }
        if (!primitive || cur != 1)
            continue;
        break;
    }
    if (exp_.empty())
        throw std::logic_error("no primitive modulus found");

    log_.assign(q_, zero());
    for (std::uint32_t i = 0; i < order_; ++i)
        log_[exp_[i]] = i;
    zech_.assign(order_, zero());
    for (std::uint32_t n = 0; n < order_; ++n) {
        // 1 + g^n: add one to the constant digit
        const std::uint32_t a = exp_[n];
        const std::uint32_t c0 = a % p_;
        const std::uint32_t sum = a - c0 + (c0 + 1) % p_;
        zech_[n] = log_[sum];
    }
}

GaloisField::Elem GaloisField::inv(Elem a) const
{
    if (is_zero(a))
        throw std::domain_error("inverse of zero in F_q");
    return a == 0 ? 0 : order_ - a;
}

GaloisField::Elem GaloisField::pow(Elem a, std::uint64_t e) const
{
    if (e == 0)
        return one();
    if (is_zero(a))
        return zero();
    return static_cast<Elem>((std::uint64_t{a} * (e % order_)) % order_);
}

std::vector<GaloisField::Elem> embedding(const GaloisField& small, const GaloisField& big)
{
    if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0)
        throw std::invalid_argument("no embedding between these fields");
    const std::uint32_t order = small.size() - 1;
    std::vector<GaloisField::Elem> out(small.size());
    out[small.zero()] = big.zero();
    // The image of the small generator has order q-1 and is a root of the
    // small modulus; scan the order-(q-1) elements h^{(Q-1)/(q-1) s}.
    const std::uint32_t step = (big.size() - 1) / order;
    const Poly& m = small.modulus();
    for (std::uint32_t s = 1; s <= order; ++s) {
        const GaloisField::Elem cand = static_cast<GaloisField::Elem>(std::uint64_t{step} * s % (big.size() - 1));
        GaloisField::Elem v = big.zero();
        for (int j = m.degree(); j >= 0; --j)
            v = big.add(big.mul(v, cand), big.from_prime(m[static_cast<std::size_t>(j)]));
        if (!big.is_zero(v))
            continue;
        for (std::uint32_t i = 0; i < order; ++i)
            out[i] = big.pow(cand, i);
        return out;
    }
    throw std::logic_error("small modulus has no root in the extension");
}

} // namespace cokernel_lab
