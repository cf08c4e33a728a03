// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/module_type.hpp"

#include <algorithm>
#include <stdexcept>

namespace cokernel_lab {

ModuleType::ModuleType(RingSpec r, TypeKey types) : ring(std::move(r)), local_types(std::move(types))
{
    if (local_types.size() != ring.factor_count())
        throw std::invalid_argument("module type needs one partition per local factor");
    for (std::size_t i = 0; i < local_types.size(); ++i)
        if (local_types[i].largest() > ring.factors()[i].exponent())
            throw std::invalid_argument("partition part exceeds the factor exponent");
}

ModuleType ModuleType::trivial(const RingSpec& r) { return ModuleType(r, TypeKey(r.factor_count())); }

int ModuleType::fl_dimension() const
{
    int d = 0;
    for (std::size_t i = 0; i < local_types.size(); ++i)
        d += ring.factors()[i].residue_degree() * local_types[i].size();
    return d;
}

mpz_class ModuleType::cardinality() const
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), ring.characteristic(), static_cast<unsigned long>(fl_dimension()));
    return r;
}

std::string to_string(const TypeKey& key)
{
    std::string s = "[";
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i > 0)
            s += ',';
        s += to_string(key[i]);
    }
    return s + "]";
}

RingMatrix::RingMatrix(RingSpec r, std::size_t n_rows, std::size_t n_cols)
    : ring(std::move(r)), rows(n_rows), cols(n_cols), entries(n_rows * n_cols, ring.zero())
{
}

RingMatrix RingMatrix::identity(const RingSpec& r, std::size_t n)
{
    RingMatrix m(r, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = r.one();
    return m;
}

RingMatrix multiply(const RingMatrix& a, const RingMatrix& b)
{
    if (!(a.ring == b.ring))
        throw std::invalid_argument("matrices over different rings");
    if (a.cols != b.rows)
        throw std::invalid_argument("matrix shapes do not compose");
    RingMatrix c(a.ring, a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            RingElem acc = a.ring.zero();
            for (std::size_t k = 0; k < a.cols; ++k)
                acc = a.ring.add(acc, a.ring.mul(a.at(i, k), b.at(k, j)));
            c.at(i, j) = std::move(acc);
        }
    return c;
}

PolyMatrix::PolyMatrix(Residue field, std::size_t n_rows, std::size_t n_cols)
    : l(field), rows(n_rows), cols(n_cols), entries(n_rows * n_cols, Poly::zero(field))
{
}

namespace {

/// Reduces to diagonal form by unimodular row/column operations. Returns the
/// min(rows, cols) diagonal entries (not yet in divisibility order).
std::vector<Poly> diagonalize(PolyMatrix& m)
{
    const std::size_t k = std::min(m.rows, m.cols);
    std::vector<Poly> diag;
    diag.reserve(k);
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            std::size_t pi = m.rows, pj = m.cols;
            int best = -1;
            for (std::size_t i = t; i < m.rows; ++i)
                for (std::size_t j = t; j < m.cols; ++j) {
                    const int d = m.at(i, j).degree();
                    if (d >= 0 && (best < 0 || d < best)) {
                        best = d;
                        pi = i;
                        pj = j;
                    }
                }
            if (best < 0) {
                while (diag.size() < k)
                    diag.push_back(Poly::zero(m.l));
                return diag;
            }
            if (pi != t)
                for (std::size_t j = 0; j < m.cols; ++j)
                    std::swap(m.at(t, j), m.at(pi, j));
            if (pj != t)
                for (std::size_t i = 0; i < m.rows; ++i)
                    std::swap(m.at(i, t), m.at(i, pj));

            const Poly pivot = m.at(t, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < m.rows; ++i) {
                if (m.at(i, t).is_zero())
                    continue;
                auto [q, r] = divmod(m.at(i, t), pivot);
                for (std::size_t j = t + 1; j < m.cols; ++j)
                    if (!m.at(t, j).is_zero())
                        m.at(i, j) = m.at(i, j) - q * m.at(t, j);
                if (!r.is_zero())
                    clean = false;
                m.at(i, t) = std::move(r);
            }
            for (std::size_t j = t + 1; j < m.cols; ++j) {
                if (m.at(t, j).is_zero())
                    continue;
                auto [q, r] = divmod(m.at(t, j), pivot);
                for (std::size_t i = t + 1; i < m.rows; ++i)
                    if (!m.at(i, t).is_zero())
                        m.at(i, j) = m.at(i, j) - q * m.at(i, t);
                if (!r.is_zero())
                    clean = false;
                m.at(t, j) = std::move(r);
            }
            if (clean)
                break;
        }
        diag.push_back(monic(m.at(t, t)));
    }
    return diag;
}

Poly lcm(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return Poly::zero(a.modulus());
    return monic(divmod(a * b, gcd(a, b)).quotient);
}

} // namespace

std::vector<Poly> snf_invariant_factors(PolyMatrix m)
{
    auto d = diagonalize(m);
    // diag(a, b) ~ diag(gcd, lcm); sweeping all pairs yields a divisor chain
    // with zeros pushed to the end.
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[i].is_zero() && d[j].is_zero())
                continue;
            Poly g = gcd(d[i], d[j]);
            Poly h = lcm(d[i], d[j]);
            d[i] = std::move(g);
            d[j] = std::move(h);
        }
    return d;
}

ModuleType coker_type(const RingMatrix& a)
{
    if (a.rows != a.cols)
        throw std::invalid_argument("cokernel type needs a square matrix");
    const std::size_t n = a.rows;
    const auto l = a.ring.characteristic();
    TypeKey types;
    for (std::size_t f = 0; f < a.ring.factor_count(); ++f) {
        const auto& fac = a.ring.factors()[f];
        PolyMatrix block(l, n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                block.at(i, j) = a.at(i, j).residues[f];
            block.at(i, n + i) = fac.modulus();
        }
        // The p-primary part of a diagonal presentation is already the
        // module type; divisibility order is not needed here.
        const auto diag = diagonalize(block);
        std::vector<int> parts;
        for (const auto& d : diag)
            parts.push_back(factor_multiplicity(d, fac.prime()));
        types.emplace_back(std::move(parts));
    }
    return ModuleType(a.ring, std::move(types));
}

int d_invariant(const Partition& lambda, int e)
{
    if (lambda.largest() > e)
        throw std::invalid_argument("partition part exceeds the ring exponent");
    return lambda.count_equal(e);
}

mpz_class aut_order_local(const Partition& lambda, std::uint64_t residue_size)
{
    // Hillar-Rhea indexing uses ascending parts e_1 <= ... <= e_n.
    std::vector<int> e(lambda.parts().rbegin(), lambda.parts().rend());
    const int n = static_cast<int>(e.size());
    const mpz_class q(static_cast<unsigned long>(residue_size));
    auto qpow = [&](long x) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(x));
        return r;
    };
    mpz_class result = 1;
    for (int k = 1; k <= n; ++k) {
        const int v = e[static_cast<std::size_t>(k - 1)];
        int d = k, c = k;
        while (d < n && e[static_cast<std::size_t>(d)] == v)
            ++d;
        while (c > 1 && e[static_cast<std::size_t>(c - 2)] == v)
            --c;
        result *= qpow(d) - qpow(k - 1);
        result *= qpow(static_cast<long>(v) * (n - d));
        result *= qpow(static_cast<long>(v - 1) * (n - c + 1));
    }
    return result;
}

mpz_class aut_order(const ModuleType& t)
{
    mpz_class r = 1;
    for (std::size_t i = 0; i < t.local_types.size(); ++i)
        r *= aut_order_local(t.local_types[i], t.ring.factors()[i].residue_size());
    return r;
}

mpz_class hom_count_local(const Partition& m, const Partition& a, std::uint64_t residue_size)
{
    unsigned long exponent = 0;
    for (int x : m.parts())
        for (int y : a.parts())
            exponent += static_cast<unsigned long>(std::min(x, y));
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), residue_size, exponent);
    return r;
}

mpz_class hom_count(const ModuleType& m, const ModuleType& a)
{
    if (!(m.ring == a.ring))
        throw std::invalid_argument("hom_count: modules over different rings");
    mpz_class r = 1;
    for (std::size_t i = 0; i < m.local_types.size(); ++i)
        r *= hom_count_local(m.local_types[i], a.local_types[i], m.ring.factors()[i].residue_size());
    return r;
}

std::vector<ModuleType> enumerate_module_types(const RingSpec& ring, int dim_fl)
{
    std::vector<ModuleType> out;
    if (dim_fl < 0)
        return out;
    TypeKey cur;
    const auto& facs = ring.factors();
    auto rec = [&](auto&& self, std::size_t f, int remaining) -> void {
        if (f == facs.size()) {
            if (remaining == 0)
                out.emplace_back(ring, cur);
            return;
        }
        const int k = facs[f].residue_degree();
        for (int size = 0; size * k <= remaining; ++size) {
            if (f + 1 == facs.size() && size * k != remaining)
                continue;
            for (auto& p : partitions_of(size, facs[f].exponent())) {
                cur.push_back(std::move(p));
                self(self, f + 1, remaining - size * k);
                cur.pop_back();
            }
        }
    };
    rec(rec, 0, dim_fl);
    return out;
}

} // namespace cokernel_lab
