// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/oracles.hpp"

#include <functional>
#include <stdexcept>

namespace cokernel_lab::oracle {

namespace {

struct Table {
    const LocalRingSpec* ring;
    std::vector<Poly> moduli;          ///< p^{lambda_i}
    std::vector<std::vector<Poly>> elements;
    int dim = 0;
};

Table build(const LocalRingSpec& ring, const Partition& type)
{
    Table t{&ring, {}, {}, 0};
    const Residue l = ring.characteristic();
    for (int part : type.parts()) {
        t.moduli.push_back(pow(ring.prime(), static_cast<unsigned>(part)));
        t.dim += t.moduli.back().degree();
    }
    std::vector<Poly> cur(t.moduli.size(), Poly::zero(l));
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == t.moduli.size()) {
            t.elements.push_back(cur);
            return;
        }
        const int deg = t.moduli[i].degree();
        std::vector<Residue> c(static_cast<std::size_t>(deg), 0);
        while (true) {
            cur[i] = Poly(l, c);
            rec(i + 1);
            int k = 0;
            while (k < deg && ++c[static_cast<std::size_t>(k)] == l)
                c[static_cast<std::size_t>(k++)] = 0;
            if (k == deg)
                break;
        }
    };
    rec(0);
    return t;
}

std::vector<Residue> flatten(const Table& t, const std::vector<Poly>& v)
{
    std::vector<Residue> out;
    for (std::size_t j = 0; j < v.size(); ++j)
        for (int c = 0; c < t.moduli[j].degree(); ++c)
            out.push_back(v[j][static_cast<std::size_t>(c)]);
    return out;
}

/// Elements v of `a` with p^k v = 0.
std::vector<std::vector<Poly>> killed_by(const Table& a, int k)
{
    const Poly pk = pow(a.ring->prime(), static_cast<unsigned>(k));
    std::vector<std::vector<Poly>> out;
    for (const auto& v : a.elements) {
        bool ok = true;
        for (std::size_t j = 0; j < v.size() && ok; ++j)
            ok = ((pk * v[j]) % a.moduli[j]).is_zero();
        if (ok)
            out.push_back(v);
    }
    return out;
}

/// Rows X^t v for t < deg p^{part}, i.e. the images of the F_l-basis of a
/// cyclic block sent to v.
std::vector<std::vector<Residue>> block_rows(const Table& a, const std::vector<Poly>& v, int block_degree)
{
    std::vector<std::vector<Residue>> rows;
    std::vector<Poly> cur = v;
    const Poly x = Poly::x(a.ring->characteristic());
    for (int t = 0; t < block_degree; ++t) {
        rows.push_back(flatten(a, cur));
        for (std::size_t j = 0; j < cur.size(); ++j)
            cur[j] = (cur[j] * x) % a.moduli[j];
    }
    return rows;
}

/// Incremental row echelon basis over F_l with stack-style undo.
class Echelon {
public:
    Echelon(Residue l, int dim) : l_(l), dim_(static_cast<std::size_t>(dim)), scratch_(dim_) {}

    /// Adds a row; false (and nothing stored) when it is dependent on the basis.
    bool add(const std::vector<Residue>& row)
    {
        scratch_ = row;
        // Row k vanishes on the pivots of rows < k, so one sequential pass clears every pivot.
        for (std::size_t b = 0; b < pivots_.size(); ++b) {
            const auto c = scratch_[pivots_[b]];
            if (c == 0)
                continue;
            const Residue* br = &basis_[b * dim_];
            for (std::size_t j = 0; j < dim_; ++j)
                scratch_[j] = static_cast<Residue>((scratch_[j] + std::uint64_t{l_ - c} * br[j]) % l_);
        }
        std::size_t piv = 0;
        while (piv < dim_ && scratch_[piv] == 0)
            ++piv;
        if (piv == dim_)
            return false;
        Residue inv = 1;
        while (std::uint64_t{inv} * scratch_[piv] % l_ != 1)
            ++inv;
        for (auto& x : scratch_)
            x = static_cast<Residue>(std::uint64_t{x} * inv % l_);
        basis_.insert(basis_.end(), scratch_.begin(), scratch_.end());
        pivots_.push_back(piv);
        return true;
    }

    int rank() const { return static_cast<int>(pivots_.size()); }

    void truncate(int r)
    {
        pivots_.resize(static_cast<std::size_t>(r));
        basis_.resize(static_cast<std::size_t>(r) * dim_);
    }

private:
    Residue l_;
    std::size_t dim_;
    std::vector<Residue> basis_;
    std::vector<std::size_t> pivots_;
    std::vector<Residue> scratch_;
};

enum class Want { Any, Surjective, Bijective };

std::uint64_t count_maps(const LocalRingSpec& ring, const Partition& m, const Partition& a, Want want)
{
    const Table target = build(ring, a);
    std::vector<std::vector<std::vector<Poly>>> choices;
    std::vector<int> block_degrees;
    for (int part : m.parts()) {
        choices.push_back(killed_by(target, part));
        block_degrees.push_back(part * ring.residue_degree());
    }
    const int source_dim = m.size() * ring.residue_degree();
    if (want == Want::Bijective && source_dim != target.dim)
        return 0;

    // F_l rows of every candidate image, computed once per generator slot.
    std::vector<std::vector<std::vector<std::vector<Residue>>>> rows(choices.size());
    for (std::size_t i = 0; i < choices.size(); ++i)
        for (const auto& v : choices[i])
            rows[i].push_back(block_rows(target, v, block_degrees[i]));

    std::uint64_t count = 0;
    Echelon ech(ring.characteristic(), target.dim);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == choices.size()) {
            if (want == Want::Any || ech.rank() == target.dim)
                ++count;
            return;
        }
        for (const auto& block : rows[i]) {
            if (want == Want::Any) {
                rec(i + 1);
                continue;
            }
            const int mark = ech.rank();
            bool independent = true;
            for (const auto& r : block)
                independent &= ech.add(r);
            if (want == Want::Surjective || independent)
                rec(i + 1);
            ech.truncate(mark);
        }
    };
    rec(0);
    return count;
}

} // namespace

std::uint64_t aut_order(const LocalRingSpec& ring, const Partition& lambda)
{
    return count_maps(ring, lambda, lambda, Want::Bijective);
}

std::uint64_t hom_count(const LocalRingSpec& ring, const Partition& m, const Partition& a)
{
    return count_maps(ring, m, a, Want::Any);
}

std::uint64_t surj_count(const LocalRingSpec& ring, const Partition& m, const Partition& a)
{
    return count_maps(ring, m, a, Want::Surjective);
}

std::int64_t naive_point_count_prime(std::uint32_t q, const std::vector<std::uint32_t>& f)
{
    std::vector<int> square_roots(q, 0);
    for (std::uint64_t y = 0; y < q; ++y)
        ++square_roots[y * y % q];
    std::int64_t n = 1;
    for (std::uint64_t x = 0; x < q; ++x) {
        std::uint64_t v = 0;
        for (auto it = f.rbegin(); it != f.rend(); ++it)
            v = (v * x + *it) % q;
        n += square_roots[v];
    }
    return n;
}

std::int64_t naive_point_count(std::uint32_t q, int n, const std::vector<std::uint32_t>& f)
{
    if (n < 1 || n > 3)
        throw std::invalid_argument("naive point count supports extension degree 1..3");
    // A cubic or quadratic without roots in F_q is irreducible.
    std::vector<std::uint32_t> modulus(static_cast<std::size_t>(n + 1), 0);
    modulus.back() = 1;
    if (n > 1) {
        bool found = false;
        for (std::uint64_t idx = 0; idx < std::uint64_t{q} * q * q && !found; ++idx) {
            for (int i = 0; i < n; ++i)
                modulus[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(idx / (i == 0 ? 1 : i == 1 ? q : q * q) % q);
            bool has_root = false;
            for (std::uint64_t x = 0; x < q && !has_root; ++x) {
                std::uint64_t v = 0;
                for (auto it = modulus.rbegin(); it != modulus.rend(); ++it)
                    v = (v * x + *it) % q;
                has_root = v == 0;
            }
            found = !has_root;
        }
    }
    using Elem = std::vector<std::uint32_t>;
    auto mul = [&](const Elem& a, const Elem& b) {
        std::vector<std::uint64_t> prod(static_cast<std::size_t>(2 * n), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                prod[static_cast<std::size_t>(i + j)] =
                    (prod[static_cast<std::size_t>(i + j)] + std::uint64_t{a[static_cast<std::size_t>(i)]} * b[static_cast<std::size_t>(j)]) % q;
        for (int d = 2 * n - 1; d >= n; --d) {
            const auto c = prod[static_cast<std::size_t>(d)];
            if (c == 0)
                continue;
            for (int i = 0; i <= n; ++i)
                prod[static_cast<std::size_t>(d - n + i)] =
                    (prod[static_cast<std::size_t>(d - n + i)] + (q - c) * modulus[static_cast<std::size_t>(i)]) % q;
        }
        Elem r(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            r[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(prod[static_cast<std::size_t>(i)]);
        return r;
    };
    std::vector<Elem> all;
    {
        Elem e(static_cast<std::size_t>(n), 0);
        while (true) {
            all.push_back(e);
            int k = 0;
            while (k < n && ++e[static_cast<std::size_t>(k)] == q)
                e[static_cast<std::size_t>(k++)] = 0;
            if (k == n)
                break;
        }
    }
    std::int64_t points = 1;
    for (const auto& x : all) {
        Elem v(static_cast<std::size_t>(n), 0);
        for (auto it = f.rbegin(); it != f.rend(); ++it) {
            v = mul(v, x);
            v[0] = (v[0] + *it) % q;
        }
        for (const auto& y : all)
            if (mul(y, y) == v)
                ++points;
    }
    return points;
}

} // namespace cokernel_lab::oracle
