// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/submodules.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>

#include "cokernel_lab/fl_matrix.hpp"

namespace cokernel_lab {

std::uint64_t enumeration_cap()
{
    if (const char* env = std::getenv("COKERNEL_LAB_CAP")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("COKERNEL_LAB_CAP is not an integer: ") + env);
        }
    }
    return 59049; // 3^10
}

ExplicitModule realize(const LocalRingSpec& ring, const Partition& type)
{
    if (type.largest() > ring.exponent())
        throw std::invalid_argument("partition part exceeds the ring exponent");
    ExplicitModule m;
    m.l = ring.characteristic();
    m.residue_degree = ring.residue_degree();
    m.type = type;
    m.dim = type.size() * m.residue_degree;
    if (m.dim > kMaxSubspaceDim)
        throw std::length_error("module too large to realize explicitly");

    FlMatrix x(m.l, m.dim, m.dim);
    int offset = 0;
    for (int part : type.parts()) {
        m.generator_index.push_back(offset);
        const Poly block_mod = pow(ring.prime(), static_cast<unsigned>(part));
        const int bd = block_mod.degree();
        for (int j = 0; j + 1 < bd; ++j)
            x.at(offset + j, offset + j + 1) = 1;
        for (int c = 0; c < bd; ++c)
            x.at(offset + bd - 1, offset + c) = (m.l - block_mod[static_cast<std::size_t>(c)]) % m.l;
        offset += bd;
    }

    // p(X) acting on the right, by Horner in the matrix algebra.
    FlMatrix p(m.l, m.dim, m.dim);
    const Poly& prime = ring.prime();
    for (int k = prime.degree(); k >= 0; --k) {
        p = p * x;
        for (int i = 0; i < m.dim; ++i)
            p.at(i, i) = (p.at(i, i) + prime[static_cast<std::size_t>(k)]) % m.l;
    }
    m.x_action = std::move(x.data);
    m.p_action = std::move(p.data);
    return m;
}

Partition subspace_type(const ExplicitModule& m, const std::vector<std::vector<Residue>>& rows)
{
    FlMatrix n(m.l, static_cast<int>(rows.size()), m.dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < m.dim; ++j)
            n.at(static_cast<int>(i), j) = rows[i][static_cast<std::size_t>(j)];
    FlMatrix p(m.l, m.dim, m.dim);
    p.data = m.p_action;

    std::vector<int> transpose;
    int prev = rank(n);
    while (prev > 0) {
        n = n * p;
        const int cur = rank(n);
        if (cur == prev)
            throw std::logic_error("subspace is not p-nilpotent");
        transpose.push_back((prev - cur) / m.residue_degree);
        prev = cur;
    }
    return Partition(std::move(transpose)).transpose();
}

namespace {

constexpr int kMax = kMaxSubspaceDim;

struct Shape {
    int rank = 0;
    std::array<int, kMax> pivot{};
    std::vector<int> nonpivot;
    std::vector<std::pair<int, int>> slots; ///< (row, col) free entries
};

Shape make_shape(std::uint32_t mask, int d)
{
    Shape s;
    for (int c = 0; c < d; ++c) {
        if (mask & (1u << c))
            s.pivot[static_cast<std::size_t>(s.rank++)] = c;
        else
            s.nonpivot.push_back(c);
    }
    for (int r = 0; r < s.rank; ++r)
        for (int c : s.nonpivot)
            if (c > s.pivot[static_cast<std::size_t>(r)])
                s.slots.emplace_back(r, c);
    return s;
}

struct WorkItem {
    std::uint32_t mask;
    std::uint64_t prefix;
    int prefix_len;
};

std::uint64_t power(std::uint64_t b, std::size_t e)
{
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

/// Walks the RREF matrices of every F_l-subspace and reports the X-stable ones.
class StableSubspaceScanner {
public:
    explicit StableSubspaceScanner(const ExplicitModule& m) : m_(m), d_(m.dim)
    {
        if (d_ > kMax)
            throw std::length_error("module too large for subspace enumeration");
        scalar_ = true;
        for (int i = 0; i < d_ && scalar_; ++i)
            for (int j = 0; j < d_; ++j) {
                const Residue v = m.x_action[static_cast<std::size_t>(i * d_ + j)];
                if ((i == j && v != m.x_action[0]) || (i != j && v != 0)) {
                    scalar_ = false;
                    break;
                }
            }
    }

    std::vector<WorkItem> work_items() const
    {
        std::vector<WorkItem> items;
        for (std::uint32_t mask = 0; mask < (1u << d_); ++mask) {
            const auto f = make_shape(mask, d_).slots.size();
            const int plen = static_cast<int>(std::min<std::size_t>(f, 2));
            const auto n = power(m_.l, static_cast<std::size_t>(plen));
            for (std::uint64_t p = 0; p < n; ++p)
                items.push_back({mask, p, plen});
        }
        return items;
    }

    template <class Visit>
    void run(const WorkItem& item, Visit&& visit) const
    {
        const Shape s = make_shape(item.mask, d_);
        std::array<Residue, kMax * kMax> rows{};
        for (int r = 0; r < s.rank; ++r)
            rows[static_cast<std::size_t>(r * d_ + s.pivot[static_cast<std::size_t>(r)])] = 1;

        std::uint64_t prefix = item.prefix;
        for (int i = 0; i < item.prefix_len; ++i) {
            const auto [r, c] = s.slots[static_cast<std::size_t>(i)];
            rows[static_cast<std::size_t>(r * d_ + c)] = static_cast<Residue>(prefix % m_.l);
            prefix /= m_.l;
        }
        const std::size_t first = static_cast<std::size_t>(item.prefix_len);
        const std::size_t n_slots = s.slots.size();
        for (;;) {
            if (scalar_ || stable(rows.data(), s))
                visit(rows.data(), s.rank);
            // odometer over the free slots after the prefix
            std::size_t i = first;
            for (; i < n_slots; ++i) {
                const auto [r, c] = s.slots[i];
                auto& v = rows[static_cast<std::size_t>(r * d_ + c)];
                if (++v < m_.l)
                    break;
                v = 0;
            }
            if (i == n_slots)
                break;
        }
    }

    int dim() const { return d_; }

private:
    bool stable(const Residue* rows, const Shape& s) const
    {
        const Residue l = m_.l;
        const Residue* t = m_.x_action.data();
        std::array<std::uint32_t, kMax> w{};
        std::array<std::uint32_t, kMax> wp{};
        for (int r = 0; r < s.rank; ++r) {
            w.fill(0);
            const Residue* row = rows + r * d_;
            for (int i = s.pivot[static_cast<std::size_t>(r)]; i < d_; ++i) {
                const std::uint32_t a = row[i];
                if (a == 0)
                    continue;
                const Residue* ti = t + i * d_;
                for (int j = 0; j < d_; ++j)
                    w[static_cast<std::size_t>(j)] += a * ti[j];
            }
            for (int j = 0; j < s.rank; ++j)
                wp[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(s.pivot[static_cast<std::size_t>(j)])] % l;
            for (int c : s.nonpivot) {
                std::uint32_t acc = w[static_cast<std::size_t>(c)] % l;
                for (int j = 0; j < s.rank; ++j)
                    acc += (l - wp[static_cast<std::size_t>(j)]) * rows[j * d_ + c];
                if (acc % l != 0)
                    return false;
            }
        }
        return true;
    }

    const ExplicitModule& m_;
    int d_;
    bool scalar_ = false;
};

std::vector<std::vector<Residue>> to_rows(const Residue* rows, int rank, int d)
{
    std::vector<std::vector<Residue>> out(static_cast<std::size_t>(rank));
    for (int r = 0; r < rank; ++r)
        out[static_cast<std::size_t>(r)].assign(rows + r * d, rows + (r + 1) * d);
    return out;
}

} // namespace

std::uint64_t count_submodules_explicit(const ExplicitModule& m, Execution ex)
{
    const StableSubspaceScanner scanner(m);
    const auto items = scanner.work_items();
    std::uint64_t total = 0;
    if (ex == Execution::Serial) {
        for (const auto& item : items)
            scanner.run(item, [&](const Residue*, int) { ++total; });
        return total;
    }
    const auto n = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
    for (std::int64_t i = 0; i < n; ++i) {
        std::uint64_t local = 0;
        scanner.run(items[static_cast<std::size_t>(i)], [&](const Residue*, int) { ++local; });
        total += local;
    }
    return total;
}

SubmoduleCensus submodule_census(const ExplicitModule& m, Execution ex)
{
    const StableSubspaceScanner scanner(m);
    const auto items = scanner.work_items();
    const int d = m.dim;
    SubmoduleCensus census;
    if (ex == Execution::Serial) {
        for (const auto& item : items)
            scanner.run(item, [&](const Residue* rows, int rank) { ++census[subspace_type(m, to_rows(rows, rank, d))]; });
        return census;
    }
    const auto n = static_cast<std::int64_t>(items.size());
#pragma omp parallel
    {
        SubmoduleCensus local;
#pragma omp for schedule(dynamic, 1) nowait
        for (std::int64_t i = 0; i < n; ++i)
            scanner.run(items[static_cast<std::size_t>(i)],
                        [&](const Residue* rows, int rank) { ++local[subspace_type(m, to_rows(rows, rank, d))]; });
#pragma omp critical(cokernel_lab_census_merge)
        for (const auto& [t, c] : local)
            census[t] += c;
    }
    return census;
}

namespace {

void check_cap(const ModuleType& a, std::uint64_t cap)
{
    if (a.cardinality() > mpz_class(static_cast<unsigned long>(cap)))
        throw std::length_error("module of size " + a.cardinality().get_str() +
                                " exceeds the enumeration cap " + std::to_string(cap));
}

} // namespace

std::vector<std::pair<ModuleType, std::uint64_t>> enumerate_submodules(const ModuleType& a, std::uint64_t cap)
{
    check_cap(a, cap);
    std::vector<std::pair<TypeKey, std::uint64_t>> acc{{TypeKey{}, 1}};
    for (std::size_t f = 0; f < a.ring.factor_count(); ++f) {
        const auto census = submodule_census(realize(a.ring.factors()[f], a.local_types[f]));
        std::vector<std::pair<TypeKey, std::uint64_t>> next;
        for (const auto& [key, count] : acc)
            for (const auto& [t, c] : census) {
                TypeKey k = key;
                k.push_back(t);
                next.emplace_back(std::move(k), count * c);
            }
        acc = std::move(next);
    }
    std::vector<std::pair<ModuleType, std::uint64_t>> out;
    out.reserve(acc.size());
    for (auto& [key, count] : acc)
        out.emplace_back(ModuleType(a.ring, std::move(key)), count);
    return out;
}

mpz_class count_submodules(const ModuleType& a, std::uint64_t cap)
{
    check_cap(a, cap);
    mpz_class total = 1;
    for (std::size_t f = 0; f < a.ring.factor_count(); ++f)
        total *= static_cast<unsigned long>(count_submodules_explicit(realize(a.ring.factors()[f], a.local_types[f])));
    return total;
}

mpz_class surj_count(const ModuleType& m, const ModuleType& a, std::uint64_t cap)
{
    if (!(m.ring == a.ring))
        throw std::invalid_argument("surj_count: modules over different rings");
    check_cap(a, cap);
    mpz_class total = 1;
    for (std::size_t f = 0; f < a.ring.factor_count(); ++f) {
        const auto& ring = a.ring.factors()[f];
        const Partition& source = m.local_types[f];
        std::map<Partition, mpz_class> memo;
        std::function<mpz_class(const Partition&)> surj = [&](const Partition& target) -> mpz_class {
            if (auto it = memo.find(target); it != memo.end())
                return it->second;
            mpz_class s = hom_count_local(source, target, ring.residue_size());
            for (const auto& [sub, count] : submodule_census(realize(ring, target)))
                if (sub != target)
                    s -= mpz_class(static_cast<unsigned long>(count)) * surj(sub);
            memo.emplace(target, s);
            return s;
        };
        total *= surj(a.local_types[f]);
    }
    return total;
}

} // namespace cokernel_lab
