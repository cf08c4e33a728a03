// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace cokernel_lab {

namespace {

using Counts = std::map<TypeKey, std::uint64_t>;

void merge_into(Counts& dst, const Counts& src)
{
    for (const auto& [k, v] : src)
        dst[k] += v;
}

ModuleType free_module(const RingSpec& ring, int n)
{
    TypeKey key;
    for (const auto& f : ring.factors())
        key.emplace_back(std::vector<int>(static_cast<std::size_t>(n), f.exponent()));
    return ModuleType(ring, std::move(key));
}

/// Runs body(block) for every block, serially or over `workers` threads.
template <class Body>
void for_blocks(std::uint64_t blocks, Execution ex, int workers, Body&& body)
{
    if (ex == Execution::Serial) {
        for (std::uint64_t b = 0; b < blocks; ++b)
            body(b);
        return;
    }
    const auto n = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, workers))
    for (std::int64_t b = 0; b < n; ++b)
        body(static_cast<std::uint64_t>(b));
}

} // namespace

std::optional<std::uint64_t> exhaustive_size(const RingSpec& ring, int n)
{
    unsigned __int128 size = 1;
    unsigned __int128 r = 1;
    for (const auto& f : ring.factors())
        for (int i = 0; i < f.dimension(); ++i) {
            r *= ring.characteristic();
            if (r > ~std::uint64_t{0})
                return std::nullopt;
        }
    for (int i = 0; i < n * n; ++i) {
        size *= r;
        if (size > ~std::uint64_t{0})
            return std::nullopt;
    }
    return static_cast<std::uint64_t>(size);
}

RingElem random_element(const RingSpec& ring, Xoshiro256& rng)
{
    RingElem out;
    const Residue l = ring.characteristic();
    for (const auto& f : ring.factors()) {
        std::vector<Residue> c(static_cast<std::size_t>(f.dimension()));
        for (auto& x : c)
            x = static_cast<Residue>(rng.below(l));
        out.residues.emplace_back(l, std::move(c));
    }
    return out;
}

EmpiricalDist sample_cokernels(const SampleConfig& cfg, Execution ex)
{
    if (cfg.n < 1)
        throw std::invalid_argument("matrix size must be >= 1");
    const auto n = static_cast<std::size_t>(cfg.n);
    const std::size_t cells = n * n;
    EmpiricalDist out;

    if (cfg.mode == SampleMode::Exhaustive) {
        const auto size = exhaustive_size(cfg.ring, cfg.n);
        if (!size || *size > cfg.exhaustive_cap)
            throw std::length_error("exhaustive enumeration exceeds the cap of " + std::to_string(cfg.exhaustive_cap) +
                                    " matrices");
        const std::uint64_t ring_size = cfg.ring.size();
        std::vector<RingElem> elements;
        for (std::uint64_t i = 0; i < ring_size; ++i)
            elements.push_back(cfg.ring.element(i));
        const std::uint64_t blocks = block_count(*size);
        std::vector<Counts> partial(blocks);
        for_blocks(blocks, ex, cfg.workers, [&](std::uint64_t b) {
            RingMatrix m(cfg.ring, n, n);
            const std::uint64_t end = std::min(*size, (b + 1) * kBlockSize);
            for (std::uint64_t idx = b * kBlockSize; idx < end; ++idx) {
                auto v = idx;
                for (std::size_t c = 0; c < cells; ++c) {
                    m.entries[c] = elements[v % ring_size];
                    v /= ring_size;
                }
                ++partial[b][coker_type(m).local_types];
            }
        });
        for (const auto& p : partial)
            merge_into(out.counts, p);
        out.total = *size;
        return out;
    }

    const std::uint64_t blocks = block_count(cfg.trials);
    const auto streams = block_streams(cfg.seed, blocks);
    std::vector<Counts> partial(blocks);
    for_blocks(blocks, ex, cfg.workers, [&](std::uint64_t b) {
        Xoshiro256 rng = streams[b];
        RingMatrix m(cfg.ring, n, n);
        const std::uint64_t end = std::min(cfg.trials, (b + 1) * kBlockSize);
        for (std::uint64_t t = b * kBlockSize; t < end; ++t) {
            for (auto& e : m.entries)
                e = random_element(cfg.ring, rng);
            ++partial[b][coker_type(m).local_types];
        }
    });
    for (const auto& p : partial)
        merge_into(out.counts, p);
    out.total = cfg.trials;
    return out;
}

MomentEstimate empirical_moment(const EmpiricalDist& emp, const RingSpec& ring, const ModuleType& a, bool exact)
{
    if (emp.total == 0)
        throw std::invalid_argument("empirical moment of an empty sample");
    mpz_class sum = 0;
    for (const auto& [key, count] : emp.counts)
        sum += surj_count(ModuleType(ring, key), a) * mpz_class(static_cast<unsigned long>(count));
    const mpq_class mean(sum, mpz_class(static_cast<unsigned long>(emp.total)));
    MomentEstimate out;
    out.value = mean.get_d();
    if (exact) {
        out.exact = mean;
        out.exact->canonicalize();
    }
    return out;
}

MomentEstimate empirical_moment(const SampleConfig& cfg, const ModuleType& a, Execution ex)
{
    if (!(a.ring == cfg.ring))
        throw std::invalid_argument("moment target lives over a different ring");
    return empirical_moment(sample_cokernels(cfg, ex), cfg.ring, a, cfg.mode == SampleMode::Exhaustive);
}

mpq_class moment_closed_form(const RingSpec& ring, int n, const ModuleType& a)
{
    mpz_class size_pow;
    mpz_pow_ui(size_pow.get_mpz_t(), a.cardinality().get_mpz_t(), static_cast<unsigned long>(n));
    mpq_class r(surj_count(free_module(ring, n), a), size_pow);
    r.canonicalize();
    return r;
}

std::vector<std::pair<TypeKey, double>> theory_truncation(const RingSpec& ring, double min_mass, int max_dim)
{
    std::vector<std::pair<TypeKey, double>> out;
    double covered = 0;
    for (int d = 0; d <= max_dim && 1 - covered >= min_mass; ++d)
        for (const auto& t : enumerate_module_types(ring, d)) {
            const double m = mu(t).value();
            covered += m;
            if (m >= min_mass)
                out.emplace_back(t.local_types, m);
        }
    return out;
}

TvReport tv_distance(const EmpiricalDist& emp, const RingSpec& ring, double min_mass)
{
    if (emp.total == 0)
        throw std::invalid_argument("TV distance of an empty sample");
    std::map<TypeKey, TvRow> rows;
    double inside = 0;
    for (const auto& [key, m] : theory_truncation(ring, min_mass)) {
        rows[key] = {key, 0, m};
        inside += m;
    }
    for (const auto& [key, count] : emp.counts) {
        auto it = rows.find(key);
        if (it == rows.end()) {
            const double m = mu(ModuleType(ring, key)).value();
            it = rows.emplace(key, TvRow{key, 0, m}).first;
            inside += m;
        }
        it->second.empirical = static_cast<double>(count) / static_cast<double>(emp.total);
    }
    TvReport out;
    out.deficit = std::max(0.0, 1 - inside);
    for (auto& [key, row] : rows) {
        out.tv += std::abs(row.empirical - row.theory);
        out.rows.push_back(std::move(row));
    }
    out.tv /= 2;
    return out;
}

double tv_distance(const std::map<TypeKey, double>& a, const std::map<TypeKey, double>& b)
{
    double s = 0;
    for (const auto& [k, v] : a) {
        const auto it = b.find(k);
        s += std::abs(v - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [k, v] : b)
        if (!a.contains(k))
            s += v;
    return s / 2;
}

EmpiricalDist sample_from_theory(const RingSpec& ring, std::uint64_t trials, std::uint64_t seed, double min_mass)
{
    const auto trunc = theory_truncation(ring, min_mass);
    std::vector<double> cdf;
    double acc = 0;
    for (const auto& [key, m] : trunc)
        cdf.push_back(acc += m);
    const std::uint64_t blocks = block_count(trials);
    const auto streams = block_streams(seed, blocks);
    EmpiricalDist out;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        Xoshiro256 rng = streams[b];
        const std::uint64_t end = std::min(trials, (b + 1) * kBlockSize);
        for (std::uint64_t t = b * kBlockSize; t < end; ++t) {
            const double u = rng.uniform01() * acc;
            const auto i = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            ++out.counts[trunc[std::min(i, trunc.size() - 1)].first];
        }
    }
    out.total = trials;
    return out;
}

double factorization_gap(const EmpiricalDist& emp)
{
    if (emp.total == 0 || emp.counts.empty())
        return 0;
    const std::size_t factors = emp.counts.begin()->first.size();
    const double total = static_cast<double>(emp.total);
    std::vector<std::map<Partition, double>> marginals(factors);
    std::map<TypeKey, double> joint;
    for (const auto& [key, count] : emp.counts) {
        joint[key] = static_cast<double>(count) / total;
        for (std::size_t i = 0; i < factors; ++i)
            marginals[i][key[i]] += static_cast<double>(count) / total;
    }
    std::map<TypeKey, double> product;
    TypeKey cur(factors);
    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double p) {
        if (i == factors) {
            product[cur] = p;
            return;
        }
        for (const auto& [part, m] : marginals[i]) {
            cur[i] = part;
            rec(i + 1, p * m);
        }
    };
    rec(0, 1.0);
    return tv_distance(joint, product);
}

std::vector<PrelimitRow> finite_n_constant_demo(std::uint64_t residue_size, int j, int n_min, int n_max)
{
    std::vector<PrelimitRow> rows;
    const double closed = c_constant_local(residue_size, j).value();
    for (int n = std::max(n_min, j); n <= n_max; ++n) {
        PrelimitRow r;
        r.n = n;
        r.prelimit = finite_n_constant(residue_size, j, n);
        r.value = r.prelimit.get_d();
        r.closed_form = closed;
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace cokernel_lab
