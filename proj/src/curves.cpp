// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace cokernel_lab {

namespace {

using Elem = GaloisField::Elem;
using FqPoly = std::vector<Elem>;

void trim(const GaloisField& f, FqPoly& a)
{
    while (!a.empty() && f.is_zero(a.back()))
        a.pop_back();
}

FqPoly fq_mod(const GaloisField& f, FqPoly a, const FqPoly& b)
{
    trim(f, a);
    const Elem lead_inv = f.inv(b.back());
    while (a.size() >= b.size()) {
        const Elem c = f.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
        trim(f, a);
    }
    return a;
}

using QPoly = std::vector<mpq_class>;

void trim(QPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

QPoly q_divmod(QPoly a, const QPoly& b, QPoly* quotient)
{
    trim(a);
    QPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    while (a.size() >= b.size()) {
        const mpq_class c = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= c * b[i];
        trim(a);
    }
    if (quotient)
        *quotient = std::move(quot);
    return a;
}

QPoly q_gcd(QPoly a, QPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = q_divmod(a, b, nullptr);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

mpz_class zpow(std::uint64_t b, unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

CurveRecord make_record(const CurveContext& ctx, CurveSample s, const CurveRunConfig& cfg)
{
    s.char_poly = char_poly_from_counts(point_counts(ctx, s.f), ctx.q(), ctx.genus());
    CurveRecord r{std::move(s), {}};
    const Poly reduced = reduce_mod(r.curve.char_poly, cfg.l);
    for (const auto& c : cfg.conditions)
        r.multiplicities.push_back(factor_multiplicity(reduced, monic(c.prime)));
    return r;
}

} // namespace

CurveContext::CurveContext(std::uint32_t q, int g) : q_(q), g_(g)
{
    if (g < 1)
        throw std::invalid_argument("genus must be >= 1");
    std::uint64_t size = 1;
    for (int i = 1; i <= g; ++i) {
        size *= q;
        if (size > (1u << 24))
            throw std::invalid_argument("q^g exceeds 2^24; point counting by enumeration is out of range");
        fields_.emplace_back(static_cast<std::uint32_t>(size));
    }
    for (int i = 1; i <= g; ++i)
        embeddings_.push_back(embedding(fields_[0], fields_[static_cast<std::size_t>(i - 1)]));
}

bool is_squarefree(const CurveContext& ctx, const std::vector<std::uint32_t>& f)
{
    const GaloisField& F = ctx.base();
    FqPoly a;
    for (auto c : f)
        a.push_back(F.from_int(c));
    trim(F, a);
    FqPoly d;
    for (std::size_t j = 1; j < a.size(); ++j)
        d.push_back(F.mul(F.from_prime(static_cast<std::uint32_t>(j % F.characteristic())), a[j]));
    trim(F, d);
    if (d.empty())
        return a.size() <= 1;
    while (!d.empty()) {
        FqPoly r = fq_mod(F, a, d);
        a = std::move(d);
        d = std::move(r);
    }
    return a.size() == 1;
}

CurveSample sample_curve(const CurveContext& ctx, Xoshiro256& rng, std::uint64_t* proposals)
{
    CurveSample s;
    s.q = ctx.q();
    s.g = ctx.genus();
    s.f.assign(static_cast<std::size_t>(2 * s.g + 2), 0);
    s.f.back() = 1;
    do {
        for (int j = 0; j <= 2 * s.g; ++j)
            s.f[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(rng.below(s.q));
        if (proposals)
            ++*proposals;
    } while (!is_squarefree(ctx, s.f));
    return s;
}

std::vector<std::int64_t> point_counts(const CurveContext& ctx, const std::vector<std::uint32_t>& f)
{
    std::vector<std::int64_t> counts;
    for (int i = 1; i <= ctx.genus(); ++i) {
        const GaloisField& F = ctx.extension(i);
        std::vector<Elem> coeffs;
        for (auto c : f)
            coeffs.push_back(ctx.embed(i, ctx.base().from_int(c)));
        std::int64_t chi_sum = 0;
        // x runs over zero and every power of the generator
        for (std::uint32_t x = 0; x < F.size(); ++x) {
            Elem v = F.zero();
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
                v = F.add(F.mul(v, x), *it);
            chi_sum += F.chi(v);
        }
        counts.push_back(1 + static_cast<std::int64_t>(F.size()) + chi_sum);
    }
    return counts;
}

std::vector<mpz_class> char_poly_from_counts(const std::vector<std::int64_t>& counts, std::uint32_t q, int g)
{
    if (static_cast<int>(counts.size()) < g)
        throw std::invalid_argument("need N_1..N_g");
    std::vector<mpz_class> p(static_cast<std::size_t>(g + 1));
    for (int i = 1; i <= g; ++i)
        p[static_cast<std::size_t>(i)] =
            zpow(q, static_cast<unsigned long>(i)) + 1 - mpz_class(std::to_string(counts[static_cast<std::size_t>(i - 1)]));
    // Newton: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    std::vector<mpz_class> e(static_cast<std::size_t>(2 * g + 1));
    e[0] = 1;
    for (int k = 1; k <= g; ++k) {
        mpz_class acc = 0;
        for (int i = 1; i <= k; ++i) {
            const mpz_class term = e[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i)];
            acc += (i % 2 == 1) ? term : mpz_class(-term);
        }
        if (acc % k != 0)
            throw std::logic_error("Newton identity produced a non-integer coefficient; point counts are inconsistent");
        e[static_cast<std::size_t>(k)] = acc / k;
    }
    for (int k = 0; k < g; ++k)
        e[static_cast<std::size_t>(2 * g - k)] = zpow(q, static_cast<unsigned long>(g - k)) * e[static_cast<std::size_t>(k)];
    // coefficient of X^{2g-k} is (-1)^k e_k
    std::vector<mpz_class> c(static_cast<std::size_t>(2 * g + 1));
    for (int k = 0; k <= 2 * g; ++k)
        c[static_cast<std::size_t>(2 * g - k)] = (k % 2 == 0) ? e[static_cast<std::size_t>(k)] : mpz_class(-e[static_cast<std::size_t>(k)]);
    return c;
}

bool functional_equation_holds(const std::vector<mpz_class>& c, std::uint32_t q, int g)
{
    if (static_cast<int>(c.size()) != 2 * g + 1 || c.back() != 1)
        return false;
    for (int i = 0; i <= g; ++i)
        if (c[static_cast<std::size_t>(i)] != zpow(q, static_cast<unsigned long>(g - i)) * c[static_cast<std::size_t>(2 * g - i)])
            return false;
    return true;
}

double weil_deviation(const std::vector<mpz_class>& char_poly, std::uint32_t q)
{
    QPoly a(char_poly.begin(), char_poly.end());
    trim(a);
    QPoly d;
    for (std::size_t j = 1; j < a.size(); ++j)
        d.push_back(a[j] * static_cast<unsigned long>(j));
    QPoly sq = a;
    const QPoly g = q_gcd(a, d);
    if (g.size() > 1)
        q_divmod(a, g, &sq);
    const int n = static_cast<int>(sq.size()) - 1;
    if (n < 1)
        return 0;
    std::vector<long double> m(sq.size());
    for (std::size_t i = 0; i < sq.size(); ++i)
        m[i] = static_cast<long double>(mpq_class(sq[i] / sq.back()).get_d());
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        comp(i, i - 1) = 1;
    for (int i = 0; i < n; ++i)
        comp(i, n - 1) = -static_cast<double>(m[static_cast<std::size_t>(i)]);
    const Eigen::VectorXcd roots = Eigen::EigenSolver<Eigen::MatrixXd>(comp, false).eigenvalues();
    const long double sqrt_q = std::sqrt(static_cast<long double>(q));
    double worst = 0;
    for (int r = 0; r < n; ++r) {
        std::complex<long double> z(roots[r].real(), roots[r].imag());
        for (int it = 0; it < 8; ++it) {
            std::complex<long double> v = 0, dv = 0;
            for (int j = n; j >= 0; --j) {
                dv = dv * z + v;
                v = v * z + m[static_cast<std::size_t>(j)];
            }
            if (std::abs(dv) == 0)
                break;
            z -= v / dv;
        }
        worst = std::max(worst, static_cast<double>(std::abs(std::abs(z) - sqrt_q)));
    }
    return worst;
}

Poly reduce_mod(const std::vector<mpz_class>& char_poly, Residue l)
{
    std::vector<Residue> c;
    for (const auto& x : char_poly)
        c.push_back(static_cast<Residue>(mpz_fdiv_ui(x.get_mpz_t(), l)));
    return Poly(l, std::move(c));
}

void validate_curve_config(const CurveRunConfig& cfg)
{
    if (!is_prime(cfg.l) || cfg.l < 3)
        throw std::invalid_argument("l must be an odd prime, got " + std::to_string(cfg.l));
    const auto pp = prime_power_decomposition(cfg.q);
    if (pp.prime == 0 || pp.prime == 2)
        throw std::invalid_argument("q must be an odd prime power, got " + std::to_string(cfg.q));
    if (cfg.q % cfg.l == 0)
        throw std::invalid_argument("hypothesis l does not divide q fails: l = " + std::to_string(cfg.l) +
                                    ", q = " + std::to_string(cfg.q));
    for (std::size_t i = 0; i < cfg.conditions.size(); ++i) {
        const auto& c = cfg.conditions[i];
        const std::string name = to_string(c.prime);
        if (c.prime.modulus() != cfg.l)
            throw std::invalid_argument("condition " + name + " is not over F_" + std::to_string(cfg.l));
        if (c.multiplicity < 0)
            throw std::invalid_argument("condition " + name + " has negative multiplicity");
        if (c.prime.degree() < 1 || !is_irreducible(c.prime))
            throw std::invalid_argument("condition " + name + " is not irreducible over F_" + std::to_string(cfg.l));
        if (c.prime.evaluate(static_cast<Residue>(cfg.q % cfg.l)) == 0)
            throw std::invalid_argument("hypothesis l does not divide P(q) fails for P = " + name + ": P(" +
                                        std::to_string(cfg.q) + ") = 0 mod " + std::to_string(cfg.l));
        for (std::size_t j = 0; j < i; ++j)
            if (monic(cfg.conditions[j].prime) == monic(c.prime))
                throw std::invalid_argument("conditions " + to_string(cfg.conditions[j].prime) + " and " + name +
                                            " are not coprime");
    }
}

std::vector<CurveRecord> curve_census(const CurveRunConfig& cfg, Execution ex)
{
    validate_curve_config(cfg);
    const CurveContext ctx(cfg.q, cfg.g);
    const int workers = std::max(1, cfg.workers);

    if (cfg.exhaustive) {
        std::uint64_t total = 1;
        for (int j = 0; j <= 2 * cfg.g; ++j) {
            total *= cfg.q;
            if (total > cfg.exhaustive_cap)
                throw std::length_error("exhaustive curve census exceeds the cap of " + std::to_string(cfg.exhaustive_cap));
        }
        const std::uint64_t blocks = block_count(total);
        std::vector<std::vector<CurveRecord>> partial(blocks);
        auto body = [&](std::uint64_t b) {
            const std::uint64_t end = std::min(total, (b + 1) * kBlockSize);
            for (std::uint64_t idx = b * kBlockSize; idx < end; ++idx) {
                CurveSample s;
                s.q = cfg.q;
                s.g = cfg.g;
                auto v = idx;
                for (int j = 0; j <= 2 * cfg.g; ++j) {
                    s.f.push_back(static_cast<std::uint32_t>(v % cfg.q));
                    v /= cfg.q;
                }
                s.f.push_back(1);
                if (is_squarefree(ctx, s.f))
                    partial[b].push_back(make_record(ctx, std::move(s), cfg));
            }
        };
        if (ex == Execution::Serial) {
            for (std::uint64_t b = 0; b < blocks; ++b)
                body(b);
        } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
            for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b)
                body(static_cast<std::uint64_t>(b));
        }
        std::vector<CurveRecord> out;
        for (auto& p : partial)
            for (auto& r : p)
                out.push_back(std::move(r));
        return out;
    }

    const std::uint64_t blocks = block_count(cfg.trials);
    const auto streams = block_streams(cfg.seed, blocks);
    std::vector<CurveRecord> out(cfg.trials);
    auto body = [&](std::uint64_t b) {
        Xoshiro256 rng = streams[b];
        const std::uint64_t end = std::min(cfg.trials, (b + 1) * kBlockSize);
        for (std::uint64_t t = b * kBlockSize; t < end; ++t)
            out[t] = make_record(ctx, sample_curve(ctx, rng), cfg);
    };
    if (ex == Execution::Serial) {
        for (std::uint64_t b = 0; b < blocks; ++b)
            body(b);
    } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b)
            body(static_cast<std::uint64_t>(b));
    }
    return out;
}

DensityReport density_report(const std::vector<CurveRecord>& records, const CurveRunConfig& cfg)
{
    DensityReport rep;
    rep.trials = records.size();
    rep.predicted = divisor_density(cfg.conditions);
    rep.multiplicity_histograms.resize(cfg.conditions.size());
    for (const auto& r : records) {
        bool hit = true;
        for (std::size_t i = 0; i < cfg.conditions.size(); ++i) {
            ++rep.multiplicity_histograms[i][r.multiplicities[i]];
            hit &= r.multiplicities[i] == cfg.conditions[i].multiplicity;
        }
        rep.hits += hit;
    }
    if (rep.trials > 0) {
        const double n = static_cast<double>(rep.trials);
        rep.empirical = static_cast<double>(rep.hits) / n;
        rep.standard_error = std::sqrt(rep.empirical * (1 - rep.empirical) / n);
    }
    return rep;
}

DensityReport divisibility_stats(const CurveRunConfig& cfg, Execution ex)
{
    return density_report(curve_census(cfg, ex), cfg);
}

IndependenceReport independence_from_labels(const std::vector<std::pair<bool, bool>>& labels)
{
    IndependenceReport rep;
    rep.trials = labels.size();
    for (const auto& [a, b] : labels)
        ++rep.table[a][b];
    if (rep.trials == 0)
        return rep;
    const double n = static_cast<double>(rep.trials);
    rep.p1 = static_cast<double>(rep.table[1][0] + rep.table[1][1]) / n;
    rep.p2 = static_cast<double>(rep.table[0][1] + rep.table[1][1]) / n;
    rep.p12 = static_cast<double>(rep.table[1][1]) / n;
    rep.gap = rep.p12 - rep.p1 * rep.p2;
    rep.standard_error = std::sqrt(rep.p1 * (1 - rep.p1) * rep.p2 * (1 - rep.p2) / n);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double expected = n * (a ? rep.p1 : 1 - rep.p1) * (b ? rep.p2 : 1 - rep.p2);
            if (expected > 0) {
                const double diff = static_cast<double>(rep.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) - expected;
                rep.chi_square += diff * diff / expected;
            }
        }
    return rep;
}

IndependenceReport independence_report(const std::vector<CurveRecord>& records, const CurveRunConfig& cfg)
{
    if (cfg.conditions.size() != 2)
        throw std::invalid_argument("independence statistics need exactly two conditions");
    std::vector<std::pair<bool, bool>> labels;
    labels.reserve(records.size());
    for (const auto& r : records)
        labels.emplace_back(r.multiplicities[0] == cfg.conditions[0].multiplicity,
                            r.multiplicities[1] == cfg.conditions[1].multiplicity);
    return independence_from_labels(labels);
}

IndependenceReport independence_stats(const CurveRunConfig& cfg, Execution ex)
{
    if (cfg.conditions.size() != 2)
        throw std::invalid_argument("independence statistics need exactly two conditions");
    return independence_report(curve_census(cfg, ex), cfg);
}

} // namespace cokernel_lab
