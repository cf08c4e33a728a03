// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace cokernel_lab {

namespace {

mpz_class zpow(std::uint64_t base, unsigned long exp)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

} // namespace

EtaEval eta(std::uint64_t residue_size, double tol)
{
    if (residue_size < 2)
        throw std::invalid_argument("eta needs a field size >= 2");
    if (!(tol > 0))
        throw std::invalid_argument("eta tolerance must be positive");
    EtaEval out;
    out.residue_size = residue_size;
    out.tol = tol;
    const long double q = static_cast<long double>(residue_size);
    const long double ratio = 1.0L / (1.0L - 1.0L / q);
    long double tail = ratio; // Q^{-depth} / (1 - 1/Q)
    long double value = 1.0L;
    while (!(tail < tol)) {
        ++out.depth;
        tail /= q;
        value *= 1.0L - std::pow(q, -static_cast<long double>(out.depth));
    }
    out.value = static_cast<double>(value);
    return out;
}

double eta_value(std::uint64_t residue_size)
{
    static std::shared_mutex mutex;
    static std::map<std::uint64_t, double> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(residue_size); it != cache.end())
            return it->second;
    }
    const double v = eta(residue_size, 1e-15).value;
    std::unique_lock lock(mutex);
    cache.emplace(residue_size, v);
    return v;
}

MeasureValue::MeasureValue(mpq_class r, std::vector<std::uint64_t> etas)
    : rational(std::move(r)), eta_factors(std::move(etas))
{
    rational.canonicalize();
    std::sort(eta_factors.begin(), eta_factors.end());
}

double MeasureValue::value() const
{
    double v = rational.get_d();
    for (auto q : eta_factors)
        v *= eta_value(q);
    return v;
}

double MeasureValue::value(double tol) const
{
    double v = rational.get_d();
    for (auto q : eta_factors)
        v *= eta(q, tol).value;
    return v;
}

MeasureValue operator+(const MeasureValue& a, const MeasureValue& b)
{
    if (a.eta_factors != b.eta_factors)
        throw std::invalid_argument("cannot add measure values with different eta factors");
    return MeasureValue(a.rational + b.rational, a.eta_factors);
}

MeasureValue operator*(const MeasureValue& a, const MeasureValue& b)
{
    auto etas = a.eta_factors;
    etas.insert(etas.end(), b.eta_factors.begin(), b.eta_factors.end());
    return MeasureValue(a.rational * b.rational, std::move(etas));
}

MeasureValue operator/(const MeasureValue& a, const mpz_class& d)
{
    if (d == 0)
        throw std::domain_error("measure value divided by zero");
    return MeasureValue(a.rational / mpq_class(d), a.eta_factors);
}

mpz_class qbinom(int n, int k, std::uint64_t q)
{
    if (k < 0 || k > n)
        return 0;
    mpz_class num = 1, den = 1;
    for (int i = 1; i <= n; ++i)
        num *= zpow(q, static_cast<unsigned long>(i)) - 1;
    for (int i = 1; i <= k; ++i)
        den *= zpow(q, static_cast<unsigned long>(i)) - 1;
    for (int i = 1; i <= n - k; ++i)
        den *= zpow(q, static_cast<unsigned long>(i)) - 1;
    mpz_class r = num / den;
    if (r * den != num)
        throw std::logic_error("Gaussian binomial is not integral");
    return r;
}

MeasureValue c_constant_local(std::uint64_t residue_size, int j)
{
    if (j < 0)
        throw std::invalid_argument("c_{R,j} needs j >= 0");
    mpz_class den = 1;
    for (int k = 1; k <= j; ++k)
        den *= zpow(residue_size, static_cast<unsigned long>(k)) - 1;
    const auto num = zpow(residue_size, static_cast<unsigned long>(j) * (static_cast<unsigned long>(j) + 1) / 2);
    return MeasureValue(mpq_class(num, den), {residue_size});
}

MeasureValue c_constant(const RingSpec& ring, const std::vector<int>& j)
{
    if (j.size() != ring.factor_count())
        throw std::invalid_argument("c_{R,j} needs one j per local factor");
    MeasureValue r(1, {});
    for (std::size_t i = 0; i < j.size(); ++i)
        r = r * c_constant_local(ring.factors()[i].residue_size(), j[i]);
    return r;
}

MeasureValue mu(const ModuleType& t)
{
    std::vector<int> j;
    for (std::size_t i = 0; i < t.local_types.size(); ++i)
        j.push_back(d_invariant(t.local_types[i], t.ring.factors()[i].exponent()));
    return c_constant(t.ring, j) / aut_order(t);
}

MeasureValue rank_distribution(std::uint64_t residue_size, int residue_degree, int e, int m)
{
    if (m < 0 || e < 1 || residue_degree < 1)
        throw std::invalid_argument("rank_distribution: need m >= 0, e >= 1, degree >= 1");
    MeasureValue total = MeasureValue::zero({residue_size});
    if (m % residue_degree != 0)
        return total;
    for (const auto& lambda : partitions_of(m / residue_degree, e))
        total = total + c_constant_local(residue_size, d_invariant(lambda, e)) / aut_order_local(lambda, residue_size);
    return total;
}

MeasureValue rank_distribution(const LocalRingSpec& ring, int m)
{
    return rank_distribution(ring.residue_size(), ring.residue_degree(), ring.exponent(), m);
}

MeasureValue rank_distribution_partition_form(std::uint64_t residue_size, int residue_degree, int e, int m)
{
    if (m < 0 || e < 1 || residue_degree < 1)
        throw std::invalid_argument("rank_distribution_partition_form: bad arguments");
    MeasureValue total = MeasureValue::zero({residue_size});
    if (m % residue_degree != 0)
        return total;
    const int size = m / residue_degree;
    auto qpow = [&](long x) { return zpow(residue_size, static_cast<unsigned long>(x)); };
    // mpq power with possibly negative exponent
    auto qpow_signed = [&](long x) { return x >= 0 ? mpq_class(qpow(x)) : mpq_class(1, qpow(-x)); };

    for (int j = 0; j <= size; ++j) {
        mpq_class inner = 0;
        for (const auto& p : partitions_of(size, e)) {
            if (p.count_equal(e) != j)
                continue;
            // ascending lambda_1 <= ... <= lambda_n, 1-based d_k, c_k
            std::vector<int> lam(p.parts().rbegin(), p.parts().rend());
            const long n = static_cast<long>(lam.size());
            auto d_of = [&](long k) {
                long r = k;
                while (r < n && lam[static_cast<std::size_t>(r)] == lam[static_cast<std::size_t>(k - 1)])
                    ++r;
                return r;
            };
            auto c_of = [&](long k) {
                long r = k;
                while (r > 1 && lam[static_cast<std::size_t>(r - 2)] == lam[static_cast<std::size_t>(k - 1)])
                    --r;
                return r;
            };
            mpq_class term = 1;
            for (long k = 1; k <= n; ++k)
                term /= mpq_class(qpow(d_of(k)) - qpow(k - 1));
            for (long jj = 1; jj <= n; ++jj)
                term *= qpow_signed(lam[static_cast<std::size_t>(jj - 1)] * (-n + d_of(jj)));
            for (long i = 1; i <= n; ++i)
                term *= qpow_signed((lam[static_cast<std::size_t>(i - 1)] - 1) * (-n + c_of(i) - 1));
            inner += term;
        }
        const auto c = c_constant_local(residue_size, j);
        total = total + MeasureValue(c.rational * inner, c.eta_factors);
    }
    return total;
}

mpz_class submodule_count(const Partition& lambda, const Partition& mu_type, std::uint64_t residue_size)
{
    if (!mu_type.contained_in(lambda))
        return 0;
    const Partition lt = lambda.transpose();
    const Partition mt = mu_type.transpose();
    mpz_class r = 1;
    for (int i = 0; i < lt.length(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const long lam_i = lt[idx];
        const long mu_i = mt[idx];
        const long mu_next = mt[idx + 1];
        r *= zpow(residue_size, static_cast<unsigned long>(mu_next * (lam_i - mu_i)));
        r *= qbinom(static_cast<int>(lam_i - mu_next), static_cast<int>(mu_i - mu_next), residue_size);
    }
    return r;
}

mpz_class moment_rank(std::uint64_t residue_size, int e, int k)
{
    if (e < 1 || k < 0)
        throw std::invalid_argument("moment_rank: need e >= 1 and k >= 0");
    mpz_class total = 0;
    // mu ranges over partitions inside the k x e box; mu'_j <= k.
    for (const auto& m : partitions_in_box(k, e)) {
        const Partition mt = m.transpose();
        mpz_class prod = 1;
        for (int j = 1; j <= e; ++j) {
            const long cur = mt[static_cast<std::size_t>(j - 1)];
            const long next = mt[static_cast<std::size_t>(j)];
            prod *= zpow(residue_size, static_cast<unsigned long>(next * (k - cur)));
            prod *= qbinom(static_cast<int>(k - next), static_cast<int>(cur - next), residue_size);
        }
        total += prod;
    }
    return total;
}

bool eta_product_gt_half(const std::vector<std::uint64_t>& residue_sizes)
{
    double p = 1.0;
    for (auto q : residue_sizes)
        p *= eta_value(q);
    return p > 0.5;
}

DensityPrediction divisor_density(const std::vector<DivisorCondition>& conditions)
{
    MeasureValue total(1, {});
    std::vector<std::uint64_t> sizes;
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        const auto& c = conditions[i];
        if (c.multiplicity < 0)
            throw std::invalid_argument("divisor multiplicity must be >= 0");
        const Poly p = monic(c.prime);
        if (p.degree() < 1 || !is_irreducible(p))
            throw std::invalid_argument("divisor condition polynomial is not irreducible: " + to_string(c.prime));
        for (std::size_t j = 0; j < i; ++j) {
            require_same_field(p, conditions[j].prime);
            if (monic(conditions[j].prime) == p)
                throw std::invalid_argument("divisor condition polynomials must be pairwise coprime");
        }
        const LocalRingSpec ring(p, c.multiplicity + 1);
        sizes.push_back(ring.residue_size());
        total = total * rank_distribution(ring, c.multiplicity * ring.residue_degree());
    }
    return {total, eta_product_gt_half(sizes)};
}

IndependencePrediction independence_prediction(const ModuleType& t)
{
    IndependencePrediction out{mu(t), MeasureValue(1, {})};
    for (std::size_t i = 0; i < t.local_types.size(); ++i) {
        const RingSpec local({t.ring.factors()[i]});
        out.product_of_factors = out.product_of_factors * mu(ModuleType(local, {t.local_types[i]}));
    }
    return out;
}

mpq_class finite_n_constant(std::uint64_t residue_size, int j, int n)
{
    if (j < 0 || n < j)
        throw std::invalid_argument("finite_n_constant needs 0 <= j <= n");
    const int cols = n - j;
    mpz_class gl = 1;
    for (int i = 0; i < cols; ++i)
        gl *= zpow(residue_size, static_cast<unsigned long>(cols)) - zpow(residue_size, static_cast<unsigned long>(i));
    mpq_class r(qbinom(n, j, residue_size) * gl,
                zpow(residue_size, static_cast<unsigned long>(n) * static_cast<unsigned long>(cols)));
    r.canonicalize();
    return r;
}

} // namespace cokernel_lab
