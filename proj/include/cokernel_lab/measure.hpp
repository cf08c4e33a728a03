// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cokernel_lab/module_type.hpp"

namespace cokernel_lab {

/// Truncated eta(Q) = prod_{u >= 1} (1 - Q^{-u}).
struct EtaEval {
    std::uint64_t residue_size = 0;
    double tol = 0;
    int depth = 0;      ///< number of factors kept
    double value = 1.0; ///< |value - eta(Q)| < tol
};

/// Depth is the least u_max with Q^{-u_max} / (1 - 1/Q) < tol; tol >= 1
/// gives the empty product.
EtaEval eta(std::uint64_t residue_size, double tol = 1e-12);

/// Memoized eta value at the default tolerance.
double eta_value(std::uint64_t residue_size);

/// rational * prod eta(Q) over eta_factors (a sorted multiset).
///
/// Exact equality compares both parts, so identities between measure
/// formulas are checked without floating-point slack.
struct MeasureValue {
    mpq_class rational = 0;
    std::vector<std::uint64_t> eta_factors;

    MeasureValue() = default;
    MeasureValue(mpq_class r, std::vector<std::uint64_t> etas);

    /// Zero carrying the given eta factors.
    static MeasureValue zero(std::vector<std::uint64_t> etas) { return MeasureValue(0, std::move(etas)); }

    /// Uses the memoized eta values.
    double value() const;
    double value(double tol) const;

    friend bool operator==(const MeasureValue& a, const MeasureValue& b)
    {
        return a.rational == b.rational && a.eta_factors == b.eta_factors;
    }
};

/// Throws std::invalid_argument when the eta multisets differ.
MeasureValue operator+(const MeasureValue& a, const MeasureValue& b);
MeasureValue operator*(const MeasureValue& a, const MeasureValue& b);
MeasureValue operator/(const MeasureValue& a, const mpz_class& d);

/// Gaussian binomial [n k]_Q; zero when k < 0 or k > n.
mpz_class qbinom(int n, int k, std::uint64_t q);

/// c_{R,j}: rational prod_i Q_i^{j_i(j_i+1)/2} / prod_{k<=j_i} (Q_i^k - 1),
/// eta factors {Q_i}.
MeasureValue c_constant(const RingSpec& ring, const std::vector<int>& j);
MeasureValue c_constant_local(std::uint64_t residue_size, int j);

/// mu_R(M) = c_{R,j(M)} / |Aut M|.
MeasureValue mu(const ModuleType& t);

/// mu_R of the set {M : dim_{F_l} M = m} for R = F_l[X]/(p^e) with residue
/// degree k and |F| = Q. Zero when k does not divide m.
MeasureValue rank_distribution(std::uint64_t residue_size, int residue_degree, int e, int m);
MeasureValue rank_distribution(const LocalRingSpec& ring, int m);

/// The same quantity evaluated as the double sum over j and partitions with
/// exactly j maximal parts, using the inverse Hillar-Rhea product directly.
MeasureValue rank_distribution_partition_form(std::uint64_t residue_size, int residue_degree, int e, int m);

/// Number of submodules of type mu inside a module of type lambda over a
/// chain ring with residue size Q (zero unless mu <= lambda).
mpz_class submodule_count(const Partition& lambda, const Partition& mu, std::uint64_t residue_size);

/// k-th moment of M -> l^{k rk M} under mu_R, which is the number of
/// submodules of R_0^k for R_0 a chain ring of length e with residue size Q.
mpz_class moment_rank(std::uint64_t residue_size, int e, int k);

/// One divisibility condition P^m || P_C.
struct DivisorCondition {
    Poly prime;
    int multiplicity = 0;
};

struct DensityPrediction {
    MeasureValue value;
    /// prod eta(F_i) > 1/2, the uniqueness hypothesis; recorded, not enforced.
    bool eta_product_gt_half = false;
};

/// prod_i sum_{M over F_l[X]/(P_i^{m_i+1}), dim M = m_i deg P_i} eta(F_i)/|Aut M|.
/// Throws on reducible or repeated primes.
DensityPrediction divisor_density(const std::vector<DivisorCondition>& conditions);

struct IndependencePrediction {
    MeasureValue joint;
    MeasureValue product_of_factors;
};

/// mu_R(M) and prod_i mu_{R_i}(M_i) for a module over a product ring.
IndependencePrediction independence_prediction(const ModuleType& t);

/// Prelimit of c_{R,j} at matrix size n:
/// N(n,j) |GL_{n-j}(F_Q)| / |M_{n x (n-j)}(F_Q)|, N(n,j) = [n j]_Q.
mpq_class finite_n_constant(std::uint64_t residue_size, int j, int n);

/// Whether prod eta(Q_i) > 1/2 for the given residue sizes.
bool eta_product_gt_half(const std::vector<std::uint64_t>& residue_sizes);

} // namespace cokernel_lab
