// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "cokernel_lab/galois_field.hpp"
#include "cokernel_lab/measure.hpp"
#include "cokernel_lab/rng.hpp"
#include "cokernel_lab/submodules.hpp"

namespace cokernel_lab {

/// Fields F_{q^i}, i = 1..g, with embeddings of F_q; built once and shared
/// read-only by every worker.
class CurveContext {
public:
    /// Throws std::invalid_argument for even q, g < 1 or q^g > 2^24.
    CurveContext(std::uint32_t q, int g);

    std::uint32_t q() const { return q_; }
    int genus() const { return g_; }
    const GaloisField& base() const { return fields_[0]; }
    const GaloisField& extension(int i) const { return fields_[static_cast<std::size_t>(i - 1)]; }
    /// Base-field element (log form) -> F_{q^i} element.
    GaloisField::Elem embed(int i, GaloisField::Elem a) const { return embeddings_[static_cast<std::size_t>(i - 1)][a]; }

private:
    std::uint32_t q_;
    int g_;
    std::vector<GaloisField> fields_;
    std::vector<std::vector<GaloisField::Elem>> embeddings_;
};

/// y^2 = f(x) with f monic squarefree of degree 2g+1 over F_q.
struct CurveSample {
    std::uint32_t q = 0;
    int g = 0;
    /// F_q coefficients in integer form (see GaloisField::from_int), low to high.
    std::vector<std::uint32_t> f;
    std::vector<mpz_class> char_poly; ///< P_C, low to high, degree 2g
};

/// gcd(f, f') = 1 over F_q.
bool is_squarefree(const CurveContext& ctx, const std::vector<std::uint32_t>& f);

/// Uniform monic squarefree f of degree 2g+1 by rejection. `proposals`, when
/// given, is incremented once per candidate drawn.
CurveSample sample_curve(const CurveContext& ctx, Xoshiro256& rng, std::uint64_t* proposals = nullptr);

/// N_i = 1 + sum_{x in F_{q^i}} (1 + chi(f(x))), i = 1..g.
std::vector<std::int64_t> point_counts(const CurveContext& ctx, const std::vector<std::uint32_t>& f);

/// P_C(X) = prod (X - alpha_i) from N_1..N_g via Newton's identities and the
/// functional equation. Throws std::logic_error on a non-integral step.
std::vector<mpz_class> char_poly_from_counts(const std::vector<std::int64_t>& counts, std::uint32_t q, int g);

/// c_i = q^{g-i} c_{2g-i} for i <= g, c_{2g} = 1 and c_0 = q^g.
bool functional_equation_holds(const std::vector<mpz_class>& char_poly, std::uint32_t q, int g);

/// max over roots z of | |z| - sqrt(q) |, computed on the squarefree part.
double weil_deviation(const std::vector<mpz_class>& char_poly, std::uint32_t q);

/// P_C reduced mod l.
Poly reduce_mod(const std::vector<mpz_class>& char_poly, Residue l);

/// One condition P^m || P_C mod l.
using CurveCondition = DivisorCondition;

struct CurveRunConfig {
    Residue l = 3;
    std::uint32_t q = 5;
    int g = 1;
    std::vector<CurveCondition> conditions;
    std::uint64_t trials = 0; ///< ignored when exhaustive
    std::uint64_t seed = 0;
    bool exhaustive = false;
    int workers = 1;
    std::uint64_t exhaustive_cap = 10'000'000;
};

/// Checks l odd prime, l does not divide q, l does not divide P_i(q), P_i
/// irreducible and pairwise coprime. Throws std::invalid_argument naming the
/// failed condition.
void validate_curve_config(const CurveRunConfig& cfg);

struct CurveRecord {
    CurveSample curve;
    std::vector<int> multiplicities; ///< one per condition
};

/// Sampled (or all) curves with their P_C and condition multiplicities.
std::vector<CurveRecord> curve_census(const CurveRunConfig& cfg, Execution ex = Execution::Parallel);

struct DensityReport {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double empirical = 0;
    double standard_error = 0;
    DensityPrediction predicted;
    /// Per condition: multiplicity -> number of curves.
    std::vector<std::map<int, std::uint64_t>> multiplicity_histograms;
};

DensityReport density_report(const std::vector<CurveRecord>& records, const CurveRunConfig& cfg);
DensityReport divisibility_stats(const CurveRunConfig& cfg, Execution ex = Execution::Parallel);

/// 2x2 table of (condition 1 holds, condition 2 holds).
struct IndependenceReport {
    std::array<std::array<std::uint64_t, 2>, 2> table{};
    std::uint64_t trials = 0;
    double p1 = 0;
    double p2 = 0;
    double p12 = 0;
    double gap = 0; ///< p12 - p1 p2
    double standard_error = 0; ///< sqrt(p1(1-p1)p2(1-p2)/N)
    double chi_square = 0;     ///< Pearson, 1 dof
};

IndependenceReport independence_from_labels(const std::vector<std::pair<bool, bool>>& labels);
IndependenceReport independence_report(const std::vector<CurveRecord>& records, const CurveRunConfig& cfg);
/// Requires exactly two conditions.
IndependenceReport independence_stats(const CurveRunConfig& cfg, Execution ex = Execution::Parallel);

} // namespace cokernel_lab
