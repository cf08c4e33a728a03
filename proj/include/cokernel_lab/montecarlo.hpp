// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "cokernel_lab/measure.hpp"
#include "cokernel_lab/rng.hpp"
#include "cokernel_lab/submodules.hpp"

namespace cokernel_lab {

enum class SampleMode { Exhaustive, Random };

struct SampleConfig {
    RingSpec ring;
    int n = 1;
    std::uint64_t trials = 0; ///< ignored in exhaustive mode
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::Random;
    int workers = 1;
    std::uint64_t exhaustive_cap = 10'000'000;
};

/// Observed cokernel types. Sum of counts equals total.
struct EmpiricalDist {
    std::map<TypeKey, std::uint64_t> counts;
    std::uint64_t total = 0;
};

/// Number of matrices an exhaustive run visits; nullopt when it exceeds 2^64.
std::optional<std::uint64_t> exhaustive_size(const RingSpec& ring, int n);

/// Uniform element of the ring.
RingElem random_element(const RingSpec& ring, Xoshiro256& rng);

/// Cokernel types of n x n matrices with i.i.d. uniform entries (random mode)
/// or of every matrix once (exhaustive mode). Throws std::length_error when
/// an exhaustive run exceeds the cap.
EmpiricalDist sample_cokernels(const SampleConfig& cfg, Execution ex = Execution::Parallel);

struct MomentEstimate {
    double value = 0;
    std::optional<mpq_class> exact; ///< exhaustive mode only
};

/// Mean of #Surj(coker, A) over the sampled or enumerated matrices.
MomentEstimate empirical_moment(const SampleConfig& cfg, const ModuleType& a, Execution ex = Execution::Parallel);
MomentEstimate empirical_moment(const EmpiricalDist& emp, const RingSpec& ring, const ModuleType& a,
                                bool exact);

/// |Surj(R^n, A)| / |A|^n.
mpq_class moment_closed_form(const RingSpec& ring, int n, const ModuleType& a);

/// One row of a truncated comparison.
struct TvRow {
    TypeKey type;
    double empirical = 0;
    double theory = 0;
};

struct TvReport {
    double tv = 0;
    /// 1 - theory mass inside the truncation.
    double deficit = 0;
    std::vector<TvRow> rows;
};

/// Types with mu_R mass >= min_mass, found by increasing F_l-dimension
/// until the rank mass left is below min_mass.
std::vector<std::pair<TypeKey, double>> theory_truncation(const RingSpec& ring, double min_mass = 1e-7,
                                                          int max_dim = 60);

/// 1/2 sum |emp - mu| over the truncation plus every observed type.
TvReport tv_distance(const EmpiricalDist& emp, const RingSpec& ring, double min_mass = 1e-7);

/// TV between two explicit distributions on the union of their supports.
double tv_distance(const std::map<TypeKey, double>& a, const std::map<TypeKey, double>& b);

/// Draws from the truncated measure, renormalized over the truncation.
EmpiricalDist sample_from_theory(const RingSpec& ring, std::uint64_t trials, std::uint64_t seed,
                                 double min_mass = 1e-7);

/// TV between the joint empirical distribution and the product of its
/// per-factor marginals.
double factorization_gap(const EmpiricalDist& emp);

struct PrelimitRow {
    int n = 0;
    mpq_class prelimit;
    double value = 0;
    double closed_form = 0;
};

/// Prelimit constants for n in [n_min, n_max] next to c_{R,j}.
std::vector<PrelimitRow> finite_n_constant_demo(std::uint64_t residue_size, int j, int n_min, int n_max);

} // namespace cokernel_lab
