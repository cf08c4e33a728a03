// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cokernel_lab/module_type.hpp"

namespace cokernel_lab {

/// Upper bound on |A| for explicit lattice enumeration. Default 3^10;
/// COKERNEL_LAB_CAP overrides.
std::uint64_t enumeration_cap();

/// Serial runs the reference loops; Parallel runs the OpenMP kernels.
enum class Execution { Serial, Parallel };

/// F_l-linear realization of a local module ⊕ F_l[X]/(p^{lambda_i}).
///
/// Vectors are rows; X acts on the right by `x_action` and p(X) by
/// `p_action`. The block for part lambda_i uses the monomial basis
/// 1, X, ..., X^{k lambda_i - 1}.
struct ExplicitModule {
    Residue l = 0;
    int dim = 0;
    int residue_degree = 0;
    Partition type;
    std::vector<Residue> x_action; ///< dim x dim, row-major
    std::vector<Residue> p_action; ///< dim x dim, row-major
    std::vector<int> generator_index; ///< first basis index of each block
};

ExplicitModule realize(const LocalRingSpec& ring, const Partition& type);

/// Largest dimension the subspace kernels accept.
inline constexpr int kMaxSubspaceDim = 24;

/// Number of X-stable F_l-subspaces (= R-submodules), by exhaustive RREF
/// enumeration of all subspaces.
std::uint64_t count_submodules_explicit(const ExplicitModule& m, Execution ex = Execution::Parallel);

/// Submodules grouped by isomorphism type.
using SubmoduleCensus = std::map<Partition, std::uint64_t>;
SubmoduleCensus submodule_census(const ExplicitModule& m, Execution ex = Execution::Parallel);

/// Submodules of `a`, grouped by type, with multiplicities. Throws
/// std::length_error when |a| exceeds `cap`.
std::vector<std::pair<ModuleType, std::uint64_t>> enumerate_submodules(const ModuleType& a,
                                                                       std::uint64_t cap = enumeration_cap());

/// Total number of submodules (product over local factors).
mpz_class count_submodules(const ModuleType& a, std::uint64_t cap = enumeration_cap());

/// |Surj_R(M, A)| via #Surj(M,A) = #Hom(M,A) - sum_{B < A} #Surj(M,B) over
/// the submodule lattice of A.
mpz_class surj_count(const ModuleType& m, const ModuleType& a, std::uint64_t cap = enumeration_cap());

/// Type of the F_l-subspace spanned by `rows` (each of length m.dim), assumed
/// X-stable.
Partition subspace_type(const ExplicitModule& m, const std::vector<std::vector<Residue>>& rows);

} // namespace cokernel_lab
