// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "cokernel_lab/partition.hpp"
#include "cokernel_lab/ring.hpp"

/// Brute-force counterparts of the closed forms, for cross-checking only.
/// Modules are element tables of tuples of residues mod p^{lambda_i}.
namespace cokernel_lab::oracle {

/// Automorphisms of ⊕ R/(p^{lambda_i}), counted over all generator images.
std::uint64_t aut_order(const LocalRingSpec& ring, const Partition& lambda);

/// R-linear maps M -> A, counted over all generator images.
std::uint64_t hom_count(const LocalRingSpec& ring, const Partition& m, const Partition& a);

/// Surjective R-linear maps M -> A.
std::uint64_t surj_count(const LocalRingSpec& ring, const Partition& m, const Partition& a);

/// 1 + sum_{x in F_q} (1 + chi(f(x))) for prime q, computed from a table of
/// squares with plain integer arithmetic.
std::int64_t naive_point_count_prime(std::uint32_t q, const std::vector<std::uint32_t>& f);

/// Projective points of y^2 = f(x) over F_{q^n} for prime q, by a double loop
/// over (x, y) in a field built from its own irreducible modulus; n <= 3.
std::int64_t naive_point_count(std::uint32_t q, int n, const std::vector<std::uint32_t>& f);

} // namespace cokernel_lab::oracle
