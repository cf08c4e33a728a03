// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "cokernel_lab/partition.hpp"
#include "cokernel_lab/ring.hpp"

namespace cokernel_lab {

/// One partition per local factor, in RingSpec order. Used as a map key.
using TypeKey = std::vector<Partition>;

/// Isomorphism class of a finite module over a RingSpec.
struct ModuleType {
    RingSpec ring;
    TypeKey local_types;

    /// Validates part bounds against each factor exponent.
    ModuleType(RingSpec r, TypeKey types);
    static ModuleType trivial(const RingSpec& r);

    /// sum_i deg(p_i) * |lambda_i|
    int fl_dimension() const;
    /// |M| = l^fl_dimension
    mpz_class cardinality() const;

    friend bool operator==(const ModuleType& a, const ModuleType& b)
    {
        return a.ring == b.ring && a.local_types == b.local_types;
    }
};

std::string to_string(const TypeKey& key);

/// Dense n x m matrix over a quotient ring, row-major.
struct RingMatrix {
    RingSpec ring;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<RingElem> entries;

    RingMatrix(RingSpec r, std::size_t n_rows, std::size_t n_cols);
    static RingMatrix identity(const RingSpec& r, std::size_t n);

    RingElem& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const RingElem& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

RingMatrix multiply(const RingMatrix& a, const RingMatrix& b);

/// Dense matrix over F_l[X], row-major.
struct PolyMatrix {
    Residue l = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Poly> entries;

    PolyMatrix(Residue field, std::size_t n_rows, std::size_t n_cols);

    Poly& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const Poly& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

/// Invariant factors d_1 | d_2 | ... | d_k, k = min(rows, cols). Nonzero
/// factors are monic; zero factors (rank deficiency) come last.
std::vector<Poly> snf_invariant_factors(PolyMatrix m);

/// Isomorphism class of coker(a) for square `a`. Each local factor is read
/// from the SNF of the lifted block [A | p^e I] over F_l[X].
ModuleType coker_type(const RingMatrix& a);

/// Number of parts equal to e, i.e. dim M/pM - dim Tor_1(M, F) for a chain
/// ring of length e. Throws when a part exceeds e.
int d_invariant(const Partition& lambda, int e);

/// |Aut_R(M)|, product over factors of the Hillar-Rhea order with
/// residue size Q.
mpz_class aut_order(const ModuleType& t);
mpz_class aut_order_local(const Partition& lambda, std::uint64_t residue_size);

/// |Hom_R(M, A)| = prod over factors of Q^{sum_ij min(lambda_i, mu_j)}.
mpz_class hom_count(const ModuleType& m, const ModuleType& a);
mpz_class hom_count_local(const Partition& m, const Partition& a, std::uint64_t residue_size);

/// Every type of F_l-dimension `dim_fl`; empty when the dimension cannot be
/// split as sum_i deg(p_i) * |lambda_i|.
std::vector<ModuleType> enumerate_module_types(const RingSpec& ring, int dim_fl);

} // namespace cokernel_lab
