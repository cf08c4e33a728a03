// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cokernel_lab/field.hpp"

namespace cokernel_lab {

/// Dense polynomial over F_l, coefficients low-to-high.
///
/// Always normalized: no trailing zero coefficients, every coefficient in
/// [0, l). The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
public:
    Poly() = default;
    Poly(Residue l, std::vector<Residue> coeffs);

    static Poly zero(Residue l) { return Poly(l, {}); }
    static Poly constant(Residue l, Residue c) { return Poly(l, {c}); }
    static Poly one(Residue l) { return constant(l, 1); }
    static Poly x(Residue l) { return Poly(l, {0, 1}); }
    /// X - a
    static Poly linear(Residue l, std::int64_t a);

    Residue modulus() const { return l_; }
    const std::vector<Residue>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    Residue lead() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
    Residue operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

    Residue evaluate(Residue at) const;

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void normalize();

    Residue l_ = 0;
    std::vector<Residue> coeffs_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, Residue c);
Poly pow(const Poly& a, unsigned e);

struct DivMod {
    Poly quotient;
    Poly remainder;
};

/// Euclidean division; throws std::domain_error when b is zero.
DivMod divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

/// Scales to leading coefficient 1; zero stays zero.
Poly monic(const Poly& a);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

struct ExtendedGcd {
    Poly g; ///< monic gcd
    Poly s; ///< s*a + t*b = g
    Poly t;
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);

Poly derivative(const Poly& a);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

/// Rabin-style test: p is irreducible iff gcd(X^{l^i} - X, p) = 1 for all
/// i <= deg/2. Throws on constant input.
bool is_irreducible(const Poly& p);

/// Largest m with p^m | f. Throws when f is zero or p is constant.
int factor_multiplicity(const Poly& f, const Poly& p);

/// Same l required; throws std::invalid_argument otherwise.
void require_same_field(const Poly& a, const Poly& b);

/// Human form: "X^2+2", "2*X^3 - X + 1", "X-a" (needs `a`). Coefficients are
/// reduced mod l.
Poly parse_poly(std::string_view text, Residue l, std::optional<std::int64_t> a = std::nullopt);

/// Human-readable, highest degree first, e.g. "X^2 + 2".
std::string to_string(const Poly& p);

} // namespace cokernel_lab
