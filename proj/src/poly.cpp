// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cokernel_lab {

namespace {

Residue inverse_mod(Residue a, Residue l)
{
    if (a % l == 0)
        throw std::domain_error("inverse of zero in F_l");
    std::uint64_t r = 1, b = a % l;
    std::uint64_t e = l - 2;
    while (e > 0) {
        if (e & 1)
            r = r * b % l;
        b = b * b % l;
        e >>= 1;
    }
    return static_cast<Residue>(r);
}

Residue common_modulus(const Poly& a, const Poly& b)
{
    require_same_field(a, b);
    return a.modulus();
}

} // namespace

Poly::Poly(Residue l, std::vector<Residue> coeffs) : l_(l), coeffs_(std::move(coeffs))
{
    if (l == 0)
        throw std::invalid_argument("polynomial modulus must be positive");
    for (auto& c : coeffs_)
        c %= l;
    normalize();
}

Poly Poly::linear(Residue l, std::int64_t a)
{
    auto r = a % static_cast<std::int64_t>(l);
    if (r < 0)
        r += l;
    return Poly(l, {static_cast<Residue>((l - r) % l), 1});
}

void Poly::normalize()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Residue Poly::evaluate(Residue at) const
{
    std::uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = (acc * at + *it) % l_;
    return static_cast<Residue>(acc);
}

void require_same_field(const Poly& a, const Poly& b)
{
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("polynomials over different fields");
}

Poly operator+(const Poly& a, const Poly& b)
{
    const auto l = common_modulus(a, b);
    std::vector<Residue> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (a[i] + b[i]) % l;
    return Poly(l, std::move(c));
}

Poly operator-(const Poly& a)
{
    std::vector<Residue> c(a.coeffs());
    for (auto& x : c)
        x = x == 0 ? 0 : a.modulus() - x;
    return Poly(a.modulus(), std::move(c));
}

Poly operator-(const Poly& a, const Poly& b)
{
    const auto l = common_modulus(a, b);
    std::vector<Residue> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (a[i] + l - b[i]) % l;
    return Poly(l, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b)
{
    const auto l = common_modulus(a, b);
    if (a.is_zero() || b.is_zero())
        return Poly::zero(l);
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<std::uint64_t> acc(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            acc[i + j] = (acc[i + j] + std::uint64_t{x[i]} * y[j]) % l;
    }
    return Poly(l, std::vector<Residue>(acc.begin(), acc.end()));
}

Poly scale(const Poly& a, Residue c)
{
    std::vector<Residue> out(a.coeffs());
    for (auto& x : out)
        x = static_cast<Residue>(std::uint64_t{x} * c % a.modulus());
    return Poly(a.modulus(), std::move(out));
}

Poly pow(const Poly& a, unsigned e)
{
    Poly r = Poly::one(a.modulus());
    Poly b = a;
    while (e > 0) {
        if (e & 1)
            r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

DivMod divmod(const Poly& a, const Poly& b)
{
    const auto l = common_modulus(a, b);
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree())
        return {Poly::zero(l), a};

    std::vector<Residue> rem(a.coeffs());
    const auto& d = b.coeffs();
    const auto db = static_cast<std::size_t>(b.degree());
    const Residue lead_inv = inverse_mod(b.lead(), l);
    std::vector<Residue> quo(rem.size() - db, 0);
    for (std::size_t k = rem.size(); k-- > db;) {
        const Residue c = static_cast<Residue>(std::uint64_t{rem[k]} * lead_inv % l);
        if (c == 0)
            continue;
        quo[k - db] = c;
        for (std::size_t i = 0; i <= db; ++i) {
            auto& r = rem[k - db + i];
            r = static_cast<Residue>((r + l - std::uint64_t{c} * d[i] % l) % l);
        }
    }
    rem.resize(db);
    return {Poly(l, std::move(quo)), Poly(l, std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly monic(const Poly& a)
{
    if (a.is_zero() || a.is_monic())
        return a;
    return scale(a, inverse_mod(a.lead(), a.modulus()));
}

Poly gcd(const Poly& a, const Poly& b)
{
    require_same_field(a, b);
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b)
{
    const auto l = common_modulus(a, b);
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(l), s1 = Poly::zero(l);
    Poly t0 = Poly::zero(l), t1 = Poly::one(l);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, std::move(r));
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    const Residue c = inverse_mod(r0.lead(), l);
    return {scale(r0, c), scale(s0, c), scale(t0, c)};
}

Poly derivative(const Poly& a)
{
    const auto l = a.modulus();
    if (a.degree() < 1)
        return Poly::zero(l);
    std::vector<Residue> c(a.coeffs().size() - 1);
    for (std::size_t i = 1; i < a.coeffs().size(); ++i)
        c[i - 1] = static_cast<Residue>(std::uint64_t{a[i]} * (i % l) % l);
    return Poly(l, std::move(c));
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m)
{
    Poly r = Poly::one(m.modulus()) % m;
    Poly b = base % m;
    while (e > 0) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool is_irreducible(const Poly& p)
{
    if (p.degree() < 1)
        throw std::invalid_argument("irreducibility test needs a non-constant polynomial");
    const auto l = p.modulus();
    const Poly f = monic(p);
    const Poly x = Poly::x(l);
    Poly frob = x % f;
    for (int i = 1; 2 * i <= f.degree(); ++i) {
        frob = powmod(frob, l, f);
        if (gcd(frob - x, f).degree() > 0)
            return false;
    }
    return true;
}

int factor_multiplicity(const Poly& f, const Poly& p)
{
    require_same_field(f, p);
    if (f.is_zero())
        throw std::domain_error("multiplicity in the zero polynomial is unbounded");
    if (p.degree() < 1)
        throw std::invalid_argument("multiplicity of a constant is undefined");
    int m = 0;
    Poly g = f;
    while (g.degree() >= p.degree()) {
        auto [q, r] = divmod(g, p);
        if (!r.is_zero())
            break;
        g = std::move(q);
        ++m;
    }
    return m;
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, Residue l, std::optional<std::int64_t> a)
        : text_(text), l_(l), a_(a)
    {
    }

    Poly parse()
    {
        Poly acc = Poly::zero(l_);
        skip_ws();
        bool first = true;
        while (pos_ < text_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            Poly term = parse_term();
            acc = sign > 0 ? acc + term : acc - term;
            first = false;
            skip_ws();
        }
        if (first)
            fail("empty polynomial");
        return acc;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("cannot parse polynomial '" + std::string(text_) + "': " + what);
    }

    std::int64_t parse_int()
    {
        std::int64_t v = 0;
        bool any = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > (std::int64_t{1} << 40))
                fail("integer too large");
            ++pos_;
            any = true;
        }
        if (!any)
            fail("expected integer");
        return v;
    }

    std::int64_t parse_coefficient_atom()
    {
        if (peek() == 'a') {
            ++pos_;
            if (!a_)
                fail("'a' used without a value for a");
            return *a_;
        }
        return parse_int();
    }

    Poly parse_term()
    {
        skip_ws();
        std::int64_t coef = 1;
        bool have_coef = false;
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == 'a') {
            coef = parse_coefficient_atom();
            have_coef = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            }
        }
        unsigned degree = 0;
        if (peek() == 'X' || peek() == 'x') {
            ++pos_;
            degree = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                degree = static_cast<unsigned>(parse_int());
            }
        } else if (!have_coef) {
            fail("expected coefficient or X");
        }
        auto r = coef % static_cast<std::int64_t>(l_);
        if (r < 0)
            r += l_;
        std::vector<Residue> c(degree + 1, 0);
        c[degree] = static_cast<Residue>(r);
        return Poly(l_, std::move(c));
    }

    std::string_view text_;
    Residue l_;
    std::optional<std::int64_t> a_;
    std::size_t pos_ = 0;
};

} // namespace

Poly parse_poly(std::string_view text, Residue l, std::optional<std::int64_t> a)
{
    return PolyParser(text, l, a).parse();
}

std::string to_string(const Poly& p)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int d = p.degree(); d >= 0; --d) {
        const Residue c = p[static_cast<std::size_t>(d)];
        if (c == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (d == 0 || c != 1)
            os << c;
        if (d > 0)
            os << (c != 1 ? "*X" : "X");
        if (d > 1)
            os << '^' << d;
    }
    return os.str();
}

} // namespace cokernel_lab
