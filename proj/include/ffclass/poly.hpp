#pragma once

// Dense univariate polynomials over a Field: the ring A = F_q[T] and its
// extensions.  Coefficients are stored low-to-high with no trailing zeros;
// the zero polynomial is the empty vector with degree sentinel -1.

#include <string>
#include <vector>

#include "ffclass/field.hpp"

namespace ffclass {

struct Poly {
    Field f;
    std::vector<uint32_t> c; // low-to-high, no trailing zeros

    Poly() = default;
    explicit Poly(const Field &fld) : f(fld) {}
    Poly(const Field &fld, std::vector<uint32_t> coeffs)
        : f(fld), c(std::move(coeffs))
    {
        trim();
    }

    void trim()
    {
        while (!c.empty() && c.back() == 0)
            c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    uint32_t lc() const
    {
        check(!c.empty(), "leading coefficient of zero polynomial");
        return c.back();
    }
    uint32_t coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    bool is_constant() const { return c.size() <= 1; }

    bool operator==(const Poly &o) const { return c == o.c; }
    bool operator!=(const Poly &o) const { return c != o.c; }
};

inline Poly poly_zero(const Field &f) { return Poly(f); }

inline Poly poly_const(const Field &f, uint32_t v)
{
    return Poly(f, {v});
}

inline Poly poly_T(const Field &f) { return Poly(f, {0, 1}); }

inline Poly poly_from(const Field &f, std::initializer_list<uint32_t> cs)
{
    return Poly(f, std::vector<uint32_t>(cs));
}

inline void check_same_field(const Poly &a, const Poly &b)
{
    check(a.f.compatible(b.f), "polynomials over different fields");
}

inline Poly poly_add(const Poly &a, const Poly &b)
{
    check_same_field(a, b);
    Poly r(a.f);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = a.f.add(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

inline Poly poly_neg(const Poly &a)
{
    Poly r(a.f);
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i)
        r.c[i] = a.f.neg(a.c[i]);
    return r;
}

inline Poly poly_sub(const Poly &a, const Poly &b)
{
    return poly_add(a, poly_neg(b));
}

inline Poly poly_scale(const Poly &a, uint32_t s)
{
    Poly r(a.f);
    if (s == 0)
        return r;
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i)
        r.c[i] = a.f.mul(a.c[i], s);
    return r;
}

inline Poly poly_mul(const Poly &a, const Poly &b)
{
    check_same_field(a, b);
    if (a.is_zero() || b.is_zero())
        return Poly(a.f);
    Poly r(a.f);
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0)
            continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = a.f.add(r.c[i + j], a.f.mul(a.c[i], b.c[j]));
    }
    return r;
}

// quotient and remainder, deg r < deg g
inline std::pair<Poly, Poly> poly_divmod(const Poly &a, const Poly &g)
{
    check_same_field(a, g);
    require(!g.is_zero(), "division by zero polynomial");
    Poly q(a.f), r = a;
    if (a.deg() < g.deg())
        return {q, r};
    q.c.assign(a.deg() - g.deg() + 1, 0);
    uint32_t inv_lc = a.f.inv(g.lc());
    for (int i = a.deg(); i >= g.deg(); --i) {
        if (static_cast<size_t>(i) >= r.c.size() || r.c[i] == 0)
            continue;
        uint32_t coef = a.f.mul(r.c[i], inv_lc);
        q.c[i - g.deg()] = coef;
        for (int j = 0; j <= g.deg(); ++j) {
            size_t idx = i - g.deg() + j;
            r.c[idx] = a.f.sub(r.c[idx], a.f.mul(coef, g.c[j]));
        }
    }
    q.trim();
    r.trim();
    return {q, r};
}

inline Poly poly_mod(const Poly &a, const Poly &g)
{
    return poly_divmod(a, g).second;
}

inline Poly poly_div_exact(const Poly &a, const Poly &g)
{
    auto [q, r] = poly_divmod(a, g);
    check(r.is_zero(), "inexact polynomial division");
    return q;
}

inline Poly poly_monic(const Poly &a)
{
    if (a.is_zero() || a.lc() == 1)
        return a;
    return poly_scale(a, a.f.inv(a.lc()));
}

// monic gcd
inline Poly poly_gcd(Poly a, Poly b)
{
    check_same_field(a, b);
    require(!(a.is_zero() && b.is_zero()), "gcd of zero polynomials");
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

// extended gcd: returns (g, s, t) with g = s*a + t*b, g monic
inline std::tuple<Poly, Poly, Poly> poly_xgcd(const Poly &a, const Poly &b)
{
    check_same_field(a, b);
    Poly r0 = a, r1 = b;
    Poly s0 = poly_const(a.f, 1), s1 = poly_zero(a.f);
    Poly t0 = poly_zero(a.f), t1 = poly_const(a.f, 1);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        Poly t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    require(!r0.is_zero(), "xgcd of zero polynomials");
    uint32_t u = a.f.inv(r0.lc());
    return {poly_scale(r0, u), poly_scale(s0, u), poly_scale(t0, u)};
}

inline uint32_t poly_eval(const Poly &a, uint32_t x)
{
    uint32_t acc = 0;
    for (size_t i = a.c.size(); i-- > 0;)
        acc = a.f.add(a.f.mul(acc, x), a.c[i]);
    return acc;
}

inline Poly poly_derivative(const Poly &a)
{
    Poly r(a.f);
    if (a.deg() < 1)
        return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) {
        uint32_t m = static_cast<uint32_t>(i % a.f.p());
        r.c[i - 1] = a.f.mul(a.c[i], m);
    }
    r.trim();
    return r;
}

inline Poly poly_pow_mod(Poly base, unsigned __int128 e, const Poly &mod)
{
    require(!mod.is_zero() && mod.deg() >= 1, "pow_mod modulus must be non-constant");
    Poly r = poly_const(base.f, 1);
    base = poly_mod(base, mod);
    while (e) {
        if (e & 1)
            r = poly_mod(poly_mul(r, base), mod);
        base = poly_mod(poly_mul(base, base), mod);
        e >>= 1;
    }
    return r;
}

// Canonical polynomial order: by degree, then coefficients compared
// low-degree-first in coordinate order.  Used wherever a deterministic
// least element is required.
inline bool poly_canonical_less(const Poly &a, const Poly &b)
{
    if (a.deg() != b.deg())
        return a.deg() < b.deg();
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] != b.c[i])
            return a.f.coord_less(a.c[i], b.c[i]);
    }
    return false;
}

// Map coefficients through a field embedding.
inline Poly poly_embed(const Poly &a, const Embedding &emb)
{
    check(a.f.compatible(emb.src()), "poly_embed: field mismatch");
    Poly r(emb.dst());
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i)
        r.c[i] = emb(a.c[i]);
    return r;
}

// Coefficient-wise conjugation of a polynomial over F_{q^2}.
inline Poly poly_conj(const Poly &a, const QuadExt &qe)
{
    Poly r(a.f);
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i)
        r.c[i] = qe.conj(a.c[i]);
    return r;
}

// Text form: coefficients low-to-high as integer codes, "2+0T+1T^2".
inline std::string poly_to_string(const Poly &a)
{
    if (a.is_zero())
        return "0";
    std::string s;
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (i)
            s += "+";
        s += std::to_string(a.c[i]);
        if (i == 1)
            s += "T";
        else if (i >= 2)
            s += "T^" + std::to_string(i);
    }
    return s;
}

inline Poly poly_parse(const Field &f, const std::string &text)
{
    std::vector<uint32_t> coeffs;
    size_t pos = 0;
    auto fail = [&]() { throw std::invalid_argument("bad polynomial: " + text); };
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ')
            ++pos;
        size_t start = pos;
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (start == pos)
            fail();
        uint64_t v = std::stoull(text.substr(start, pos - start));
        if (v >= f.q())
            fail();
        size_t degree = coeffs.size();
        if (pos < text.size() && text[pos] == 'T') {
            ++pos;
            size_t d = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                size_t s2 = pos;
                while (pos < text.size() &&
                       isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                if (s2 == pos)
                    fail();
                d = std::stoull(text.substr(s2, pos - s2));
            }
            if (d != degree)
                fail();
        } else if (degree != 0) {
            fail();
        }
        coeffs.push_back(static_cast<uint32_t>(v));
        while (pos < text.size() && text[pos] == ' ')
            ++pos;
        if (pos < text.size()) {
            if (text[pos] != '+')
                fail();
            ++pos;
        }
    }
    if (coeffs.empty())
        fail();
    return Poly(f, coeffs);
}

} // namespace ffclass
