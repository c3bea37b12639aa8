#pragma once

// Irreducibility testing and factorization over F_q: Rabin's criterion,
// distinct-degree splitting, and deterministic Cantor-Zassenhaus.  The
// equal-degree step draws candidates from a counter-based seeded stream, so
// factorizations reproduce exactly across runs.

#include <map>
#include <optional>

#include "ffclass/poly.hpp"

namespace ffclass {

inline constexpr uint64_t kFactorSeedDefault = 1;

// f | T^{q^n} - T together with gcd conditions at maximal prime subdegrees.
inline bool is_irreducible(const Poly &f)
{
    require(f.deg() >= 1, "irreducibility of a constant");
    const Field &F = f.f;
    uint32_t n = static_cast<uint32_t>(f.deg());
    Poly T = poly_T(F);

    // T^{q^j} mod f by iterated q-th powering
    auto frob_iter = [&](uint32_t steps) {
        Poly h = poly_mod(T, f);
        for (uint32_t i = 0; i < steps; ++i)
            h = poly_pow_mod(h, F.q(), f);
        return h;
    };

    Poly full = frob_iter(n);
    if (!poly_sub(full, poly_mod(T, f)).is_zero())
        return false;
    for (uint32_t ell : detail::prime_factors_u64(n)) {
        Poly h = frob_iter(n / ell);
        Poly g = poly_sub(h, poly_mod(T, f));
        if (g.is_zero())
            return false;
        if (poly_gcd(g, f).deg() != 0)
            return false;
    }
    return true;
}

namespace detail {

// deterministic random polynomial of degree < d over F
inline Poly random_poly_below(const Field &F, int d, SplitMix64 &rng)
{
    std::vector<uint32_t> c(d);
    for (int i = 0; i < d; ++i)
        c[i] = static_cast<uint32_t>(rng.below(F.q()));
    return Poly(F, std::move(c));
}

// equal-degree splitting of a monic squarefree product of degree-d primes
inline void equal_degree_split(const Poly &f, uint32_t d,
                               std::vector<Poly> &out, SplitMix64 &rng)
{
    if (f.deg() == static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    const Field &F = f.f;
    unsigned __int128 e = 1;
    for (uint32_t i = 0; i < d; ++i)
        e *= F.q();
    e = (e - 1) / 2;
    Poly g(F);
    for (;;) {
        Poly r = random_poly_below(F, f.deg(), rng);
        if (r.deg() < 1)
            continue;
        g = poly_gcd(r, f);
        if (g.deg() > 0 && g.deg() < f.deg())
            break; // lucky split
        Poly h = poly_pow_mod(r, e, f);
        h = poly_sub(h, poly_const(F, 1));
        if (h.is_zero())
            continue;
        g = poly_gcd(h, f);
        if (g.deg() > 0 && g.deg() < f.deg())
            break;
    }
    equal_degree_split(g, d, out, rng);
    equal_degree_split(poly_div_exact(f, g), d, out, rng);
}

// coefficient-wise p-th root: c -> c^{q/p}, inverting Frobenius
inline Poly pth_root(const Poly &f)
{
    const Field &F = f.f;
    uint32_t p = F.p();
    check(f.deg() % p == 0 || f.deg() <= 0, "pth_root: bad degree");
    std::vector<uint32_t> c(f.deg() / static_cast<int>(p) + 1, 0);
    uint64_t e = F.q() / p; // x^{q/p} is the inverse of x -> x^p
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = F.pow(f.coeff(i * p), e);
    return Poly(F, std::move(c));
}

inline void factor_squarefree_monic(const Poly &f, uint32_t mult,
                                    std::vector<std::pair<Poly, uint32_t>> &out,
                                    SplitMix64 &rng)
{
    // distinct-degree phase on a monic squarefree f
    const Field &F = f.f;
    Poly rem = f;
    Poly T = poly_T(F);
    Poly h = poly_mod(T, f);
    uint32_t d = 0;
    while (rem.deg() > 0 && rem.deg() > 2 * static_cast<int>(d)) {
        ++d;
        h = poly_pow_mod(h, F.q(), f); // h = T^{q^d} mod f
        Poly g = poly_gcd(poly_sub(h, poly_mod(T, f)), rem);
        if (g.deg() > 0) {
            std::vector<Poly> pieces;
            equal_degree_split(g, d, pieces, rng);
            for (auto &piece : pieces)
                out.emplace_back(piece, mult);
            rem = poly_div_exact(rem, g);
        }
    }
    if (rem.deg() > 0)
        out.emplace_back(rem, mult);
}

// squarefree decomposition in characteristic p; emits (squarefree part,
// multiplicity) pairs
inline void squarefree_decompose(const Poly &g, uint32_t m,
                                 std::vector<std::pair<Poly, uint32_t>> &parts)
{
    if (g.deg() < 1)
        return;
    const Field &F = g.f;
    Poly gp = poly_derivative(g);
    if (gp.is_zero()) {
        squarefree_decompose(pth_root(g), m * F.p(), parts);
        return;
    }
    Poly c = poly_gcd(g, gp);
    Poly w = poly_div_exact(g, c);
    uint32_t i = 1;
    while (w.deg() > 0) {
        Poly y = poly_gcd(w, c);
        Poly z = poly_div_exact(w, y);
        if (z.deg() > 0)
            parts.emplace_back(z, i * m);
        c = poly_div_exact(c, y);
        w = std::move(y);
        ++i;
    }
    if (c.deg() > 0)
        squarefree_decompose(c, m, parts); // pure p-power multiplicities
}

} // namespace detail

// Full factorization into monic irreducibles with multiplicities, in
// canonical order (degree, then lexicographic).  The leading unit is the
// caller's to track.
inline std::vector<std::pair<Poly, uint32_t>>
factor(const Poly &f, uint64_t seed = kFactorSeedDefault)
{
    require(f.deg() >= 1, "factorization of a constant");
    const Field &F = f.f;
    SplitMix64 rng(seed ^ 0x5eedf0ddULL);

    std::vector<std::pair<Poly, uint32_t>> out;
    Poly work = poly_monic(f);

    std::vector<std::pair<Poly, uint32_t>> squarefree_parts;
    detail::squarefree_decompose(work, 1, squarefree_parts);

    for (auto &[sf, m] : squarefree_parts)
        detail::factor_squarefree_monic(sf, m, out, rng);

    // merge duplicates, then canonical order
    std::map<std::vector<uint32_t>, std::pair<Poly, uint32_t>> merged;
    for (auto &[pf, m] : out) {
        auto it = merged.find(pf.c);
        if (it == merged.end())
            merged.emplace(pf.c, std::make_pair(pf, m));
        else
            it->second.second += m;
    }
    std::vector<std::pair<Poly, uint32_t>> result;
    result.reserve(merged.size());
    for (auto &kv : merged)
        result.push_back(kv.second);
    std::sort(result.begin(), result.end(),
              [](const auto &a, const auto &b) {
                  return poly_canonical_less(a.first, b.first);
              });

    // sanity: product reproduces the monic input
    Poly prod = poly_const(F, 1);
    for (auto &[pf, m] : result)
        for (uint32_t i = 0; i < m; ++i)
            prod = poly_mul(prod, pf);
    check(prod == poly_monic(f), "factor: product check failed");
    return result;
}

// All roots of f (over F_q) in F_{q^2}, via factoring the embedded image.
inline std::vector<uint32_t> roots_in_ext(const Poly &f, const QuadExt &qe)
{
    require(f.deg() >= 1, "roots of a constant");
    Poly fe = poly_embed(f, qe.embedding());
    std::vector<uint32_t> roots;
    for (auto &[g, m] : factor(fe)) {
        (void)m;
        if (g.deg() == 1)
            roots.push_back(qe.ext().neg(g.c[0])); // monic T - r
    }
    std::sort(roots.begin(), roots.end(), [&](uint32_t a, uint32_t b) {
        return qe.ext().coord_less(a, b);
    });
    return roots;
}

// Optional linear side condition u*b0 + v*b1 = w on the binomial's
// coefficients.
struct LinearConstraint {
    uint32_t u = 0, v = 0, w = 0;
};

// Least (b0, b1), lexicographic in coordinate order, with
// B = b0 T^{l-2} + b1 irreducible over F_q, both coefficients nonzero, and
// the optional constraint satisfied.
inline Poly find_binomial_irreducible(const Field &F, uint32_t l,
                                      std::optional<LinearConstraint> cons =
                                          std::nullopt)
{
    require(l >= 4 && l % 2 == 0, "l must be even and >= 4");
    require(F.q() + 1 > l - 2,
            "size condition violated: q+1 <= l-2, no guarantee of candidates");
    std::vector<uint32_t> order;
    for (uint32_t x = 1; x < F.q(); ++x)
        order.push_back(x);
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return F.coord_less(a, b); });
    for (uint32_t b0 : order) {
        for (uint32_t b1 : order) {
            if (cons) {
                uint32_t lhs = F.add(F.mul(cons->u, b0), F.mul(cons->v, b1));
                if (lhs != cons->w)
                    continue;
            }
            std::vector<uint32_t> c(l - 1, 0);
            c[0] = b1;
            c[l - 2] = b0;
            Poly B(F, std::move(c));
            if (is_irreducible(B))
                return B;
        }
    }
    throw search_exhausted("no irreducible binomial b0*T^" +
                           std::to_string(l - 2) + "+b1 over F_" +
                           std::to_string(F.q()));
}

// Square root of a mod an irreducible pi by Tonelli-Shanks in A/(pi).
// Returns the canonically smaller of the two roots, or nullopt for a
// non-residue.  a == 0 mod pi yields the zero root.
inline std::optional<Poly> sqrt_mod_irreducible(const Poly &a, const Poly &pi)
{
    const Field &F = a.f;
    check_same_field(a, pi);
    Poly r = poly_mod(a, pi);
    if (r.is_zero())
        return poly_zero(F);

    unsigned __int128 Q = 1;
    for (int i = 0; i < pi.deg(); ++i)
        Q *= F.q();
    unsigned __int128 half = (Q - 1) / 2;

    Poly chi = poly_pow_mod(r, half, pi);
    if (!chi.is_one())
        return std::nullopt;

    // write Q-1 = 2^s * t with t odd
    unsigned __int128 t = Q - 1;
    uint32_t s = 0;
    while (t % 2 == 0) {
        t /= 2;
        ++s;
    }

    // non-residue z mod pi: scan polynomials in canonical order
    Poly z(F);
    for (uint64_t code = 1;; ++code) {
        // decode code into a polynomial with digits base q
        std::vector<uint32_t> cc;
        uint64_t rem = code;
        while (rem) {
            cc.push_back(static_cast<uint32_t>(rem % F.q()));
            rem /= F.q();
        }
        Poly cand(F, std::move(cc));
        if (cand.deg() >= pi.deg())
            throw internal_error("no quadratic non-residue found mod pi");
        Poly e = poly_pow_mod(cand, half, pi);
        if (!e.is_zero() && !e.is_one()) {
            z = cand;
            break;
        }
    }

    Poly m_c = poly_pow_mod(z, t, pi);            // c
    Poly x = poly_pow_mod(r, (t + 1) / 2, pi);    // candidate root
    Poly b = poly_pow_mod(r, t, pi);
    uint32_t m = s;
    while (!b.is_one()) {
        // least i with b^{2^i} = 1
        uint32_t i = 0;
        Poly bb = b;
        while (!bb.is_one()) {
            bb = poly_mod(poly_mul(bb, bb), pi);
            ++i;
        }
        Poly e = m_c;
        for (uint32_t j = 0; j + i + 1 < m; ++j)
            e = poly_mod(poly_mul(e, e), pi);
        x = poly_mod(poly_mul(x, e), pi);
        m_c = poly_mod(poly_mul(e, e), pi);
        b = poly_mod(poly_mul(b, m_c), pi);
        m = i;
    }
    check(poly_sub(poly_mod(poly_mul(x, x), pi), r).is_zero(),
          "sqrt_mod_irreducible: verification failed");
    Poly nx = poly_mod(poly_neg(x), pi);
    return poly_canonical_less(x, nx) ? x : nx;
}

// Enumerate monic polynomials of exact degree d in canonical order
// (coefficients low-degree-most-significant), invoking fn on each; fn
// returns false to stop.  Returns true if the enumeration was exhausted.
template <typename Fn>
inline bool for_each_monic(const Field &F, uint32_t d, Fn &&fn)
{
    std::vector<uint32_t> order;
    for (uint32_t x = 0; x < F.q(); ++x)
        order.push_back(x);
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return F.coord_less(a, b); });

    std::vector<uint32_t> idx(d, 0); // idx[j] indexes order[], c_0 slowest
    for (;;) {
        std::vector<uint32_t> c(d + 1, 0);
        c[d] = 1;
        for (uint32_t j = 0; j < d; ++j)
            c[j] = order[idx[j]];
        if (!fn(Poly(F, std::move(c))))
            return false;
        // odometer, last coordinate fastest
        size_t j = d;
        while (j > 0) {
            --j;
            if (++idx[j] < F.q())
                break;
            idx[j] = 0;
            if (j == 0)
                return true;
        }
        if (d == 0)
            return true;
    }
}

template <typename Fn>
inline bool for_each_monic_irreducible(const Field &F, uint32_t d, Fn &&fn)
{
    return for_each_monic(F, d, [&](const Poly &f) {
        if (!is_irreducible(f))
            return true;
        return fn(f);
    });
}

} // namespace ffclass
