#pragma once

// Pic(O) with full abelian structure.  The group is generated by classes of
// prime ideals of increasing degree and closed under multiplication until
// the subgroup order reaches the zeta-side target; elementary divisors and
// generators then come from the Smith normal form of the relation matrix
// accumulated during the closure.  Two independent methods must meet: the
// enumeration saturating below the target is an error, never silence.

#include <map>

#include "ffclass/zeta.hpp"

namespace ffclass {

namespace detail {

// Smith normal form of a square integer matrix M (relations as columns).
// Returns the diagonal and fills winv with A^{-1} for the accumulated row
// transform A (A M B = D); column j of winv expresses the j-th cyclic
// generator in terms of the original ones.
inline std::vector<int64_t> smith_normal_form(std::vector<std::vector<int64_t>> M,
                                              std::vector<std::vector<int64_t>> &winv)
{
    size_t t = M.size();
    winv.assign(t, std::vector<int64_t>(t, 0));
    for (size_t i = 0; i < t; ++i)
        winv[i][i] = 1;

    auto row_swap = [&](size_t i, size_t j) {
        std::swap(M[i], M[j]);
        for (size_t r = 0; r < t; ++r)
            std::swap(winv[r][i], winv[r][j]); // W <- W * P_ij
    };
    auto row_addmul = [&](size_t i, size_t j, int64_t c) {
        // row_i += c * row_j  =>  W column_j -= c * W column_i
        for (size_t col = 0; col < t; ++col)
            M[i][col] = checked_add(M[i][col], checked_mul(c, M[j][col]));
        for (size_t r = 0; r < t; ++r)
            winv[r][j] = checked_add(winv[r][j], -checked_mul(c, winv[r][i]));
    };
    auto row_negate = [&](size_t i) {
        for (size_t col = 0; col < t; ++col)
            M[i][col] = -M[i][col];
        for (size_t r = 0; r < t; ++r)
            winv[r][i] = -winv[r][i];
    };
    auto col_swap = [&](size_t i, size_t j) {
        for (size_t r = 0; r < t; ++r)
            std::swap(M[r][i], M[r][j]);
    };
    auto col_addmul = [&](size_t i, size_t j, int64_t c) {
        for (size_t r = 0; r < t; ++r)
            M[r][i] = checked_add(M[r][i], checked_mul(c, M[r][j]));
    };

    // diagonalize the trailing block starting at position k
    auto diagonalize_from = [&](size_t from) {
        for (size_t k = from; k < t; ++k) {
            for (;;) {
                // pivot: minimal nonzero |entry| in the trailing submatrix
                size_t pi = t, pj = t;
                int64_t best = 0;
                for (size_t i = k; i < t; ++i)
                    for (size_t j = k; j < t; ++j) {
                        int64_t v = M[i][j] < 0 ? -M[i][j] : M[i][j];
                        if (v != 0 && (best == 0 || v < best)) {
                            best = v;
                            pi = i;
                            pj = j;
                        }
                    }
                check(pi != t, "relation matrix is singular");
                if (pi != k)
                    row_swap(k, pi);
                if (pj != k)
                    col_swap(k, pj);
                if (M[k][k] < 0)
                    row_negate(k);

                bool clean = true;
                for (size_t i = k + 1; i < t; ++i)
                    if (M[i][k] != 0) {
                        int64_t q = M[i][k] / M[k][k];
                        if (q != 0)
                            row_addmul(i, k, -q);
                        if (M[i][k] != 0)
                            clean = false;
                    }
                for (size_t j = k + 1; j < t; ++j)
                    if (M[k][j] != 0) {
                        int64_t q = M[k][j] / M[k][k];
                        if (q != 0)
                            col_addmul(j, k, -q);
                        if (M[k][j] != 0)
                            clean = false;
                    }
                if (clean)
                    break;
            }
        }
    };

    diagonalize_from(0);

    // enforce the divisibility chain d_k | d_{k+1}
    for (bool again = true; again;) {
        again = false;
        for (size_t k = 0; k + 1 < t; ++k) {
            if (M[k + 1][k + 1] % M[k][k] != 0) {
                again = true;
                row_addmul(k, k + 1, 1); // pull d_{k+1} into row k
                diagonalize_from(k);
            }
        }
    }

    std::vector<int64_t> diag(t);
    for (size_t k = 0; k < t; ++k)
        diag[k] = M[k][k];
    return diag;
}

} // namespace detail

// class of I^e for signed e, up to principal factors
inline OrderIdeal ideal_pow_signed(const QuadOrder &ord, const OrderIdeal &I,
                                   int64_t e)
{
    if (e < 0)
        return ideal_pow_reduce(ord, conj_ideal(ord, I),
                                static_cast<uint64_t>(-e));
    return ideal_pow_reduce(ord, I, static_cast<uint64_t>(e));
}

inline int64_t class_order_of(const QuadOrder &ord, const OrderIdeal &I,
                              int64_t bound)
{
    OrderIdeal x = ideal_reduce(ord, I);
    OrderIdeal acc = x;
    int64_t m = 1;
    while (!is_principal(ord, acc)) {
        acc = ideal_reduce(ord, ideal_compose(ord, acc, x));
        ++m;
        check(m <= bound, "class order exceeded the group order bound");
    }
    return m;
}

// Pic(O) as an explicit abelian group.  target_h comes from the zeta oracle;
// the closure must reach exactly that order using prime ideals of degree at
// most 2*genus + 2.
inline AbelianStructure class_group(const QuadOrder &ord, int64_t target_h)
{
    require(target_h >= 1, "target group order must be positive");
    AbelianStructure G;
    G.h = target_h;
    if (target_h == 1)
        return G;

    struct Entry {
        OrderIdeal ideal;
        std::vector<int64_t> exp;
    };
    std::map<std::vector<uint32_t>, Entry> elements;
    OrderIdeal one = unit_ideal(ord);
    elements.emplace(class_key(one), Entry{one, {}});

    std::vector<OrderIdeal> gens;
    std::vector<std::vector<int64_t>> relations; // row per generator

    int degree_cap = 2 * ord.genus + 2;
    for (int d = 1; d <= degree_cap && static_cast<int64_t>(elements.size()) < target_h; ++d) {
        for_each_monic_irreducible(ord.field, static_cast<uint32_t>(d),
                                   [&](const Poly &pi) {
            auto P = prime_ideal_above(ord, pi);
            if (!P)
                return true;
            OrderIdeal cP = canonical_form(ord, *P);
            if (elements.count(class_key(cP)))
                return true;

            // relative order r of [P] over the current subgroup
            OrderIdeal walk = cP;
            int64_t r = 1;
            while (!elements.count(class_key(walk))) {
                walk = ideal_mul_reduce(ord, walk, *P);
                ++r;
                check(r <= target_h, "relative order exceeded target");
            }
            const std::vector<int64_t> &landing =
                elements.at(class_key(walk)).exp;

            size_t t = gens.size();
            std::vector<int64_t> row(t + 1, 0);
            for (size_t j = 0; j < landing.size(); ++j)
                row[j] = -landing[j];
            row[t] = r;
            for (auto &old : relations)
                old.push_back(0);
            relations.push_back(std::move(row));
            gens.push_back(*P);

            // coset expansion: layer_i = P^i * S
            std::vector<Entry> layer;
            layer.reserve(elements.size());
            for (auto &kv : elements)
                layer.push_back(kv.second);
            for (int64_t i = 1; i < r; ++i) {
                for (auto &entry : layer) {
                    OrderIdeal next = ideal_mul_reduce(ord, entry.ideal, *P);
                    std::vector<int64_t> exp = entry.exp;
                    exp.resize(t, 0);
                    exp.push_back(i);
                    entry = Entry{next, std::move(exp)};
                    auto key = class_key(entry.ideal);
                    check(!elements.count(key),
                          "coset expansion revisited a class");
                    elements.emplace(std::move(key), entry);
                }
            }
            return static_cast<int64_t>(elements.size()) < target_h;
        });
    }

    check(static_cast<int64_t>(elements.size()) == target_h,
          "class group enumeration saturated at " +
              std::to_string(elements.size()) + " of " +
              std::to_string(target_h) +
              ": oracle and enumeration disagree");

    // pad relation rows to full width and take the SNF
    size_t t = gens.size();
    for (auto &row : relations)
        row.resize(t, 0);
    std::vector<std::vector<int64_t>> M(t, std::vector<int64_t>(t, 0));
    for (size_t i = 0; i < t; ++i)
        for (size_t j = 0; j < t; ++j)
            M[i][j] = relations[j][i]; // relations as columns
    std::vector<std::vector<int64_t>> winv;
    std::vector<int64_t> diag = detail::smith_normal_form(M, winv);

    int64_t prod = 1;
    for (size_t j = 0; j < t; ++j) {
        check(diag[j] > 0, "nonpositive elementary divisor");
        prod = checked_mul(prod, diag[j]);
    }
    check(prod == target_h, "SNF order mismatch");

    for (size_t j = 0; j < t; ++j) {
        if (diag[j] == 1)
            continue;
        OrderIdeal g = unit_ideal(ord);
        for (size_t i = 0; i < t; ++i) {
            if (winv[i][j] == 0)
                continue;
            OrderIdeal piece = ideal_pow_signed(ord, gens[i],
                                                winv[i][j] % target_h);
            g = ideal_reduce(ord, ideal_compose(ord, g, piece));
        }
        g = canonical_form(ord, g);
        check(class_order_of(ord, g, target_h) == diag[j],
              "generator order does not match its elementary divisor");
        G.divisors.push_back(diag[j]);
        G.generators.push_back(g);
    }
    return G;
}

// 2-part order 2^s and cyclicity: at most one even elementary divisor.
inline std::pair<int, bool> two_sylow(const AbelianStructure &G)
{
    int s = 0;
    int even_divisors = 0;
    for (int64_t d : G.divisors) {
        if (d % 2 == 0)
            ++even_divisors;
        while (d % 2 == 0) {
            d /= 2;
            ++s;
        }
    }
    return {s, even_divisors <= 1};
}

// least alpha in coordinate order making kappa(X,Y) = eX^2 + alpha XY + Y^2
// irreducible, i.e. alpha^2 - 4e a non-square
inline uint32_t least_alpha(const Field &F, uint32_t e)
{
    std::vector<uint32_t> order;
    for (uint32_t x = 0; x < F.q(); ++x)
        order.push_back(x);
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return F.coord_less(a, b); });
    for (uint32_t a : order) {
        uint32_t disc = F.sub(F.mul(a, a), F.mul(4 % F.p(), e));
        if (!F.is_square(disc))
            return a;
    }
    throw internal_error("no alpha with alpha^2 - 4e non-square");
}

// The representation e*p = kappa(B, C) behind the ambiguous class, with
// deg B < deg C = k/2 and C monic.  kappa factors over F_{q^2} as
// e (X - delta Y)(X - conj(delta) Y) with 2 e delta = alpha +-
// sqrt(alpha^2 - 4e), which read off the norm form gives
// e*p = e C^2 - alpha C B + B^2, the orientation under which (C, B+sqrt(D))
// is an ideal (e*p = B^2 mod C).  Computed by scanning scalars s against the
// F_{q^2}-factor pi of p and splitting s*pi over the basis {1, delta}.
inline std::pair<Poly, Poly> ambiguous_pair(const QuadOrder &ord,
                                            uint32_t alpha)
{
    const Field &F = ord.field;
    require(ord.k % 2 == 0, "ambiguous pair needs even degree");
    uint32_t disc = F.sub(F.mul(alpha, alpha), F.mul(4 % F.p(), ord.e));
    require(!F.is_square(disc), "kappa is reducible: alpha^2 - 4e is a square");

    QuadExt qe = QuadExt::make(F);
    const Field &E = qe.ext();
    uint32_t root = *E.sqrt(qe.embed(disc));
    uint32_t delta = E.div(E.add(qe.embed(alpha), root),
                           qe.embed(F.mul(2 % F.p(), ord.e)));
    uint32_t delta_bar = qe.conj(delta);
    check(delta != delta_bar, "delta must generate the extension");
    uint32_t dd = E.sub(delta, delta_bar);

    Poly pe = poly_embed(ord.p_poly, qe.embedding());
    auto factors = factor(pe);
    check(factors.size() == 2 && factors[0].second == 1 &&
              factors[1].second == 1 &&
              factors[0].first.deg() == ord.k / 2,
          "even-degree irreducible must split into two conjugate factors");
    const Poly &pi = factors[0].first;

    std::vector<uint32_t> order;
    for (uint32_t s = 1; s < E.q(); ++s)
        order.push_back(s);
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return E.coord_less(a, b); });

    for (uint32_t s : order) {
        Poly spi = poly_scale(pi, s);
        // z = x + delta*y with x, y rational: y = (z - conj z)/(delta - conj delta)
        std::vector<uint32_t> Cc(spi.c.size()), Bc(spi.c.size());
        for (size_t i = 0; i < spi.c.size(); ++i) {
            uint32_t z = spi.c[i];
            uint32_t y = E.div(E.sub(z, qe.conj(z)), dd);
            uint32_t x = E.sub(z, E.mul(delta, y));
            Cc[i] = qe.embedding().pullback(x);
            Bc[i] = F.neg(qe.embedding().pullback(y)); // s*pi = C - delta*B
        }
        Poly C(F, std::move(Cc));
        Poly B(F, std::move(Bc));
        if (C.deg() != ord.k / 2 || C.lc() != 1)
            continue;
        if (!(B.deg() < ord.k / 2))
            continue;
        // identity e*p = e C^2 - alpha C B + B^2
        Poly lhs = poly_scale(ord.p_poly, ord.e);
        Poly rhs = poly_add(
            poly_sub(poly_scale(poly_mul(C, C), ord.e),
                     poly_scale(poly_mul(C, B), alpha)),
            poly_mul(B, B));
        if (lhs == rhs)
            return {B, C};
    }
    throw internal_error(
        "no scaling yields the (B, C) representation; the leading "
        "coefficient of p must lie in the square class of units");
}

struct AmbiguousOrder {
    int64_t order = 1; // order of the ambiguous class
    int power_level = 0; // largest j with the class inside C^(2^j)
};

inline AmbiguousOrder ambiguous_class_order(const QuadOrder &ord,
                                            const Poly &B, const Poly &C,
                                            const AbelianStructure &G)
{
    require(ord.k % 2 == 0, "ambiguous class needs even degree");
    OrderIdeal amb = make_ideal(ord, C, poly_mod(B, C));
    AmbiguousOrder out;
    out.order = class_order_of(ord, amb, G.h);

    auto [s, cyclic] = two_sylow(G);
    check(cyclic, "2-Sylow not cyclic: ambiguous power level undefined");
    if (s == 0) {
        out.power_level = 0;
        return out;
    }
    // cyclic 2-Sylow generator
    OrderIdeal gamma = unit_ideal(ord);
    for (size_t j = 0; j < G.divisors.size(); ++j) {
        if (G.divisors[j] % 2 == 0) {
            int64_t odd = G.divisors[j];
            while (odd % 2 == 0)
                odd /= 2;
            gamma = canonical_form(
                ord, ideal_pow_reduce(ord, G.generators[j],
                                      static_cast<uint64_t>(odd)));
        }
    }
    OrderIdeal camb = canonical_form(ord, amb);
    int best = -1;
    for (int j = 0; j <= s; ++j) {
        // members of C^{2^j}: powers of gamma^{2^j}
        int64_t step = 1;
        for (int i = 0; i < j; ++i)
            step *= 2;
        int64_t count = 1;
        for (int i = 0; i < s - j; ++i)
            count *= 2;
        OrderIdeal base = canonical_form(
            ord, ideal_pow_reduce(ord, gamma, static_cast<uint64_t>(step)));
        OrderIdeal cur = unit_ideal(ord);
        bool member = false;
        for (int64_t m = 0; m < count && !member; ++m) {
            if (canonical_form(ord, cur) == camb)
                member = true;
            cur = ideal_reduce(ord, ideal_compose(ord, cur, base));
        }
        if (member)
            best = j;
        else
            break;
    }
    check(best >= 0, "ambiguous class not in the 2-Sylow");
    out.power_level = best;
    return out;
}

struct Theorem1Row {
    Poly p;
    int k = 0;
    int64_t h = 0;
    bool even_matches = false;
    bool four_matches = false;
    bool pass = false;
};

// Exhaustive Theorem-1 sweep: every monic irreducible of degree <= cap.
inline std::vector<Theorem1Row> verify_theorem1(const Field &F, uint32_t e,
                                                int degree_cap,
                                                uint32_t size_cap =
                                                    Field::kDefaultCap)
{
    std::vector<Theorem1Row> rows;
    for (int d = 1; d <= degree_cap; ++d) {
        for_each_monic_irreducible(F, static_cast<uint32_t>(d),
                                   [&](const Poly &p) {
            QuadOrder ord = make_quad_order(F, e, p);
            int64_t h = pic_order(ord, size_cap);
            AbelianStructure G = class_group(ord, h);
            Theorem1Row row;
            row.p = p;
            row.k = d;
            row.h = h;
            row.even_matches = (h % 2 == 0) == (d % 2 == 0);
            row.four_matches = (h % 4 == 0) == (d % 4 == 0);
            row.pass = row.even_matches && row.four_matches && G.h == h;
            rows.push_back(std::move(row));
            return true;
        });
    }
    return rows;
}

} // namespace ffclass
