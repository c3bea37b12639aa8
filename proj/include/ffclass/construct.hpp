#pragma once

// Special discriminants e*p(B, C) with C = T^{l-2} Q(T) and
// B = b0 T^{l-2} + b1, built by direct search: Q with a primitive root
// lambda, B with prescribed squareness of B(lambda), and delta in F_{q^2}
// making C - delta*B irreducible over F_{q^2}.  The product
// p = (C - delta B)(C - conj(delta) B) is then irreducible over F_q with
// e = (delta conj(delta))^{-1} a non-square, and 8 | h(e p) is decided by
// the squareness of delta*B(lambda) alone.

#include "ffclass/classgroup.hpp"
#include "ffclass/symbols.hpp"

namespace ffclass {

struct SpecialQ {
    Field base;
    QuadExt qe;
    Poly Q;          // monic irreducible quadratic T^2 + aT + b, a != 0
    uint32_t lambda; // canonical root in F_{q^2}, a multiplicative generator
};

// Least monic irreducible quadratic with nonzero linear coefficient whose
// roots generate F_{q^2}^*.
inline SpecialQ find_special_Q(const Field &F,
                               uint32_t size_cap = Field::kDefaultCap)
{
    require(F.q() >= 3, "base field too small");
    SpecialQ out;
    out.base = F;
    out.qe = QuadExt::make(F, size_cap);
    const Field &E = out.qe.ext();
    bool found = false;
    for_each_monic(F, 2, [&](const Poly &Q) {
        if (Q.coeff(1) == 0 || !is_irreducible(Q))
            return true;
        auto roots = roots_in_ext(Q, out.qe);
        check(roots.size() == 2, "irreducible quadratic must have two roots");
        uint32_t lam = roots[0]; // least in coordinate order
        if (E.mult_order(lam) != E.q() - 1)
            return true;
        out.Q = Q;
        out.lambda = lam;
        found = true;
        return false;
    });
    check(found, "no primitive quadratic with a != 0 exists; q too small");
    return out;
}

// C = T^{l-2} Q(T) over the base field
inline Poly special_C(const SpecialQ &sq, uint32_t l)
{
    std::vector<uint32_t> c(l + 1, 0);
    for (size_t i = 0; i < sq.Q.c.size(); ++i)
        c[l - 2 + i] = sq.Q.c[i];
    return Poly(sq.base, std::move(c));
}

// Least (b0, b1) with B = b0 T^{l-2} + b1 irreducible, B(lambda) != 0 and
// of the requested squareness in F_{q^2}; skip > 0 returns later hits of
// the same scan.  The q+1 > l-2 size condition is not imposed up front:
// exhaustion of the scan is itself the report that q is too small.
inline Poly find_B(const SpecialQ &sq, uint32_t l, bool want_square,
                   uint32_t skip = 0)
{
    require(l >= 4 && l % 2 == 0, "l must be even and >= 4");
    const Field &F = sq.base;
    const Field &E = sq.qe.ext();
    std::vector<uint32_t> order;
    for (uint32_t x = 1; x < F.q(); ++x)
        order.push_back(x);
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return F.coord_less(a, b); });
    for (uint32_t b0 : order) {
        for (uint32_t b1 : order) {
            std::vector<uint32_t> c(l - 1, 0);
            c[0] = b1;
            c[l - 2] = b0;
            Poly B(F, std::move(c));
            uint32_t blam = poly_eval(poly_embed(B, sq.qe.embedding()),
                                      sq.lambda);
            if (blam == 0)
                continue;
            if (E.is_square(blam) != want_square)
                continue;
            if (!is_irreducible(B))
                continue;
            if (skip > 0) {
                --skip;
                continue;
            }
            return B;
        }
    }
    throw search_exhausted(
        "no B = b0*T^" + std::to_string(l - 2) + "+b1 with B(lambda) " +
        (want_square ? "a square" : "a non-square") + " over F_" +
        std::to_string(F.q()) + ": q below the size threshold for l = " +
        std::to_string(l));
}

// First delta (canonical order, non-square, outside F_q) making
// T^{l-2} Q - delta B irreducible over F_{q^2}; direct search in place of
// the density argument.
inline uint32_t find_delta(const SpecialQ &sq, const Poly &B, uint32_t l)
{
    const Field &E = sq.qe.ext();
    Poly Cext = poly_embed(special_C(sq, l), sq.qe.embedding());
    Poly Bext = poly_embed(B, sq.qe.embedding());

    std::vector<uint32_t> order;
    for (uint32_t x = 1; x < E.q(); ++x)
        order.push_back(x);
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return E.coord_less(a, b); });

    uint32_t scanned = 0;
    for (uint32_t delta : order) {
        if (E.is_square(delta) || sq.qe.in_base(delta))
            continue;
        ++scanned;
        Poly cand = poly_sub(Cext, poly_scale(Bext, delta));
        if (is_irreducible(cand)) {
            // success forces the norm to be a non-square of F_q
            check(!sq.base.is_square(sq.qe.norm(delta)),
                  "norm of a non-square delta must be a non-square");
            return delta;
        }
    }
    throw search_exhausted(
        "no delta among " + std::to_string(scanned) +
        " candidates makes T^{l-2}Q - delta*B irreducible: q = " +
        std::to_string(sq.base.q()) +
        " is below the effective threshold for l = " + std::to_string(l));
}

struct SpecialDiscriminant {
    Field field;
    uint32_t l = 0;
    Poly Q;
    uint32_t lambda = 0;
    Poly B;
    uint32_t delta = 0;
    uint32_t e = 0;      // (delta conj(delta))^{-1}, non-square
    uint32_t alpha = 0;  // e (delta + conj(delta))
    Poly C;
    Poly p_poly;         // monic irreducible of degree k = 2l
    int k = 0;
};

// e = (delta conj delta)^{-1}, alpha = e (delta + conj delta), so that
// 2 e delta = alpha +- sqrt(alpha^2 - 4e) and
// e p = e C^2 - alpha C B + B^2 = e (C - delta B)(C - conj(delta) B).
inline SpecialDiscriminant assemble_discriminant(const SpecialQ &sq,
                                                 const Poly &B, uint32_t delta)
{
    const Field &F = sq.base;
    const Field &E = sq.qe.ext();

    SpecialDiscriminant sd;
    sd.field = F;
    sd.Q = sq.Q;
    sd.lambda = sq.lambda;
    sd.B = B;
    sd.delta = delta;
    sd.l = static_cast<uint32_t>(B.deg() + 2);
    sd.k = 2 * static_cast<int>(sd.l);

    uint32_t delta_bar = sq.qe.conj(delta);
    uint32_t nrm = sq.qe.norm(delta);
    sd.e = F.inv(nrm);
    sd.alpha = F.mul(sd.e, sq.qe.trace(delta));
    sd.C = special_C(sq, sd.l);

    // p = e^{-1} (e C^2 - alpha C B + B^2)
    Poly ep = poly_add(poly_sub(poly_scale(poly_mul(sd.C, sd.C), sd.e),
                                poly_scale(poly_mul(sd.C, B), sd.alpha)),
                       poly_mul(B, B));
    sd.p_poly = poly_scale(ep, F.inv(sd.e));

    // invariants
    check(is_irreducible(sq.Q) && sq.Q.coeff(1) != 0, "Q invariant failed");
    check(poly_eval(poly_embed(sq.Q, sq.qe.embedding()), sq.lambda) == 0,
          "lambda is not a root of Q");
    check(B.coeff(0) != 0 && B.lc() != 0 && is_irreducible(B),
          "B invariant failed");
    uint32_t blam = poly_eval(poly_embed(B, sq.qe.embedding()), sq.lambda);
    check(blam != 0, "B(lambda) must not vanish");
    check(!E.is_square(delta) && !sq.qe.in_base(delta),
          "delta must be a non-square outside F_q");
    check(!F.is_square(sd.e), "e must be a non-square");
    // 2 e delta solves z^2 e - alpha z + 1 = 0
    check(E.add(E.sub(E.mul(sq.qe.embed(sd.e), E.mul(delta, delta)),
                      E.mul(sq.qe.embed(sd.alpha), delta)),
                1) == 0,
          "delta does not match alpha and e");

    Poly Cext = poly_embed(sd.C, sq.qe.embedding());
    Poly Bext = poly_embed(B, sq.qe.embedding());
    Poly pi = poly_sub(Cext, poly_scale(Bext, delta));
    Poly pi_bar = poly_sub(Cext, poly_scale(Bext, delta_bar));
    check(is_irreducible(pi), "C - delta B must be irreducible over F_{q^2}");
    check(poly_embed(sd.p_poly, sq.qe.embedding()) == poly_mul(pi, pi_bar),
          "p must factor as (C - delta B)(C - conj(delta) B)");
    check(sd.p_poly.deg() == sd.k && sd.p_poly.lc() == 1,
          "p must be monic of degree 2l");
    check(is_irreducible(sd.p_poly), "p must be irreducible over F_q");
    return sd;
}

inline QuadOrder order_of(const SpecialDiscriminant &sd)
{
    return make_quad_order(sd.field, sd.e, sd.p_poly);
}

// The 8-divisibility criterion: with pi = C - delta B above lambda's prime,
// the residue symbol reduces to the squareness of delta * B(lambda); the
// direction flips between the two congruence classes of l mod 4.
inline bool predict_8_divisibility(const SpecialDiscriminant &sd)
{
    QuadExt qe = QuadExt::make(sd.field);
    const Field &E = qe.ext();
    uint32_t blam = poly_eval(poly_embed(sd.B, qe.embedding()), sd.lambda);
    bool square = E.is_square(E.mul(sd.delta, blam));
    if (sd.l % 4 == 2)
        return square;
    return !square;
}

struct Witness {
    SpecialDiscriminant sd;
    bool predicted_8 = false;
    int64_t h = 0;
    std::vector<int64_t> divisors;
    LPolynomial L;
    bool criterion_ok = false; // prediction == (8 | h)
};

inline Witness certify(const SpecialDiscriminant &sd,
                       uint32_t size_cap = Field::kDefaultCap)
{
    Witness w;
    w.sd = sd;
    w.predicted_8 = predict_8_divisibility(sd);
    QuadOrder ord = order_of(sd);
    w.L = l_polynomial(ord.D, size_cap);
    w.h = checked_mul(ord.d_inf, w.L.at_one());
    AbelianStructure G = class_group(ord, w.h);
    w.divisors = G.divisors;
    w.criterion_ok = w.predicted_8 == (w.h % 8 == 0);
    return w;
}

// Theorem-2 witness pair: same (q, k), class numbers 4 and 0 mod 8.
inline std::pair<Witness, Witness>
theorem2_witnesses(const Field &F, int k, uint32_t size_cap = Field::kDefaultCap)
{
    require(k % 4 == 0 && k >= 8, "k must be a positive multiple of 4, >= 8");
    uint32_t l = static_cast<uint32_t>(k / 2);
    SpecialQ sq = find_special_Q(F, size_cap);

    Poly B_sq = find_B(sq, l, /*want_square=*/true);
    Poly B_ns = find_B(sq, l, /*want_square=*/false);
    SpecialDiscriminant sd_sq =
        assemble_discriminant(sq, B_sq, find_delta(sq, B_sq, l));
    SpecialDiscriminant sd_ns =
        assemble_discriminant(sq, B_ns, find_delta(sq, B_ns, l));

    Witness w_sq = certify(sd_sq, size_cap);
    Witness w_ns = certify(sd_ns, size_cap);

    check(w_sq.criterion_ok && w_ns.criterion_ok,
          "8-divisibility prediction disagrees with the computed class "
          "number");
    check(w_sq.h % 4 == 0 && w_ns.h % 4 == 0,
          "both class numbers must be divisible by 4");
    check((w_sq.h % 8 == 0) != (w_ns.h % 8 == 0),
          "witness class numbers must differ modulo 8");
    // return (h = 4 mod 8, h = 0 mod 8)
    if (w_sq.h % 8 == 0)
        std::swap(w_sq, w_ns);
    return {w_sq, w_ns};
}

} // namespace ffclass
