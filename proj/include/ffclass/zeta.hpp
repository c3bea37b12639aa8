#pragma once

// Independent class-number oracle: point counts on y^2 = D(T), the
// L-polynomial via Newton identities and the functional equation, and the
// Jacobian/Picard bookkeeping built on them.  Exact integer arithmetic
// throughout; Weil bounds are hard assertions.

#include "ffclass/order.hpp"

namespace ffclass {

struct PointCounts {
    std::vector<int64_t> N; // N[i-1] = #X(F_{q^i}), i = 1..g
};

// number of points on the smooth projective model over F_{q^i}
inline int64_t count_points(const Poly &D, uint32_t i,
                            uint32_t size_cap = Field::kDefaultCap)
{
    require(i >= 1, "extension index must be >= 1");
    const Field &F = D.f;
    require(poly_gcd(D, poly_derivative(D)).deg() == 0, "D must be squarefree");
    Field Fi = i == 1 ? F : make_field(F.p(), F.degree() * i, size_cap);
    Embedding emb = Embedding::make(F, Fi);
    Poly Di = poly_embed(D, emb);

    int64_t count = 0;
    for (uint32_t t = 0; t < Fi.q(); ++t) {
        uint32_t v = poly_eval(Di, t);
        count += 1 + chi(Fi, v);
    }
    if (D.deg() % 2 == 0)
        count += Fi.is_square(emb(D.lc())) ? 2 : 0;
    else
        count += 1;

    // Weil bound |N - (q^i + 1)| <= 2g sqrt(q^i), checked exactly by squaring
    int64_t qi = 1;
    for (uint32_t j = 0; j < i; ++j)
        qi = checked_mul(qi, F.q());
    int64_t g = D.deg() % 2 == 1 ? (D.deg() - 1) / 2 : (D.deg() - 2) / 2;
    int64_t dev = count - qi - 1;
    check(checked_mul(dev, dev) <= checked_mul(checked_mul(4 * g, g), qi),
          "point count violates the Weil bound");
    return count;
}

inline PointCounts count_points_up_to_genus(const Poly &D,
                                            uint32_t size_cap =
                                                Field::kDefaultCap)
{
    int g = D.deg() % 2 == 1 ? (D.deg() - 1) / 2 : (D.deg() - 2) / 2;
    PointCounts pc;
    for (int i = 1; i <= g; ++i)
        pc.N.push_back(count_points(D, static_cast<uint32_t>(i), size_cap));
    return pc;
}

struct LPolynomial {
    std::vector<int64_t> a; // a[0..2g], a[0] = 1
    int genus = 0;
    int64_t q = 0;

    int64_t at_one() const
    {
        int64_t s = 0;
        for (int64_t c : a)
            s = checked_add(s, c);
        return s;
    }
};

// Newton-identity recursion on the power sums q^i + 1 - N_i for i <= g,
// completed by the functional equation a_{2g-i} = q^{g-i} a_i.
inline LPolynomial l_polynomial(const Poly &D,
                                uint32_t size_cap = Field::kDefaultCap)
{
    const Field &F = D.f;
    int g = D.deg() % 2 == 1 ? (D.deg() - 1) / 2 : (D.deg() - 2) / 2;
    PointCounts pc = count_points_up_to_genus(D, size_cap);

    LPolynomial L;
    L.genus = g;
    L.q = F.q();
    L.a.assign(2 * g + 1, 0);
    L.a[0] = 1;

    // power sums of the inverse roots
    std::vector<int64_t> ps(g + 1, 0);
    for (int i = 1; i <= g; ++i) {
        int64_t qi = 1;
        for (int j = 0; j < i; ++j)
            qi = checked_mul(qi, F.q());
        ps[i] = checked_add(qi, 1 - pc.N[i - 1]);
    }
    for (int i = 1; i <= g; ++i) {
        int64_t acc = ps[i];
        for (int j = 1; j < i; ++j)
            acc = checked_add(acc, checked_mul(L.a[j], ps[i - j]));
        check(acc % i == 0, "non-integral L-coefficient: counting bug");
        L.a[i] = -acc / i;
    }
    for (int i = 0; i < g; ++i) {
        int64_t qpow = 1;
        for (int j = 0; j < g - i; ++j)
            qpow = checked_mul(qpow, F.q());
        L.a[2 * g - i] = checked_mul(qpow, L.a[i]);
    }
    check(L.at_one() > 0, "L(1) must be positive");
    return L;
}

// h = d_inf * L(1): the Picard group order of the order O.
inline int64_t pic_order(const QuadOrder &ord,
                         uint32_t size_cap = Field::kDefaultCap)
{
    LPolynomial L = l_polynomial(ord.D, size_cap);
    return checked_mul(ord.d_inf, L.at_one());
}

// 2-power torsion of J(F_q) through the exact sequence
// 0 -> J[2^inf](F_q) -> C -> Z/d -> 0 with C the (cyclic) 2-part of Pic(O).
struct TwoPowerTorsion {
    int64_t torsion_order = 1; // |J[2^inf](F_q)|
    bool has_two_torsion_point = false;
    bool has_point_of_exact_order_4 = false;
};

inline TwoPowerTorsion two_power_torsion(const QuadOrder &ord,
                                         const AbelianStructure &G)
{
    int s = 0;
    int64_t h = G.h;
    while (h % 2 == 0) {
        h /= 2;
        ++s;
    }
    int d2 = ord.k % 2 == 0 ? 1 : 0; // 2-valuation of d_inf
    TwoPowerTorsion t;
    int torsion_exp = std::max(s - d2, 0);
    t.torsion_order = 1;
    for (int i = 0; i < torsion_exp; ++i)
        t.torsion_order *= 2;
    t.has_two_torsion_point = t.torsion_order >= 2;
    t.has_point_of_exact_order_4 = t.torsion_order >= 4;
    return t;
}

// 2 (q^k - 1)/(q^2 - 1) as an exact integer (k even); fits __int128 for all
// supported sizes and is checked against int64 on return.
inline int64_t gekeler_term(int64_t q, int k)
{
    require(k % 2 == 0 && k >= 2, "gekeler term needs even k >= 2");
    // geometric sum: (q^k-1)/(q^2-1) = sum_{j<k/2} q^{2j}
    __int128 sum = 0;
    __int128 q2 = static_cast<__int128>(q) * q;
    __int128 pw = 1;
    for (int j = 0; j < k / 2; ++j) {
        sum += pw;
        pw *= q2;
    }
    sum *= 2;
    check(sum <= std::numeric_limits<int64_t>::max(), "gekeler term overflow");
    return static_cast<int64_t>(sum);
}

// same quantity modulo m, via the geometric sum; no size limits
inline int64_t gekeler_term_mod(int64_t q, int k, int64_t m)
{
    require(k % 2 == 0 && k >= 2, "gekeler term needs even k >= 2");
    int64_t q2 = (q % m) * (q % m) % m;
    int64_t sum = 0, pw = 1;
    for (int j = 0; j < k / 2; ++j) {
        sum = (sum + pw) % m;
        pw = pw * q2 % m;
    }
    return 2 * sum % m;
}

// genus-count from the mass formula 4 g = 2 (q^k-1)/(q^2-1) + h; integrality
// is asserted, a violation would falsify the formula.
inline int64_t gekeler_genus(const QuadOrder &ord, int64_t h)
{
    require(ord.k % 2 == 0, "gekeler genus needs even degree");
    int64_t t = checked_add(gekeler_term(ord.field.q(), ord.k), h);
    check(t % 4 == 0, "gekeler mass formula integrality failed");
    return t / 4;
}

// Parity of the type number t = g(p), with the displayed case rule checked:
// for 4 | k, t is even iff (8 | h when 8 | k) / (8 does not divide h when
// 8 does not divide k).
inline bool type_number_parity(const QuadOrder &ord, int64_t h)
{
    require(ord.k % 4 == 0, "type number parity needs 4 | k");
    int64_t t = gekeler_genus(ord, h);
    bool even = t % 2 == 0;
    bool rule = ord.k % 8 == 0 ? (h % 8 == 0) : (h % 8 != 0);
    check(even == rule, "type-number parity rule violated");
    return even;
}

} // namespace ffclass
