#pragma once

// Quadratic residue symbols in F_q[T], two independent ways: the Euler
// criterion in the residue field, and the flip-and-reduce reciprocity
// recursion with the classical sign (-1)^{(q-1)/2 * deg f * deg g} and
// leading-unit corrections.  The test suite enforces agreement, so a wrong
// sign convention cannot survive.

#include "ffclass/factor.hpp"

namespace ffclass {

// (f/g) for irreducible g: 0 if g | f, else Euler criterion
// f^((q^deg g - 1)/2) in A/(g).
inline int symbol_euler(const Poly &f, const Poly &g)
{
    check_same_field(f, g);
    require(g.deg() >= 1, "symbol denominator must be non-constant");
    require(is_irreducible(g), "symbol_euler requires an irreducible denominator");
    const Field &F = f.f;
    Poly r = poly_mod(f, g);
    if (r.is_zero())
        return 0;
    unsigned __int128 Q = 1;
    for (int i = 0; i < g.deg(); ++i)
        Q *= F.q();
    Poly e = poly_pow_mod(r, (Q - 1) / 2, g);
    if (e.is_one())
        return 1;
    check(e.is_constant() && e.coeff(0) == F.neg(1),
          "Euler criterion returned a non-sign value");
    return -1;
}

// Jacobi-style symbol by quadratic reciprocity, extended multiplicatively
// over the factorization of the denominator.  Denominator leading units are
// irrelevant; numerator units contribute chi(u)^{deg g}.
inline int symbol_reciprocity(Poly f, Poly g)
{
    check_same_field(f, g);
    require(!f.is_zero() && !g.is_zero(), "zero argument to symbol");
    require(g.deg() >= 1, "symbol denominator must be non-constant");
    const Field &F = f.f;
    const bool sign_matters = ((F.q() - 1) / 2) % 2 == 1;

    g = poly_monic(g);
    int result = 1;
    for (;;) {
        f = poly_mod(f, g);
        if (f.is_zero())
            return 0;
        uint32_t u = f.lc();
        if (chi(F, u) == -1 && g.deg() % 2 == 1)
            result = -result;
        f = poly_monic(f);
        if (f.deg() == 0)
            return result;
        if (sign_matters && f.deg() % 2 == 1 && g.deg() % 2 == 1)
            result = -result;
        std::swap(f, g);
    }
}

} // namespace ffclass
