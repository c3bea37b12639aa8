#pragma once

// Exact arithmetic in F_q (q = p^n, p odd) and its extensions.
//
// A Field is an immutable table-backed model of F_{p^n}.  The defining
// modulus is canonical: the lexicographically least monic irreducible of
// degree n over F_p, coefficients compared low-degree-first.  Two builds of
// the same (p, n) therefore agree bit for bit, on any platform.
//
// Elements are dense coordinate vectors over the power basis, packed into a
// u32 code: code = c_0 + c_1 p + ... + c_{n-1} p^{n-1}.  The prime subfield
// occupies codes 0..p-1.  Multiplication goes through exp/log tables of the
// canonical generator; addition is digit-wise.  All values are immutable
// after construction, so a Field is freely shareable across threads.

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "ffclass/common.hpp"

namespace ffclass {

namespace detail {

// Arithmetic on F_p coefficient vectors (little-endian, may carry trailing
// zeros).  Only used while bootstrapping field tables.
using FpPoly = std::vector<uint32_t>;

inline void fp_trim(FpPoly &a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline FpPoly fp_mul_mod(const FpPoly &a, const FpPoly &b, const FpPoly &mod,
                         uint32_t p)
{
    if (a.empty() || b.empty())
        return {};
    std::vector<uint64_t> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + uint64_t(a[i]) * b[j]) % p;
    // reduce by the monic modulus
    size_t n = mod.size() - 1;
    for (size_t i = prod.size(); i-- > n;) {
        uint64_t c = prod[i];
        if (c == 0)
            continue;
        prod[i] = 0;
        for (size_t j = 0; j < n; ++j) {
            uint64_t sub = (c * mod[j]) % p;
            prod[i - n + j] = (prod[i - n + j] + p - sub) % p;
        }
    }
    FpPoly r(prod.begin(), prod.begin() + std::min(prod.size(), n));
    for (auto &x : r)
        x = static_cast<uint32_t>(x);
    fp_trim(r);
    return r;
}

inline bool is_prime_u32(uint32_t v)
{
    if (v < 2)
        return false;
    for (uint32_t d = 2; uint64_t(d) * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

inline std::vector<uint32_t> prime_factors_u64(uint64_t v)
{
    std::vector<uint32_t> out;
    for (uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(static_cast<uint32_t>(d));
            while (v % d == 0)
                v /= d;
        }
    }
    if (v > 1)
        out.push_back(static_cast<uint32_t>(v));
    return out;
}

} // namespace detail

struct FieldData {
    uint32_t p = 0;
    uint32_t n = 0;
    uint32_t q = 0;                 // p^n
    std::vector<uint32_t> modulus;  // length n+1, monic
    std::vector<uint32_t> exp;      // exp[i] = gen^i, size q-1
    std::vector<uint32_t> log;      // log[exp[i]] = i; log[0] unused
    std::vector<uint32_t> frob;     // frob[x] = x^p
    uint32_t gen = 0;               // least primitive element in coordinate order
};

class Field {
  public:
    Field() = default;

    uint32_t p() const { return d_->p; }
    uint32_t degree() const { return d_->n; }
    uint32_t q() const { return d_->q; }
    const std::vector<uint32_t> &modulus() const { return d_->modulus; }
    uint32_t generator() const { return d_->gen; }

    bool same_as(const Field &o) const { return d_ == o.d_; }
    bool compatible(const Field &o) const
    {
        return d_ == o.d_ || (d_->p == o.d_->p && d_->n == o.d_->n &&
                              d_->modulus == o.d_->modulus);
    }

    uint32_t coord(uint32_t x, uint32_t j) const
    {
        for (uint32_t i = 0; i < j; ++i)
            x /= d_->p;
        return x % d_->p;
    }

    std::vector<uint32_t> coords(uint32_t x) const
    {
        std::vector<uint32_t> c(d_->n);
        for (uint32_t j = 0; j < d_->n; ++j) {
            c[j] = x % d_->p;
            x /= d_->p;
        }
        return c;
    }

    uint32_t from_coords(const std::vector<uint32_t> &c) const
    {
        check(c.size() <= d_->n, "coordinate vector too long");
        uint32_t x = 0;
        for (size_t j = c.size(); j-- > 0;) {
            check(c[j] < d_->p, "coordinate out of range");
            x = x * d_->p + c[j];
        }
        return x;
    }

    // Canonical element order: coordinates compared low-degree-first.
    bool coord_less(uint32_t a, uint32_t b) const
    {
        uint32_t p = d_->p;
        for (uint32_t j = 0; j < d_->n; ++j) {
            uint32_t da = a % p, db = b % p;
            if (da != db)
                return da < db;
            a /= p;
            b /= p;
        }
        return false;
    }

    uint32_t add(uint32_t a, uint32_t b) const
    {
        uint32_t p = d_->p, r = 0, mul = 1;
        for (uint32_t j = 0; j < d_->n; ++j) {
            r += ((a % p + b % p) % p) * mul;
            a /= p;
            b /= p;
            mul *= p;
        }
        return r;
    }

    uint32_t neg(uint32_t a) const
    {
        uint32_t p = d_->p, r = 0, mul = 1;
        for (uint32_t j = 0; j < d_->n; ++j) {
            r += ((p - a % p) % p) * mul;
            a /= p;
            mul *= p;
        }
        return r;
    }

    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

    uint32_t mul(uint32_t a, uint32_t b) const
    {
        if (a == 0 || b == 0)
            return 0;
        uint64_t s = uint64_t(d_->log[a]) + d_->log[b];
        if (s >= d_->q - 1)
            s -= d_->q - 1;
        return d_->exp[s];
    }

    uint32_t inv(uint32_t a) const
    {
        check(a != 0, "division by zero field element");
        uint32_t l = d_->log[a];
        return d_->exp[l == 0 ? 0 : d_->q - 1 - l];
    }

    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    uint32_t pow(uint32_t a, unsigned __int128 e) const
    {
        if (a == 0)
            return e == 0 ? 1 : 0;
        uint64_t ord = d_->q - 1;
        uint64_t r = static_cast<uint64_t>(e % ord);
        return d_->exp[(uint64_t(d_->log[a]) * (r % ord)) % ord];
    }

    uint32_t frobenius(uint32_t a) const { return d_->frob[a]; }

    // 0 counts as a square.
    bool is_square(uint32_t a) const
    {
        if (a == 0)
            return true;
        return d_->log[a] % 2 == 0;
    }

    // Canonical square root: the smaller of {y, -y} in coordinate order.
    std::optional<uint32_t> sqrt(uint32_t a) const
    {
        if (a == 0)
            return 0;
        uint32_t l = d_->log[a];
        if (l % 2 != 0)
            return std::nullopt;
        uint32_t y = d_->exp[l / 2];
        uint32_t z = neg(y);
        return coord_less(y, z) ? y : z;
    }

    uint64_t mult_order(uint32_t a) const
    {
        check(a != 0, "order of zero");
        uint64_t ord = d_->q - 1;
        for (uint32_t f : detail::prime_factors_u64(ord)) {
            while (ord % f == 0 && pow(a, ord / f) == 1)
                ord /= f;
        }
        return ord;
    }

    static Field make(uint32_t p, uint32_t n, uint32_t size_cap = kDefaultCap);

    // Default cap keeps exhaustive element enumeration feasible everywhere
    // (q^2 <= 2^16 for all base fields we instantiate extensions of).
    static constexpr uint32_t kDefaultCap = 1u << 16;

  private:
    explicit Field(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const FieldData> d_;
};

namespace detail {

// Least monic irreducible of degree n over F_p, coefficients enumerated
// low-degree-most-significant.  Irreducibility by trial division against all
// monic polynomials of degree <= n/2 (n stays tiny here).
inline std::vector<uint32_t> canonical_modulus(uint32_t p, uint32_t n)
{
    if (n == 1)
        return {0, 1}; // T

    uint64_t count = 1;
    for (uint32_t i = 0; i < n; ++i)
        count *= p;

    std::vector<uint32_t> lower; // coefficient odometer, c_0 slowest
    for (uint64_t idx = 0; idx < count; ++idx) {
        std::vector<uint32_t> c(n + 1, 0);
        c[n] = 1;
        // decode idx with c_0 as the most significant digit
        uint64_t rem = idx;
        for (uint32_t j = 0; j < n; ++j) {
            uint64_t w = 1;
            for (uint32_t t = j + 1; t < n; ++t)
                w *= p;
            c[j] = static_cast<uint32_t>(rem / w);
            rem %= w;
        }
        if (c[0] == 0)
            continue; // divisible by T
        // trial division by all monic g of degree 1..n/2
        bool irreducible = true;
        for (uint32_t dg = 1; irreducible && 2 * dg <= n; ++dg) {
            uint64_t gcount = 1;
            for (uint32_t i = 0; i < dg; ++i)
                gcount *= p;
            for (uint64_t gi = 0; gi < gcount && irreducible; ++gi) {
                std::vector<uint32_t> g(dg + 1, 0);
                g[dg] = 1;
                uint64_t r = gi;
                for (uint32_t j = 0; j < dg; ++j) {
                    g[j] = static_cast<uint32_t>(r % p);
                    r /= p;
                }
                // long division remainder of c by g
                std::vector<uint32_t> rem2(c);
                for (size_t i = rem2.size(); i-- > dg;) {
                    uint32_t lead = rem2[i];
                    if (lead == 0)
                        continue;
                    rem2[i] = 0;
                    for (uint32_t j = 0; j < dg; ++j) {
                        uint64_t sub = (uint64_t(lead) * g[j]) % p;
                        rem2[i - dg + j] =
                            static_cast<uint32_t>((rem2[i - dg + j] + p - sub) % p);
                    }
                }
                bool zero = true;
                for (uint32_t j = 0; j < dg; ++j)
                    if (rem2[j] != 0)
                        zero = false;
                if (zero)
                    irreducible = false;
            }
        }
        if (irreducible)
            return c;
    }
    throw internal_error("no irreducible modulus found");
}

} // namespace detail

inline Field Field::make(uint32_t p, uint32_t n, uint32_t size_cap)
{
    require(p % 2 == 1 && detail::is_prime_u32(p),
            "characteristic must be an odd prime");
    require(n >= 1, "extension degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < n; ++i) {
        q *= p;
        require(q <= size_cap, "field size exceeds configured cap");
    }

    auto d = std::make_shared<FieldData>();
    d->p = p;
    d->n = n;
    d->q = static_cast<uint32_t>(q);
    d->modulus = detail::canonical_modulus(p, n);

    // raw multiply on packed codes, used until tables exist
    auto unpack = [&](uint32_t x) {
        detail::FpPoly c(n);
        for (uint32_t j = 0; j < n; ++j) {
            c[j] = x % p;
            x /= p;
        }
        detail::fp_trim(c);
        return c;
    };
    auto pack = [&](const detail::FpPoly &c) {
        uint32_t x = 0;
        for (size_t j = c.size(); j-- > 0;)
            x = x * p + c[j];
        return x;
    };
    auto raw_mul = [&](uint32_t a, uint32_t b) {
        return pack(detail::fp_mul_mod(unpack(a), unpack(b), d->modulus, p));
    };
    auto raw_pow = [&](uint32_t a, uint64_t e) {
        uint32_t r = 1;
        while (e) {
            if (e & 1)
                r = raw_mul(r, a);
            a = raw_mul(a, a);
            e >>= 1;
        }
        return r;
    };

    // canonical generator: least element in coordinate order with full order
    auto factors = detail::prime_factors_u64(q - 1);
    std::vector<uint32_t> order;
    order.reserve(q);
    for (uint32_t x = 1; x < q; ++x)
        order.push_back(x);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        uint32_t pa = a, pb = b;
        for (uint32_t j = 0; j < n; ++j) {
            uint32_t da = pa % p, db = pb % p;
            if (da != db)
                return da < db;
            pa /= p;
            pb /= p;
        }
        return false;
    });
    uint32_t gen = 0;
    for (uint32_t cand : order) {
        bool primitive = true;
        for (uint32_t f : factors)
            if (raw_pow(cand, (q - 1) / f) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            gen = cand;
            break;
        }
    }
    check(gen != 0, "no multiplicative generator found");
    d->gen = gen;

    d->exp.assign(q - 1, 0);
    d->log.assign(q, 0);
    uint32_t cur = 1;
    for (uint32_t i = 0; i < q - 1; ++i) {
        d->exp[i] = cur;
        d->log[cur] = i;
        cur = raw_mul(cur, gen);
    }
    check(cur == 1, "generator order mismatch");

    d->frob.assign(q, 0);
    for (uint32_t x = 0; x < q; ++x)
        d->frob[x] = raw_pow(x, p);

    return Field(std::move(d));
}

// make_field: the canonical construction entry point.
inline Field make_field(uint32_t p, uint32_t n,
                        uint32_t size_cap = Field::kDefaultCap)
{
    return Field::make(p, n, size_cap);
}

// Least primitive element, by coordinate order.  (Same value the tables are
// built from.)
inline uint32_t multiplicative_generator(const Field &f)
{
    require(f.q() >= 3, "field too small for a nontrivial generator");
    return f.generator();
}

// Embedding of F_{p^n} into F_{p^m} for n | m, fixed by sending the source
// power-basis root to the least root (coordinate order) of the source
// modulus in the target field.  Precomputed as a full table.
class Embedding {
  public:
    Embedding() = default;

    static Embedding make(const Field &src, const Field &dst)
    {
        require(src.p() == dst.p(), "embedding requires equal characteristic");
        require(dst.degree() % src.degree() == 0,
                "no embedding: source degree does not divide target degree");
        Embedding e;
        e.src_ = src;
        e.dst_ = dst;
        if (src.degree() == dst.degree()) {
            // same canonical field: the identity
            check(src.modulus() == dst.modulus(), "field model mismatch");
            e.map_.resize(src.q());
            e.inverse_.resize(src.q());
            for (uint32_t x = 0; x < src.q(); ++x) {
                e.map_[x] = x;
                e.inverse_[x] = x;
            }
            e.root_ = src.degree() > 1 ? dst.from_coords({0, 1}) : 0;
            return e;
        }
        // find least root of the source modulus in dst
        uint32_t best = 0;
        bool found = false;
        const auto &mod = src.modulus();
        for (uint32_t x = 0; x < dst.q(); ++x) {
            uint32_t acc = 0;
            for (size_t j = mod.size(); j-- > 0;)
                acc = dst.add(dst.mul(acc, x), mod[j] % dst.p());
            if (acc == 0) {
                if (!found || dst.coord_less(x, best)) {
                    best = x;
                    found = true;
                }
            }
        }
        check(found || src.degree() == 1,
              "source modulus has no root in target field");
        e.root_ = src.degree() == 1 ? 0 : best;

        e.map_.assign(src.q(), 0);
        for (uint32_t x = 0; x < src.q(); ++x) {
            uint32_t acc = 0;
            uint32_t rp = 1;
            uint32_t rem = x;
            for (uint32_t j = 0; j < src.degree(); ++j) {
                uint32_t digit = rem % src.p();
                rem /= src.p();
                acc = dst.add(acc, dst.mul(digit, rp));
                rp = dst.mul(rp, e.root_);
            }
            e.map_[x] = acc;
        }
        e.inverse_.assign(dst.q(), kNone);
        for (uint32_t x = 0; x < src.q(); ++x)
            e.inverse_[e.map_[x]] = x;
        return e;
    }

    const Field &src() const { return src_; }
    const Field &dst() const { return dst_; }

    uint32_t operator()(uint32_t x) const { return map_[x]; }

    bool in_image(uint32_t y) const { return inverse_[y] != kNone; }

    uint32_t pullback(uint32_t y) const
    {
        check(in_image(y), "element not in embedded subfield");
        return inverse_[y];
    }

  private:
    static constexpr uint32_t kNone = 0xffffffffu;
    Field src_, dst_;
    uint32_t root_ = 0;
    std::vector<uint32_t> map_, inverse_;
};

// F_{q^2} viewed over F_q: the extension field together with the embedding
// and the conjugation x -> x^q.
class QuadExt {
  public:
    static QuadExt make(const Field &base,
                        uint32_t size_cap = Field::kDefaultCap)
    {
        QuadExt qe;
        qe.base_ = base;
        qe.ext_ = make_field(base.p(), 2 * base.degree(), size_cap);
        qe.emb_ = Embedding::make(base, qe.ext_);
        qe.conj_.assign(qe.ext_.q(), 0);
        for (uint32_t x = 0; x < qe.ext_.q(); ++x) {
            uint32_t y = x;
            for (uint32_t i = 0; i < base.degree(); ++i)
                y = qe.ext_.frobenius(y);
            qe.conj_[x] = y;
        }
        return qe;
    }

    const Field &base() const { return base_; }
    const Field &ext() const { return ext_; }
    const Embedding &embedding() const { return emb_; }

    uint32_t embed(uint32_t x) const { return emb_(x); }
    uint32_t conj(uint32_t x) const { return conj_[x]; }
    bool in_base(uint32_t x) const { return emb_.in_image(x); }

    // norm lands in the embedded F_q; returned as a base-field element
    uint32_t norm(uint32_t x) const
    {
        uint32_t n = ext_.mul(x, conj_[x]);
        return emb_.pullback(n);
    }

    uint32_t trace(uint32_t x) const
    {
        uint32_t t = ext_.add(x, conj_[x]);
        return emb_.pullback(t);
    }

  private:
    Field base_, ext_;
    Embedding emb_;
    std::vector<uint32_t> conj_;
};

// norm and conjugate in one call; conj = x^q, norm = x * conj(x) in F_q.
inline std::pair<uint32_t, uint32_t> norm_conj(const QuadExt &qe, uint32_t x)
{
    return {qe.norm(x), qe.conj(x)};
}

// quadratic character of a field element: +1 square, -1 non-square, 0 at zero
inline int chi(const Field &F, uint32_t u)
{
    if (u == 0)
        return 0;
    return F.is_square(u) ? 1 : -1;
}

} // namespace ffclass
