#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ffclass {

// Thrown when exhaustive searches (delta scan, binomial scan, ...) run out of
// candidates.  The CLI maps this to its own exit code.
struct search_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal consistency failure: an invariant that must hold for valid inputs
// was violated.  Distinct from std::invalid_argument (caller error).
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string &msg)
{
    if (!cond)
        throw std::invalid_argument(msg);
}

inline void check(bool cond, const std::string &msg)
{
    if (!cond)
        throw internal_error(msg);
}

// Counter-based deterministic generator (splitmix64).  Used for the
// equal-degree splitting step of factorization and for test data; the seed is
// recorded in report headers so runs reproduce exactly.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next()
    {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound > 0, by rejection
    uint64_t below(uint64_t bound)
    {
        uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

  private:
    uint64_t state_;
};

// Exact i64 arithmetic with overflow checks; class numbers and L-coefficients
// stay far below these bounds at supported field sizes.
inline int64_t checked_mul(int64_t a, int64_t b)
{
    __int128 r = static_cast<__int128>(a) * b;
    check(r <= std::numeric_limits<int64_t>::max() &&
              r >= std::numeric_limits<int64_t>::min(),
          "integer overflow in checked_mul");
    return static_cast<int64_t>(r);
}

inline int64_t checked_add(int64_t a, int64_t b)
{
    __int128 r = static_cast<__int128>(a) + b;
    check(r <= std::numeric_limits<int64_t>::max() &&
              r >= std::numeric_limits<int64_t>::min(),
          "integer overflow in checked_add");
    return static_cast<int64_t>(r);
}

inline int64_t ipow_checked(int64_t base, unsigned exp)
{
    int64_t r = 1;
    for (unsigned i = 0; i < exp; ++i)
        r = checked_mul(r, base);
    return r;
}

} // namespace ffclass
