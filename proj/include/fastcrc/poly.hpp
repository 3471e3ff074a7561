#ifndef FASTCRC_POLY_HPP
#define FASTCRC_POLY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fastcrc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// A polynomial over GF(2). Bit i of the coefficient vector is the
/// coefficient of X^i, so X^16+X^2+X+1 parses and prints as 0x10007.
class Poly {
  public:
    Poly() = default;

    static Poly zero() { return Poly{}; }
    static Poly one() { return from_u64(1); }
    static Poly x_pow(u64 e);
    static Poly from_u64(u64 bits);
    static Poly from_words(std::vector<u64> w);

    /// Parses "0x..." (case-insensitive digits); nullopt on malformed input.
    static std::optional<Poly> parse_hex(std::string_view s);
    /// Canonical lowercase hex, "0x0" for the zero polynomial.
    std::string to_hex() const;

    bool is_zero() const { return words_.empty(); }
    /// Highest set exponent; -1 for the zero polynomial.
    long long degree() const;
    u64 weight() const;
    bool bit(u64 i) const;
    void set_bit(u64 i);
    void flip_bit(u64 i);

    /// Low 64 coefficient bits.
    u64 low64() const { return words_.empty() ? 0 : words_[0]; }
    /// Whole value as 128 coefficient bits; degree must be < 128.
    u128 to_u128() const;
    static Poly from_u128(u128 bits);

    bool operator==(const Poly& o) const { return words_ == o.words_; }
    bool operator!=(const Poly& o) const { return words_ != o.words_; }
    /// Order by integer encoding of the coefficient bits.
    bool operator<(const Poly& o) const;

    Poly& operator^=(const Poly& o);
    friend Poly operator^(Poly a, const Poly& b) { a ^= b; return a; }
    Poly operator<<(u64 n) const;

    const std::vector<u64>& words() const { return words_; }

  private:
    std::vector<u64> words_;  // words_[j] bit i = coefficient of X^(64j+i)
    void trim();
};

/// R_m[a]: remainder of a divided by m. Throws std::invalid_argument on zero m.
Poly mod_reduce(const Poly& a, const Poly& m);

/// Carry-less product a*b.
Poly mul(const Poly& a, const Poly& b);

/// R_m[a*b]. Preconditions: m nonzero.
Poly mul_mod(const Poly& a, const Poly& b, const Poly& m);

/// R_m[a*X^j], equal to j single-bit shift steps.
Poly shift_mod(const Poly& a, u64 j, const Poly& m);

/// Quotient k with k*d == a, or nullopt when d does not divide a.
/// Throws std::invalid_argument on zero d.
std::optional<Poly> divide_exact(const Poly& a, const Poly& d);

inline constexpr u64 default_period_cap = u64{1} << 26;

struct PeriodResult {
    enum class Kind { found, no_period, cap_exceeded };
    Kind kind = Kind::no_period;
    u64 value = 0;  // valid when kind == found

    bool found() const { return kind == Kind::found; }
};

/// Smallest t >= 1 with X^t = 1 (mod g). Polynomials divisible by X have no
/// period; iteration stops at cap. Throws std::invalid_argument for degree < 1.
PeriodResult period(const Poly& g, u64 cap = default_period_cap);

/// True iff t is exactly the multiplicative order of X modulo g, checked via
/// X^t = 1 and X^(t/p) != 1 for every prime p | t (square-and-multiply).
/// Preconditions: g(0) = 1, t >= 1.
bool verify_period(const Poly& g, u64 t);

/// True iff the order of X modulo g is 2^degree(g) - 1. Degrees above 64
/// are out of range for the order bound and throw cap-exceeded.
bool is_primitive(const Poly& g);

/// X^h + X^2 + X + 1.
Poly fast_poly(int h);
/// X^h + X + 1.
Poly trinomial(int h);
/// Generator from a set of exponents.
Poly poly_from_exponents(std::initializer_list<u64> exps);

// 64/128-bit kernels shared by the hot paths (moduli of degree <= 64 keep
// remainders in one word; products use the double word).
namespace bits {

int degree_u128(u128 v);

/// Carry-less 64x64 -> 128 multiply.
u128 clmul(u64 a, u64 b);

/// Long division of v by the degree-h modulus X^h + low (low = modulus
/// without its leading term, h <= 64).
u64 reduce_u128(u128 v, int h, u64 low);

/// One X-multiply step modulo X^h + low; r has degree < h.
inline u64 step(u64 r, int h, u64 low) {
    u64 top = (r >> (h - 1)) & 1;
    r <<= 1;
    if (h < 64) r &= (u64{1} << h) - 1;
    return top ? r ^ low : r;
}

u64 mulmod(u64 a, u64 b, int h, u64 low);
u64 xpow_mod(u64 e, int h, u64 low);

}  // namespace bits

/// Factors n into primes: trial division up to trial_bound, then rho.
std::vector<u64> factorize(u64 n, u64 trial_bound = 1000000);

}  // namespace fastcrc

#endif
