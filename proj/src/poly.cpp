#include "fastcrc/poly.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace fastcrc {

void Poly::trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

Poly Poly::from_u64(u64 bits) {
    Poly p;
    if (bits) p.words_.push_back(bits);
    return p;
}

Poly Poly::x_pow(u64 e) {
    Poly p;
    p.set_bit(e);
    return p;
}

Poly Poly::from_words(std::vector<u64> w) {
    Poly p;
    p.words_ = std::move(w);
    p.trim();
    return p;
}

Poly Poly::from_u128(u128 bits) {
    Poly p;
    p.words_.push_back(static_cast<u64>(bits));
    p.words_.push_back(static_cast<u64>(bits >> 64));
    p.trim();
    return p;
}

u128 Poly::to_u128() const {
    u128 v = 0;
    if (words_.size() > 2) throw std::invalid_argument("degree exceeds 128-bit fast path");
    if (words_.size() > 1) v = static_cast<u128>(words_[1]) << 64;
    if (!words_.empty()) v |= words_[0];
    return v;
}

long long Poly::degree() const {
    if (words_.empty()) return -1;
    return static_cast<long long>(words_.size() - 1) * 64 + (63 - std::countl_zero(words_.back()));
}

u64 Poly::weight() const {
    u64 w = 0;
    for (u64 word : words_) w += static_cast<u64>(std::popcount(word));
    return w;
}

bool Poly::bit(u64 i) const {
    u64 j = i / 64;
    if (j >= words_.size()) return false;
    return (words_[j] >> (i % 64)) & 1;
}

void Poly::set_bit(u64 i) {
    u64 j = i / 64;
    if (j >= words_.size()) words_.resize(j + 1, 0);
    words_[j] |= u64{1} << (i % 64);
}

void Poly::flip_bit(u64 i) {
    u64 j = i / 64;
    if (j >= words_.size()) words_.resize(j + 1, 0);
    words_[j] ^= u64{1} << (i % 64);
    trim();
}

bool Poly::operator<(const Poly& o) const {
    if (words_.size() != o.words_.size()) return words_.size() < o.words_.size();
    for (size_t j = words_.size(); j-- > 0;)
        if (words_[j] != o.words_[j]) return words_[j] < o.words_[j];
    return false;
}

Poly& Poly::operator^=(const Poly& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (size_t j = 0; j < o.words_.size(); ++j) words_[j] ^= o.words_[j];
    trim();
    return *this;
}

Poly Poly::operator<<(u64 n) const {
    if (is_zero()) return {};
    Poly r;
    u64 wshift = n / 64, bshift = n % 64;
    r.words_.assign(words_.size() + wshift + 1, 0);
    for (size_t j = 0; j < words_.size(); ++j) {
        r.words_[j + wshift] ^= words_[j] << bshift;
        if (bshift) r.words_[j + wshift + 1] ^= words_[j] >> (64 - bshift);
    }
    r.trim();
    return r;
}

std::optional<Poly> Poly::parse_hex(std::string_view s) {
    if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) return std::nullopt;
    Poly p;
    s.remove_prefix(2);
    u64 nbits = 0;
    // accumulate from the least-significant digit
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[s.size() - 1 - i];
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else return std::nullopt;
        for (int b = 0; b < 4; ++b)
            if (v >> b & 1) p.set_bit(nbits + b);
        nbits += 4;
    }
    return p;
}

std::string Poly::to_hex() const {
    if (is_zero()) return "0x0";
    static const char* digits = "0123456789abcdef";
    std::string out;
    long long top = degree() / 4;
    for (long long nib = top; nib >= 0; --nib) {
        int v = 0;
        for (int b = 0; b < 4; ++b)
            if (bit(static_cast<u64>(nib) * 4 + b)) v |= 1 << b;
        out.push_back(digits[v]);
    }
    return "0x" + out;
}

namespace bits {

int degree_u128(u128 v) {
    u64 hi = static_cast<u64>(v >> 64);
    if (hi) return 127 - std::countl_zero(hi);
    u64 lo = static_cast<u64>(v);
    if (lo) return 63 - std::countl_zero(lo);
    return -1;
}

u128 clmul(u64 a, u64 b) {
    u128 r = 0;
    u128 aa = a;
    while (b) {
        int t = std::countr_zero(b);
        r ^= aa << t;
        b &= b - 1;
    }
    return r;
}

u64 reduce_u128(u128 v, int h, u64 low) {
    u128 m = (static_cast<u128>(1) << h) | low;
    for (int i = degree_u128(v); i >= h; --i)
        if ((v >> i) & 1) v ^= m << (i - h);
    return static_cast<u64>(v);
}

u64 mulmod(u64 a, u64 b, int h, u64 low) {
    return reduce_u128(clmul(a, b), h, low);
}

u64 xpow_mod(u64 e, int h, u64 low) {
    // square-and-multiply on the exponent bits of X^e
    u64 result = 1, base = h > 1 ? 2 : reduce_u128(2, h, low);
    while (e) {
        if (e & 1) result = mulmod(result, base, h, low);
        base = mulmod(base, base, h, low);
        e >>= 1;
    }
    return result;
}

}  // namespace bits

namespace {

// Splits a degree<=64 modulus into (h, low) for the word kernels. For
// degree exactly 64 the leading bit lives in word 1, so low64 is already H.
void word_modulus(const Poly& m, int& h, u64& low) {
    h = static_cast<int>(m.degree());
    low = m.low64();
    if (h < 64) low ^= u64{1} << h;
}

}  // namespace

Poly mod_reduce(const Poly& a, const Poly& m) {
    if (m.is_zero()) throw std::invalid_argument("mod_reduce: zero modulus");
    long long dm = m.degree();
    long long da = a.degree();
    if (da < dm) return a;
    if (da < 128 && dm <= 64) {
        int h = 0;
        u64 low = 0;
        word_modulus(m, h, low);
        return Poly::from_u64(bits::reduce_u128(a.to_u128(), h, low));
    }
    std::vector<u64> rw = a.words();
    const std::vector<u64>& mw = m.words();
    for (long long i = da; i >= dm; --i) {
        if ((rw[static_cast<size_t>(i) / 64] >> (i % 64)) & 1) {
            long long sh = i - dm;
            size_t ws = static_cast<size_t>(sh) / 64;
            int bs = static_cast<int>(sh % 64);
            for (size_t j = 0; j < mw.size(); ++j) {
                rw[ws + j] ^= mw[j] << bs;
                if (bs) {
                    u64 carry = mw[j] >> (64 - bs);
                    if (carry) rw[ws + j + 1] ^= carry;
                }
            }
        }
    }
    return Poly::from_words(std::move(rw));
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly r;
    const auto& bw = b.words();
    for (size_t j = 0; j < bw.size(); ++j) {
        u64 word = bw[j];
        while (word) {
            int t = std::countr_zero(word);
            r ^= a << (j * 64 + static_cast<u64>(t));
            word &= word - 1;
        }
    }
    return r;
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& m) {
    if (m.is_zero()) throw std::invalid_argument("mul_mod: zero modulus");
    long long dm = m.degree();
    if (dm <= 64 && a.degree() < 64 && b.degree() < 64) {
        int h = 0;
        u64 low = 0;
        word_modulus(m, h, low);
        u64 ar = a.degree() < dm ? a.low64() : bits::reduce_u128(a.to_u128(), h, low);
        u64 br = b.degree() < dm ? b.low64() : bits::reduce_u128(b.to_u128(), h, low);
        return Poly::from_u64(bits::mulmod(ar, br, h, low));
    }
    return mod_reduce(mul(mod_reduce(a, m), mod_reduce(b, m)), m);
}

Poly shift_mod(const Poly& a, u64 j, const Poly& m) {
    if (m.is_zero()) throw std::invalid_argument("shift_mod: zero modulus");
    Poly r = mod_reduce(a, m);
    long long dm = m.degree();
    if (dm <= 64) {
        int h = 0;
        u64 low = 0;
        word_modulus(m, h, low);
        u64 v = r.low64();
        if (j <= 4096) {
            for (u64 i = 0; i < j; ++i) v = bits::step(v, h, low);
        } else {
            v = bits::mulmod(v, bits::xpow_mod(j, h, low), h, low);
        }
        return Poly::from_u64(v);
    }
    if (j <= 1u << 20) {
        for (u64 i = 0; i < j; ++i) {
            r = r << 1;
            if (r.degree() == dm) r ^= m;
        }
        return r;
    }
    // square-and-multiply for huge shifts on wide moduli
    Poly base = mod_reduce(Poly::x_pow(1), m), acc = Poly::one();
    while (j) {
        if (j & 1) acc = mul_mod(acc, base, m);
        base = mul_mod(base, base, m);
        j >>= 1;
    }
    return mul_mod(r, acc, m);
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& d) {
    if (d.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
    Poly r = a, q;
    long long dd = d.degree();
    while (r.degree() >= dd) {
        u64 shift = static_cast<u64>(r.degree() - dd);
        q.set_bit(shift);
        r ^= d << shift;
    }
    if (!r.is_zero()) return std::nullopt;
    return q;
}

PeriodResult period(const Poly& g, u64 cap) {
    long long dg = g.degree();
    if (dg < 1) throw std::invalid_argument("period: degree must be >= 1");
    if (!g.bit(0)) return {PeriodResult::Kind::no_period, 0};
    if (dg <= 64) {
        int h = 0;
        u64 low = 0;
        word_modulus(g, h, low);
        u64 r = h == 1 ? bits::step(1, h, low) : 2;  // r = X mod g after t=1
        if (r == 1) return {PeriodResult::Kind::found, 1};
        for (u64 t = 2; t <= cap; ++t) {
            r = bits::step(r, h, low);
            if (r == 1) return {PeriodResult::Kind::found, t};
        }
        return {PeriodResult::Kind::cap_exceeded, 0};
    }
    Poly r = mod_reduce(Poly::x_pow(1), g);
    for (u64 t = 1; t <= cap; ++t) {
        if (r == Poly::one()) return {PeriodResult::Kind::found, t};
        r = r << 1;
        if (r.degree() == dg) r ^= g;
    }
    return {PeriodResult::Kind::cap_exceeded, 0};
}

namespace {

u64 mulmod_u64(u64 a, u64 b, u64 n) {
    return static_cast<u64>(static_cast<u128>(a) * b % n);
}

u64 powmod_u64(u64 a, u64 e, u64 n) {
    u64 r = 1;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, n);
        a = mulmod_u64(a, a, n);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % p == 0) return n == p;
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    // deterministic Miller-Rabin bases for 64-bit inputs
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        u64 x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1; c <= 64; ++c) {
        auto f = [&](u64 x) {
            u64 v = mulmod_u64(x, x, n) + c;
            return v >= n ? v - n : v;
        };
        u64 x = 2, y = 2, d = 1, steps = 0;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
            if (++steps > (u64{1} << 26)) { d = n; break; }
        }
        if (d != n) return d;
    }
    throw std::runtime_error("factorize: cap exceeded");
}

void factor_rec(u64 n, std::vector<u64>& out);

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<u64> factorize(u64 n, u64 trial_bound) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= n && p <= trial_bound; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    if (n > 1) factor_rec(n, out);
    std::sort(out.begin(), out.end());
    return out;
}

bool verify_period(const Poly& g, u64 t) {
    if (g.degree() < 1 || !g.bit(0)) throw std::invalid_argument("verify_period: need g(0) = 1");
    if (t == 0) throw std::invalid_argument("verify_period: t must be >= 1");
    long long dg = g.degree();
    auto xpow = [&](u64 e) -> bool /* == 1 */ {
        if (dg <= 64) {
            int h = 0;
            u64 low = 0;
            word_modulus(g, h, low);
            return bits::xpow_mod(e, h, low) == 1;
        }
        Poly base = mod_reduce(Poly::x_pow(1), g), acc = Poly::one();
        while (e) {
            if (e & 1) acc = mul_mod(acc, base, g);
            base = mul_mod(base, base, g);
            e >>= 1;
        }
        return acc == Poly::one();
    };
    if (!xpow(t)) return false;
    std::vector<u64> primes = factorize(t);
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (u64 p : primes)
        if (xpow(t / p)) return false;
    return true;
}

bool is_primitive(const Poly& g) {
    long long h = g.degree();
    if (h < 1) throw std::invalid_argument("is_primitive: degree must be >= 1");
    if (h > 64) throw std::runtime_error("is_primitive: cap exceeded for degree > 64");
    if (!g.bit(0)) return false;
    u64 t = h == 64 ? ~u64{0} : (u64{1} << h) - 1;
    if (t <= default_period_cap) {
        PeriodResult r = period(g);
        return r.found() && r.value == t;
    }
    return verify_period(g, t);
}

Poly fast_poly(int h) { return poly_from_exponents({static_cast<u64>(h), 2, 1, 0}); }

Poly trinomial(int h) { return poly_from_exponents({static_cast<u64>(h), 1, 0}); }

Poly poly_from_exponents(std::initializer_list<u64> exps) {
    Poly p;
    for (u64 e : exps) p.set_bit(e);
    return p;
}

}  // namespace fastcrc
