#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace quintic {

using Int = mpz_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int int_pow(std::uint64_t base, unsigned long e) {
    Int b(static_cast<unsigned long>(base));
    return int_pow(b, e);
}

// Nonnegative remainder, 0 <= r < |m|.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool fits_u64(const Int& a) {
    return a >= 0 && mpz_sizeinbase(a.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Int& a) {
    if (!fits_u64(a)) throw std::overflow_error("to_u64: value out of range");
    // unsigned long is 64-bit on this platform, but stay defensive.
    if (sizeof(unsigned long) == 8) return mpz_get_ui(a.get_mpz_t());
    Int hi = a >> 32;
    Int lo = a - (hi << 32);
    return (static_cast<std::uint64_t>(mpz_get_ui(hi.get_mpz_t())) << 32) |
           mpz_get_ui(lo.get_mpz_t());
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t addmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline std::uint64_t submod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Inverse of a mod m (m need not be prime; throws if gcd(a,m) != 1).
inline std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt; newt = tmp;
        tmp = r - q * newr;
        r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("invmod_u64: element not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

// Barrett reduction context for a fixed modulus p < 2^63.
// Reduces any x < p^2 (and more generally x < 2^64 when p < 2^32).
struct Barrett {
    std::uint64_t p = 1;
    std::uint64_t magic = 0;  // floor(2^64 / p)

    Barrett() = default;
    explicit Barrett(std::uint64_t mod) : p(mod) {
        if (mod < 2) throw std::invalid_argument("Barrett: modulus must be >= 2");
        magic = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / mod);
    }

    std::uint64_t reduce(std::uint64_t x) const {
        std::uint64_t q = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * magic) >> 64);
        std::uint64_t r = x - q * p;
        if (r >= p) r -= p;
        if (r >= p) r -= p;
        return r;
    }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }

    // a + c*b mod p for a, b < p, c < p; valid for p < 2^31.
    std::uint64_t axpy(std::uint64_t a, std::uint64_t c, std::uint64_t b) const {
        return reduce(a + c * b);
    }
};

inline int valuation_u64(std::uint64_t& n, std::uint64_t p) {
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// FNV-1a over a byte string; used for config hashes in reports.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace quintic
