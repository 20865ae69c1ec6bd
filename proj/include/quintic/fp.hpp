#pragma once

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "arith.hpp"

namespace quintic {

// Element of the prime field F_p. Carries its modulus so that values are
// self-contained; all operands of a binary operation must agree on p.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {
        if (p < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
    }
    static Fp from_signed(std::int64_t value, std::uint64_t p) {
        std::int64_t m = static_cast<std::int64_t>(p);
        std::int64_t r = value % m;
        if (r < 0) r += m;
        return Fp(static_cast<std::uint64_t>(r), p);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }

    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }
    Fp from_int(std::int64_t n) const { return from_signed(n, p_); }

    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return v_ != 0; }

    Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }
    Fp operator+(const Fp& o) const { check(o); return Fp(addmod_u64(v_, o.v_, p_), p_); }
    Fp operator-(const Fp& o) const { check(o); return Fp(submod_u64(v_, o.v_, p_), p_); }
    Fp operator*(const Fp& o) const { check(o); return Fp(mulmod_u64(v_, o.v_, p_), p_); }
    Fp inv() const {
        if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
        return Fp(invmod_u64(v_, p_), p_);
    }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    Fp pow(std::uint64_t e) const { return Fp(powmod_u64(v_, e, p_), p_); }

    bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw std::domain_error("Fp: mixed moduli");
    }
    std::uint64_t v_;
    std::uint64_t p_;
};

// Legendre symbol (a/p) for odd prime p: 0, 1 or -1.
inline int legendre(const Fp& a) {
    if (a.is_zero()) return 0;
    std::uint64_t p = a.modulus();
    std::uint64_t r = powmod_u64(a.value(), (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

// Square root in F_p (p odd prime) by Tonelli-Shanks. Throws if a is a
// non-residue.
inline Fp fp_sqrt(const Fp& a) {
    std::uint64_t p = a.modulus();
    if (p == 2) return a;
    if (a.is_zero()) return a;
    if (legendre(a) != 1) throw std::domain_error("fp_sqrt: non-residue");
    if (p % 4 == 3) return a.pow((p + 1) / 4);
    // Write p-1 = q * 2^s with q odd.
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    // Find a non-residue z.
    std::uint64_t z = 2;
    while (legendre(Fp(z, p)) != -1) ++z;
    Fp c = Fp(z, p).pow(q);
    Fp x = a.pow((q + 1) / 2);
    Fp t = a.pow(q);
    unsigned m = s;
    while (!(t == t.one())) {
        Fp tt = t;
        unsigned i = 0;
        while (!(tt == tt.one())) { tt = tt * tt; ++i; }
        Fp b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b;
        x = x * b;
        c = b * b;
        t = t * c;
        m = i;
    }
    return x;
}

// Element of F_{p^k}, k >= 1, with a fixed deterministic modulus polynomial.
// Coordinates are over F_p relative to the power basis 1, x, ..., x^{k-1}.
// Only small k is ever used (k <= 2 in the pipeline; k = 3 in some tests).
class Fq {
public:
    Fq() : p_(0), k_(0) {}
    Fq(std::uint64_t p, unsigned k) : p_(p), k_(k), c_(k, 0) {
        if (k == 0) throw std::invalid_argument("Fq: degree must be >= 1");
        mod_ = modulus_poly(p, k);
    }
    Fq(std::uint64_t p, unsigned k, std::vector<std::uint64_t> coords) : Fq(p, k) {
        for (unsigned i = 0; i < k && i < coords.size(); ++i) c_[i] = coords[i] % p;
    }
    static Fq embed(const Fp& a, unsigned k) {
        Fq r(a.modulus(), k);
        r.c_[0] = a.value();
        return r;
    }

    std::uint64_t p() const { return p_; }
    unsigned degree() const { return k_; }
    const std::vector<std::uint64_t>& coords() const { return c_; }

    Fq zero() const { Fq r(p_, k_); return r; }
    Fq one() const { Fq r(p_, k_); r.c_[0] = 1; return r; }
    Fq from_int(std::int64_t n) const {
        std::int64_t m = static_cast<std::int64_t>(p_);
        std::int64_t v = n % m;
        if (v < 0) v += m;
        Fq r(p_, k_);
        r.c_[0] = static_cast<std::uint64_t>(v);
        return r;
    }
    Fq gen() const {  // the class of x
        Fq r(p_, k_);
        if (k_ == 1) throw std::domain_error("Fq: prime field has no generator coordinate");
        r.c_[1] = 1;
        return r;
    }

    bool is_zero() const {
        for (auto c : c_) if (c) return false;
        return true;
    }
    bool is_unit() const { return !is_zero(); }

    Fq operator-() const {
        Fq r(*this);
        for (auto& c : r.c_) c = c ? p_ - c : 0;
        return r;
    }
    Fq operator+(const Fq& o) const {
        check(o);
        Fq r(*this);
        for (unsigned i = 0; i < k_; ++i) r.c_[i] = addmod_u64(r.c_[i], o.c_[i], p_);
        return r;
    }
    Fq operator-(const Fq& o) const { return *this + (-o); }
    Fq operator*(const Fq& o) const {
        check(o);
        std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
        for (unsigned i = 0; i < k_; ++i) {
            if (!c_[i]) continue;
            for (unsigned j = 0; j < k_; ++j)
                prod[i + j] = addmod_u64(prod[i + j], mulmod_u64(c_[i], o.c_[j], p_), p_);
        }
        // Reduce modulo the monic modulus polynomial.
        for (unsigned d = 2 * k_ - 2; d >= k_; --d) {
            std::uint64_t lead = prod[d];
            if (lead) {
                prod[d] = 0;
                for (unsigned i = 0; i < k_; ++i)
                    prod[d - k_ + i] =
                        submod_u64(prod[d - k_ + i], mulmod_u64(lead, mod_[i], p_), p_);
            }
            if (d == k_) break;
        }
        Fq r(p_, k_);
        for (unsigned i = 0; i < k_; ++i) r.c_[i] = prod[i];
        return r;
    }
    Fq& operator+=(const Fq& o) { return *this = *this + o; }
    Fq& operator-=(const Fq& o) { return *this = *this - o; }
    Fq& operator*=(const Fq& o) { return *this = *this * o; }

    Fq pow(Int e) const {
        if (e < 0) return inv().pow(-e);
        Fq r = one(), b = *this;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    Fq inv() const {
        if (is_zero()) throw std::domain_error("Fq: inverse of zero");
        Int q = int_pow(p_, k_);
        return pow(q - 2);
    }
    Fq operator/(const Fq& o) const { return *this * o.inv(); }

    bool operator==(const Fq& o) const { return p_ == o.p_ && k_ == o.k_ && c_ == o.c_; }
    bool operator!=(const Fq& o) const { return !(*this == o); }

    // x -> x^p, the arithmetic Frobenius.
    Fq frobenius() const { return pow(Int(static_cast<unsigned long>(p_))); }

    friend std::ostream& operator<<(std::ostream& os, const Fq& a) {
        os << "[";
        for (unsigned i = 0; i < a.k_; ++i) os << (i ? "," : "") << a.c_[i];
        return os << "]";
    }

    // Deterministic irreducible monic modulus of degree k over F_p; returns
    // the non-leading coefficients m_0..m_{k-1} of x^k + m_{k-1}x^{k-1} + ... + m_0.
    static std::vector<std::uint64_t> modulus_poly(std::uint64_t p, unsigned k) {
        if (k == 1) return {0};
        if (k == 2) {
            // x^2 - r with r the least quadratic non-residue.
            for (std::uint64_t r = 2; r < p; ++r)
                if (legendre(Fp(r, p)) == -1) return {p - r, 0};
            throw std::domain_error("Fq: no non-residue found (p = 2?)");
        }
        if (k == 3) {
            // Least (b, a) such that x^3 + a x + b has no root in F_p.
            for (std::uint64_t b = 1; b < p; ++b)
                for (std::uint64_t a = 0; a < p; ++a) {
                    bool has_root = false;
                    for (std::uint64_t x = 0; x < p && !has_root; ++x) {
                        std::uint64_t y = addmod_u64(
                            addmod_u64(powmod_u64(x, 3, p), mulmod_u64(a, x, p), p), b, p);
                        if (y == 0) has_root = true;
                    }
                    if (!has_root) return {b, a, 0};
                }
            throw std::domain_error("Fq: no irreducible cubic found");
        }
        throw std::domain_error("Fq: extension degree not supported");
    }

private:
    void check(const Fq& o) const {
        if (p_ != o.p_ || k_ != o.k_) throw std::domain_error("Fq: mixed fields");
    }
    std::uint64_t p_;
    unsigned k_;
    std::vector<std::uint64_t> c_;
    std::vector<std::uint64_t> mod_;
};

// Quadratic character of F_q, q = p^k: 1 for nonzero squares, -1 otherwise.
inline int fq_chi(const Fq& a) {
    if (a.is_zero()) return 0;
    Int q = int_pow(a.p(), a.degree());
    Fq r = a.pow((q - 1) / 2);
    return r == a.one() ? 1 : -1;
}

}  // namespace quintic
