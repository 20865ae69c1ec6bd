#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "arith.hpp"
#include "fp.hpp"

namespace quintic {

struct PrecisionLoss : std::runtime_error {
    int valuation_bound;
    explicit PrecisionLoss(const std::string& what, int vbound)
        : std::runtime_error(what), valuation_bound(vbound) {}
};

// Element of Z/p^N regarded as an approximation of an element of Z_p to
// absolute precision N (zealous arithmetic). p is odd everywhere in this
// toolkit; p = 2 is rejected at construction.
class PadicNum {
public:
    PadicNum() : p_(0), N_(0), r_(0) {}
    PadicNum(std::uint64_t p, int N, const Int& residue) : p_(p), N_(N) {
        if (p < 3 || p % 2 == 0) throw std::invalid_argument("PadicNum: p must be an odd prime");
        if (N < 1) throw std::invalid_argument("PadicNum: precision must be >= 1");
        pN_ = int_pow(p, static_cast<unsigned long>(N));
        r_ = mod_floor(residue, pN_);
    }
    PadicNum(std::uint64_t p, int N, std::int64_t residue)
        : PadicNum(p, N, Int(static_cast<long>(residue))) {}

    std::uint64_t prime() const { return p_; }
    int precision() const { return N_; }
    const Int& residue() const { return r_; }
    const Int& modulus() const { return pN_; }

    PadicNum zero() const { return PadicNum(p_, N_, Int(0)); }
    PadicNum one() const { return PadicNum(p_, N_, Int(1)); }
    PadicNum from_int(std::int64_t n) const { return PadicNum(p_, N_, Int(static_cast<long>(n))); }

    bool is_zero() const { return r_ == 0; }
    // Valuation of the residue, capped at N (residue 0 means valuation >= N).
    int valuation() const {
        if (r_ == 0) return N_;
        Int t = r_;
        int v = 0;
        while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p_))) {
            mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p_));
            ++v;
        }
        return v;
    }
    bool valuation_known() const { return r_ != 0; }
    bool is_unit() const {
        return r_ != 0 && !mpz_divisible_ui_p(r_.get_mpz_t(), static_cast<unsigned long>(p_));
    }
    // Unit part u with residue = u * p^valuation.
    Int unit_part() const {
        Int t = r_;
        if (t == 0) return t;
        while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p_)))
            mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p_));
        return t;
    }

    PadicNum operator-() const { return PadicNum(p_, N_, pN_ - r_); }
    PadicNum operator+(const PadicNum& o) const { check(o); return PadicNum(p_, N_, r_ + o.r_); }
    PadicNum operator-(const PadicNum& o) const { check(o); return PadicNum(p_, N_, r_ - o.r_ + pN_); }
    PadicNum operator*(const PadicNum& o) const { check(o); return PadicNum(p_, N_, r_ * o.r_); }
    PadicNum& operator+=(const PadicNum& o) { return *this = *this + o; }
    PadicNum& operator-=(const PadicNum& o) { return *this = *this - o; }
    PadicNum& operator*=(const PadicNum& o) { return *this = *this * o; }

    PadicNum inv() const {
        if (!is_unit())
            throw PrecisionLoss("PadicNum: inverse of non-unit", valuation());
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r_.get_mpz_t(), pN_.get_mpz_t());
        return PadicNum(p_, N_, s);
    }
    PadicNum operator/(const PadicNum& o) const { return *this * o.inv(); }

    PadicNum pow(std::uint64_t e) const {
        PadicNum r = one(), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Truncation to absolute precision M <= N; a ring homomorphism.
    PadicNum truncate(int M) const {
        if (M > N_) throw std::invalid_argument("PadicNum: cannot raise precision");
        return PadicNum(p_, M, r_);
    }

    Fp reduce_mod_p() const { return Fp(to_u64(mod_floor(r_, Int(static_cast<unsigned long>(p_)))), p_); }

    bool operator==(const PadicNum& o) const {
        return p_ == o.p_ && N_ == o.N_ && r_ == o.r_;
    }
    bool operator!=(const PadicNum& o) const { return !(*this == o); }

    // Serialization "u*p^k mod p^N" (k omitted when zero).
    std::string str() const {
        std::ostringstream os;
        int v = valuation();
        if (r_ == 0) {
            os << "0 mod " << p_ << "^" << N_;
        } else if (v == 0) {
            os << r_.get_str() << " mod " << p_ << "^" << N_;
        } else {
            os << unit_part().get_str() << "*" << p_ << "^" << v << " mod " << p_ << "^" << N_;
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const PadicNum& a) { return os << a.str(); }

    // Accepts "u*p^k mod p^N", "u mod p^N", or a bare integer (with p, N
    // supplied by the caller in the latter case).
    static PadicNum parse(const std::string& s, std::uint64_t p, int N);

private:
    void check(const PadicNum& o) const {
        if (p_ != o.p_ || N_ != o.N_)
            throw std::domain_error("PadicNum: mixed precision or prime");
    }
    std::uint64_t p_;
    int N_;
    Int r_;
    Int pN_;
};

inline PadicNum PadicNum::parse(const std::string& s, std::uint64_t p, int N) {
    std::string body = s;
    auto mod_pos = body.find(" mod ");
    if (mod_pos != std::string::npos) {
        std::string mod = body.substr(mod_pos + 5);
        body = body.substr(0, mod_pos);
        auto caret = mod.find('^');
        std::uint64_t ps = caret == std::string::npos
                               ? std::stoull(mod)
                               : std::stoull(mod.substr(0, caret));
        int Ns = caret == std::string::npos ? 1 : std::stoi(mod.substr(caret + 1));
        if (p != 0 && ps != p) throw std::invalid_argument("PadicNum::parse: prime mismatch");
        p = ps;
        N = Ns;
    }
    Int value;
    auto star = body.find('*');
    if (star == std::string::npos) {
        value = Int(body);
    } else {
        Int u(body.substr(0, star));
        std::string pk = body.substr(star + 1);
        auto caret = pk.find('^');
        std::uint64_t pb = std::stoull(caret == std::string::npos ? pk : pk.substr(0, caret));
        unsigned long k = caret == std::string::npos ? 1 : std::stoul(pk.substr(caret + 1));
        if (pb != p) throw std::invalid_argument("PadicNum::parse: prime mismatch");
        value = u * int_pow(p, k);
    }
    return PadicNum(p, N, value);
}

// Hensel-lifted square root of a unit square; the result has the full input
// precision. Throws std::domain_error on a non-residue.
inline PadicNum padic_sqrt_unit(const PadicNum& a) {
    if (!a.is_unit()) throw std::domain_error("padic_sqrt_unit: not a unit");
    Fp a0 = a.reduce_mod_p();
    Fp s0 = fp_sqrt(a0);  // throws on non-residue
    std::uint64_t p = a.prime();
    int N = a.precision();
    Int s(static_cast<unsigned long>(s0.value()));
    Int pk = Int(static_cast<unsigned long>(p));
    int have = 1;
    while (have < N) {
        have = std::min(2 * have, N);
        pk = int_pow(p, static_cast<unsigned long>(have));
        // Newton: s <- (s + a/s)/2 mod p^have.
        Int g, si, t;
        mpz_gcdext(g.get_mpz_t(), si.get_mpz_t(), t.get_mpz_t(), s.get_mpz_t(), pk.get_mpz_t());
        Int inv2 = (pk + 1) / 2;
        s = mod_floor((s + mod_floor(a.residue() * si, pk)) * inv2, pk);
    }
    return PadicNum(p, N, s);
}

enum class QuadraticRootStatus {
    TwoRoots,        // distinct mod p, full precision
    ReducedPrecision,  // roots known only to reduced precision (flagged)
    NoRoot,
};

struct QuadraticRoots {
    QuadraticRootStatus status;
    PadicNum r1, r2;  // meaningful unless NoRoot; precision may be reduced
};

// Roots of a x^2 + b x + c over Z/p^N for odd p with a a unit.
// The discriminant decides the outcome exactly as its valuation dictates:
// unit square -> two full-precision roots; non-square unit or odd valuation
// -> no root; even positive valuation -> roots at explicitly reduced
// precision.
inline QuadraticRoots hensel_quadratic_roots(const PadicNum& a, const PadicNum& b,
                                             const PadicNum& c) {
    if (!a.is_unit())
        throw std::domain_error("hensel_quadratic_roots: leading coefficient degenerate");
    std::uint64_t p = a.prime();
    int N = a.precision();
    PadicNum disc = b * b - a * c * a.from_int(4);
    PadicNum inv2a = (a + a).inv();
    if (disc.is_unit()) {
        Fp d0 = disc.reduce_mod_p();
        if (legendre(d0) != 1) return {QuadraticRootStatus::NoRoot, a.zero(), a.zero()};
        PadicNum s = padic_sqrt_unit(disc);
        return {QuadraticRootStatus::TwoRoots, (-b + s) * inv2a, (-b - s) * inv2a};
    }
    if (disc.is_zero()) {
        // Double root known modulo p^ceil(N/2).
        int M = (N + 1) / 2;
        PadicNum r = (-b * inv2a).truncate(M);
        return {QuadraticRootStatus::ReducedPrecision, r, r};
    }
    int v = disc.valuation();
    if (v % 2 == 1) return {QuadraticRootStatus::NoRoot, a.zero(), a.zero()};
    int e = v / 2;
    PadicNum u(p, N - v, disc.unit_part());
    Fp u0 = u.reduce_mod_p();
    if (legendre(u0) != 1) return {QuadraticRootStatus::NoRoot, a.zero(), a.zero()};
    PadicNum su = padic_sqrt_unit(u);  // mod p^{N-v}
    // sqrt(disc) = p^e * su, known modulo p^{N-v+e}; roots mod p^{N-e}... the
    // limiting absolute precision is N - e after the division by 2a.
    int M = N - e;
    Int sd = su.residue() * int_pow(p, static_cast<unsigned long>(e));
    PadicNum s(p, M, sd);
    PadicNum bm = b.truncate(M), i2am = inv2a.truncate(M);
    return {QuadraticRootStatus::ReducedPrecision, (-bm + s) * i2am, (-bm - s) * i2am};
}

// Capped-relative p-adic scalar (an element of Q_p with tracked relative
// precision). Used by the Jacobian arithmetic, where Mumford coordinates of
// kernel-of-reduction classes have negative valuation.
class Qp {
public:
    static constexpr int kZeroVal = std::numeric_limits<int>::max() / 2;

    Qp() : p_(0), val_(kZeroVal), prec_(0), u_(0) {}
    // Zero known to absolute precision abs_prec.
    static Qp zero_with_abs(std::uint64_t p, int abs_prec) {
        Qp z;
        z.p_ = p;
        z.val_ = abs_prec;
        z.prec_ = 0;
        z.u_ = 0;
        z.zero_ = true;
        return z;
    }
    Qp(std::uint64_t p, int val, int prec, const Int& unit) : p_(p), val_(val), prec_(prec) {
        if (prec < 1) throw std::invalid_argument("Qp: relative precision must be >= 1");
        Int m = int_pow(p, static_cast<unsigned long>(prec));
        u_ = mod_floor(unit, m);
        normalize();
    }
    static Qp from_padic(const PadicNum& a) {
        if (a.is_zero()) return zero_with_abs(a.prime(), a.precision());
        int v = a.valuation();
        return Qp(a.prime(), v, a.precision() - v, a.unit_part());
    }
    static Qp from_int(std::uint64_t p, int prec, std::int64_t n) {
        if (n == 0) return zero_with_abs(p, prec);
        return Qp(p, 0, prec, Int(static_cast<long>(n)));
    }

    std::uint64_t prime() const { return p_; }
    bool is_zero() const { return zero_; }
    // Lower bound on the valuation; exact when nonzero.
    int valuation() const { return val_; }
    int rel_prec() const { return zero_ ? 0 : prec_; }
    int abs_prec() const { return zero_ ? val_ : val_ + prec_; }
    const Int& unit() const { return u_; }
    bool is_integral() const { return zero_ ? val_ >= 0 : val_ >= 0; }

    Qp zero() const { return zero_with_abs(p_, abs_prec()); }
    Qp one() const { return from_int(p_, ctx_prec(), 1); }
    Qp from_int(std::int64_t n) const { return from_int(p_, ctx_prec(), n); }

    bool is_unit() const { return !zero_ && val_ == 0; }

    Qp operator-() const {
        if (zero_) return *this;
        Int m = int_pow(p_, static_cast<unsigned long>(prec_));
        return Qp(p_, val_, prec_, m - u_);
    }
    Qp operator+(const Qp& o) const {
        check(o);
        if (zero_ && o.zero_) return zero_with_abs(p_, std::min(val_, o.val_));
        if (zero_) return o.capped_abs(val_);
        if (o.zero_) return capped_abs(o.val_);
        int v = std::min(val_, o.val_);
        int abs = std::min(abs_prec(), o.abs_prec());
        if (abs <= v) return zero_with_abs(p_, abs);
        Int m = int_pow(p_, static_cast<unsigned long>(abs - v));
        Int s = mod_floor(u_ * int_pow(p_, static_cast<unsigned long>(val_ - v)) +
                              o.u_ * int_pow(p_, static_cast<unsigned long>(o.val_ - v)),
                          m);
        if (s == 0) return zero_with_abs(p_, abs);
        Qp r(p_, v, abs - v, s);
        return r;
    }
    Qp operator-(const Qp& o) const { return *this + (-o); }
    Qp operator*(const Qp& o) const {
        check(o);
        if (zero_ || o.zero_) {
            // val bound of product: val1 + val2 (using valuation lower bounds)
            int v = (zero_ ? val_ : val_) + (o.zero_ ? o.val_ : o.val_);
            return zero_with_abs(p_, v);
        }
        int prec = std::min(prec_, o.prec_);
        Int m = int_pow(p_, static_cast<unsigned long>(prec));
        return Qp(p_, val_ + o.val_, prec, mod_floor(u_ * o.u_, m));
    }
    Qp& operator+=(const Qp& o) { return *this = *this + o; }
    Qp& operator-=(const Qp& o) { return *this = *this - o; }
    Qp& operator*=(const Qp& o) { return *this = *this * o; }

    Qp inv() const {
        if (zero_)
            throw PrecisionLoss("Qp: inverse of (apparent) zero", val_);
        Int m = int_pow(p_, static_cast<unsigned long>(prec_));
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), u_.get_mpz_t(), m.get_mpz_t());
        return Qp(p_, -val_, prec_, s);
    }
    Qp operator/(const Qp& o) const { return *this * o.inv(); }

    // Multiply by p^k (exact shift).
    Qp shift(int k) const {
        if (zero_) return zero_with_abs(p_, val_ + k);
        return Qp(p_, val_ + k, prec_, u_);
    }

    bool operator==(const Qp& o) const {
        // Agreement to the shared absolute precision.
        Qp d = *this - o;
        return d.is_zero();
    }
    bool operator!=(const Qp& o) const { return !(*this == o); }

    // Round to PadicNum at absolute precision A (requires integrality).
    PadicNum to_padic(int A) const {
        if (zero_) {
            if (val_ < A)
                throw PrecisionLoss("Qp: zero not known to requested precision", val_);
            return PadicNum(p_, A, Int(0));
        }
        if (val_ < 0) throw std::domain_error("Qp: negative valuation, not integral");
        if (abs_prec() < A)
            throw PrecisionLoss("Qp: insufficient precision", abs_prec());
        return PadicNum(p_, A, u_ * int_pow(p_, static_cast<unsigned long>(val_)));
    }

    Fp reduce_mod_p() const {
        if (zero_) {
            if (val_ < 1) throw PrecisionLoss("Qp: cannot reduce, precision < 1", val_);
            return Fp(0, p_);
        }
        if (val_ < 0) throw std::domain_error("Qp: negative valuation, cannot reduce mod p");
        if (val_ > 0) return Fp(0, p_);
        return Fp(to_u64(mod_floor(u_, Int(static_cast<unsigned long>(p_)))), p_);
    }

    Qp sqrt() const {
        if (zero_) throw std::domain_error("Qp: sqrt of apparent zero");
        if (val_ % 2 != 0) throw std::domain_error("Qp: sqrt of odd-valuation element");
        PadicNum u(p_, prec_, u_);
        PadicNum s = padic_sqrt_unit(u);  // throws on non-residue
        return Qp(p_, val_ / 2, prec_, s.residue());
    }

    std::string str() const {
        std::ostringstream os;
        if (zero_) { os << "0 + O(" << p_ << "^" << val_ << ")"; return os.str(); }
        os << u_.get_str() << "*" << p_ << "^" << val_ << " + O(" << p_ << "^" << abs_prec() << ")";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Qp& a) { return os << a.str(); }

private:
    int ctx_prec() const { return zero_ ? std::max(1, val_) : prec_; }
    Qp capped_abs(int abs) const {
        if (zero_) return zero_with_abs(p_, std::min(val_, abs));
        if (abs <= val_) return zero_with_abs(p_, abs);
        int prec = std::min(prec_, abs - val_);
        Int m = int_pow(p_, static_cast<unsigned long>(prec));
        Qp r;
        r.p_ = p_; r.val_ = val_; r.prec_ = prec; r.u_ = mod_floor(u_, m); r.zero_ = false;
        r.normalize();
        return r;
    }
    void normalize() {
        zero_ = false;
        if (u_ == 0) {
            zero_ = true;
            val_ = val_ + prec_;
            prec_ = 0;
            return;
        }
        int shift = 0;
        while (mpz_divisible_ui_p(u_.get_mpz_t(), static_cast<unsigned long>(p_))) {
            mpz_divexact_ui(u_.get_mpz_t(), u_.get_mpz_t(), static_cast<unsigned long>(p_));
            ++shift;
        }
        if (shift) {
            val_ += shift;
            prec_ -= shift;
            if (prec_ <= 0) {
                zero_ = true;
                val_ += prec_;  // absolute bound preserved
                prec_ = 0;
                u_ = 0;
            }
        }
    }
    void check(const Qp& o) const {
        if (p_ != o.p_) throw std::domain_error("Qp: mixed primes");
    }
    std::uint64_t p_;
    int val_;
    int prec_;
    Int u_;
    bool zero_ = true;
};

}  // namespace quintic
