#pragma once

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fp.hpp"

namespace quintic {

// Dense univariate polynomial over a coefficient domain D. Elements of D
// carry their own context (prime, precision, ...), so every polynomial keeps
// a sample element around to manufacture constants.
template <typename D>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(const D& sample) : sample_(sample.zero()) {}
    UPoly(const D& sample, std::vector<D> coeffs) : sample_(sample.zero()), c_(std::move(coeffs)) {
        normalize();
    }
    static UPoly constant(const D& value) { return UPoly(value, {value}); }
    static UPoly monomial(const D& value, int deg) {
        std::vector<D> c(static_cast<std::size_t>(deg) + 1, value.zero());
        c.back() = value;
        return UPoly(value, std::move(c));
    }
    static UPoly x(const D& sample) { return monomial(sample.one(), 1); }

    const D& sample() const { return sample_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == sample_.one(); }
    D coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return sample_.zero();
        return c_[static_cast<std::size_t>(i)];
    }
    const std::vector<D>& coeffs() const { return c_; }
    D lc() const {
        if (c_.empty()) throw std::domain_error("UPoly: leading coefficient of zero");
        return c_.back();
    }

    UPoly operator-() const {
        UPoly r(*this);
        for (auto& a : r.c_) a = -a;
        return r;
    }
    UPoly operator+(const UPoly& o) const {
        UPoly r(sample_);
        std::size_t n = std::max(c_.size(), o.c_.size());
        r.c_.resize(n, sample_.zero());
        for (std::size_t i = 0; i < n; ++i) r.c_[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
        r.normalize();
        return r;
    }
    UPoly operator-(const UPoly& o) const { return *this + (-o); }
    UPoly operator*(const UPoly& o) const {
        if (is_zero() || o.is_zero()) return UPoly(sample_);
        UPoly r(sample_);
        r.c_.assign(c_.size() + o.c_.size() - 1, sample_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] += c_[i] * o.c_[j];
        }
        r.normalize();
        return r;
    }
    UPoly operator*(const D& s) const {
        UPoly r(*this);
        for (auto& a : r.c_) a = a * s;
        r.normalize();
        return r;
    }
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    bool operator==(const UPoly& o) const {
        if (degree() != o.degree()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    D eval(const D& x) const {
        D r = sample_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    UPoly derivative() const {
        UPoly r(sample_);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_.push_back(c_[i] * sample_.from_int(static_cast<std::int64_t>(i)));
        r.normalize();
        return r;
    }

    // Quotient and remainder; requires lc(divisor) invertible in D.
    std::pair<UPoly, UPoly> divrem(const UPoly& d) const {
        if (d.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
        UPoly q(sample_), r(*this);
        D dlc_inv = d.lc().inv();
        int dd = d.degree();
        if (r.degree() >= dd) q.c_.assign(static_cast<std::size_t>(r.degree() - dd) + 1, sample_.zero());
        while (!r.is_zero() && r.degree() >= dd) {
            int k = r.degree() - dd;
            D t = r.lc() * dlc_inv;
            q.c_[static_cast<std::size_t>(k)] = t;
            for (int i = 0; i <= dd; ++i)
                r.c_[static_cast<std::size_t>(k + i)] = r.coeff(k + i) - t * d.coeff(i);
            r.normalize_top();
        }
        q.normalize();
        r.normalize();
        return {q, r};
    }
    UPoly operator/(const UPoly& d) const { return divrem(d).first; }
    UPoly operator%(const UPoly& d) const { return divrem(d).second; }

    UPoly monic() const {
        if (is_zero()) return *this;
        return *this * lc().inv();
    }

    // f(x + c).
    UPoly translate(const D& c) const {
        UPoly r(sample_);
        UPoly xc = UPoly(sample_, {c, sample_.one()});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * xc + constant(*it);
        return r;
    }

    // x^deg * f(1/x) for the given deg >= degree(); the reversal used by the
    // infinity charts.
    UPoly reverse(int deg) const {
        if (deg < degree()) throw std::invalid_argument("UPoly: reverse degree too small");
        std::vector<D> rc(static_cast<std::size_t>(deg) + 1, sample_.zero());
        for (int i = 0; i <= degree(); ++i) rc[static_cast<std::size_t>(deg - i)] = coeff(i);
        return UPoly(sample_, std::move(rc));
    }

    friend std::ostream& operator<<(std::ostream& os, const UPoly& f) {
        if (f.is_zero()) return os << "0";
        bool first = true;
        for (int i = f.degree(); i >= 0; --i) {
            if (f.coeff(i).is_zero()) continue;
            if (!first) os << " + ";
            os << f.coeff(i);
            if (i > 0) os << "*x^" << i;
            first = false;
        }
        return os;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    void normalize_top() { normalize(); }
    D sample_;
    std::vector<D> c_;
};

template <typename D>
UPoly<D> upoly_gcd(UPoly<D> a, UPoly<D> b) {
    while (!b.is_zero()) {
        UPoly<D> r = a % b;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.monic();
}

// Extended gcd: returns (g, s, t) monic g with s*a + t*b = g.
template <typename D>
std::tuple<UPoly<D>, UPoly<D>, UPoly<D>> upoly_xgcd(const UPoly<D>& a, const UPoly<D>& b) {
    UPoly<D> r0 = a, r1 = b;
    UPoly<D> s0 = UPoly<D>::constant(a.sample().one()), s1(a.sample());
    UPoly<D> t0(a.sample()), t1 = UPoly<D>::constant(a.sample().one());
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        r0 = r1; r1 = r;
        UPoly<D> s = s0 - q * s1, t = t0 - q * t1;
        s0 = s1; s1 = s;
        t0 = t1; t1 = t;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    D u = r0.lc().inv();
    return {r0 * u, s0 * u, t0 * u};
}

// Resultant over a field domain via the Euclidean recurrence.
template <typename D>
D upoly_resultant(UPoly<D> a, UPoly<D> b) {
    D sample = a.sample();
    if (a.is_zero() || b.is_zero()) return sample.zero();
    D res = sample.one();
    while (true) {
        int da = a.degree(), db = b.degree();
        if (db == 0) {
            D r = b.coeff(0);
            D acc = sample.one();
            for (int i = 0; i < da; ++i) acc = acc * r;
            return res * acc;
        }
        UPoly<D> r = a % b;
        if (r.is_zero()) return sample.zero();
        int dr = r.degree();
        // res(a,b) = (-1)^{da*db} lc(b)^{da-dr} res(b,r)
        D lcpow = sample.one();
        for (int i = 0; i < da - dr; ++i) lcpow = lcpow * b.lc();
        if ((da % 2) && (db % 2)) res = -res;
        res = res * lcpow;
        a = b;
        b = r;
    }
}

inline Fp field_sqrt(const Fp& a) { return fp_sqrt(a); }

inline Fq field_sqrt(const Fq& a) {
    if (a.is_zero()) return a;
    Int q = int_pow(a.p(), a.degree());
    if (fq_chi(a) != 1) throw std::domain_error("field_sqrt: non-residue in F_q");
    if (mpz_fdiv_ui(q.get_mpz_t(), 4) == 3) return a.pow((q + 1) / 4);
    // Tonelli-Shanks in the cyclic group of order q-1.
    Int m = q - 1;
    unsigned long s = 0;
    while (mpz_even_p(m.get_mpz_t())) { m >>= 1; ++s; }
    // A non-residue: try g, g+1, ... over small scalars plus the generator.
    Fq z = a.one();
    for (std::uint64_t trial = 2;; ++trial) {
        Fq cand = a.degree() > 1 && trial == 2 ? a.one().gen() : a.from_int(static_cast<std::int64_t>(trial));
        if (trial > 2 && a.degree() > 1) cand = cand + a.one().gen();
        if (fq_chi(cand) == -1) { z = cand; break; }
        if (trial > 64) throw std::domain_error("field_sqrt: no non-residue found");
    }
    Fq c = z.pow(m);
    Fq x = a.pow((m + 1) / 2);
    Fq t = a.pow(m);
    unsigned long mm = s;
    while (!(t == a.one())) {
        Fq tt = t;
        unsigned long i = 0;
        while (!(tt == a.one())) { tt = tt * tt; ++i; }
        Fq b = c;
        for (unsigned long j = 0; j + i + 1 < mm; ++j) b = b * b;
        x = x * b;
        c = b * b;
        t = t * c;
        mm = i;
    }
    return x;
}

// p-th root of an element of F_{p^k}: c -> c^{p^{k-1}}.
inline Fp field_pth_root(const Fp& a) { return a; }
inline Fq field_pth_root(const Fq& a) {
    Fq r = a;
    for (unsigned i = 0; i + 1 < a.degree(); ++i) r = r.frobenius();
    return r;
}

// Squarefree decomposition over F_q: f = lc * prod_i part[i].factor^{part[i].mult}
// with the factors monic, squarefree, and pairwise coprime.
template <typename D>
struct SquarefreePart {
    UPoly<D> factor;
    int mult;
};

template <typename D>
std::vector<SquarefreePart<D>> squarefree_decomposition(const UPoly<D>& f0, std::uint64_t p) {
    std::vector<SquarefreePart<D>> out;
    UPoly<D> f = f0.monic();
    if (f.degree() <= 0) return out;
    UPoly<D> fp = f.derivative();
    UPoly<D> g = fp.is_zero() ? f : upoly_gcd(f, fp);
    UPoly<D> w = fp.is_zero() ? UPoly<D>::constant(f.sample().one()) : f / g;
    int i = 1;
    while (w.degree() > 0) {
        UPoly<D> y = upoly_gcd(w, g);
        UPoly<D> z = w / y;
        if (z.degree() > 0) out.push_back({z, i});
        ++i;
        w = y;
        g = g / y;
    }
    if (g.degree() > 0) {
        // g = h(x^p); recurse on the p-th root.
        UPoly<D> h(f.sample());
        std::vector<D> hc;
        for (int d = 0; d <= g.degree(); d += static_cast<int>(p))
            hc.push_back(field_pth_root(g.coeff(d)));
        h = UPoly<D>(f.sample(), hc);
        for (auto& part : squarefree_decomposition(h, p))
            out.push_back({part.factor, part.mult * static_cast<int>(p)});
    }
    return out;
}

template <typename D>
bool upoly_is_squarefree(const UPoly<D>& f, std::uint64_t p) {
    for (const auto& part : squarefree_decomposition(f, p))
        if (part.mult > 1) return false;
    return true;
}

template <typename D>
struct PolySquareRoot {
    bool is_square;
    UPoly<D> h;    // monic with c^2 h^2 = f
    D c;           // square root of lc(f)
};

// Decides whether f = c * h^2 with c a nonzero square of F_q, and if so
// returns the monic h and a square root of c. Throws on f = 0 (degenerate,
// non-reduced fiber).
template <typename D>
PolySquareRoot<D> poly_square_root(const UPoly<D>& f, std::uint64_t p) {
    if (f.is_zero())
        throw std::domain_error("poly_square_root: zero polynomial (degenerate fiber)");
    PolySquareRoot<D> res{false, UPoly<D>(f.sample()), f.sample().zero()};
    if (f.degree() % 2 != 0) return res;
    D lead = f.lc();
    D croot = f.sample().zero();
    try {
        croot = field_sqrt(lead);
    } catch (const std::domain_error&) {
        return res;  // leading coefficient is a non-square
    }
    auto parts = squarefree_decomposition(f, p);
    UPoly<D> h = UPoly<D>::constant(f.sample().one());
    for (const auto& part : parts) {
        if (part.mult % 2 != 0) return res;
        for (int i = 0; i < part.mult / 2; ++i) h = h * part.factor;
    }
    res.is_square = true;
    res.h = h;
    res.c = croot;
    return res;
}

}  // namespace quintic
