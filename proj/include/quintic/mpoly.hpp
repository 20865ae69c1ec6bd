#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace quintic {

// Monomial in a fixed number of variables (exponent vector).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0), deg_(0) {}
    explicit Monomial(std::vector<std::uint16_t> exps) : e_(std::move(exps)) {
        deg_ = 0;
        for (auto x : e_) deg_ += x;
    }

    std::size_t nvars() const { return e_.size(); }
    unsigned degree() const { return deg_; }
    std::uint16_t operator[](std::size_t i) const { return e_[i]; }
    const std::vector<std::uint16_t>& exponents() const { return e_; }

    Monomial times(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        r.deg_ += o.deg_;
        return r;
    }
    bool divides(const Monomial& o) const {
        if (e_.size() != o.e_.size()) return false;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }
    Monomial quotient(const Monomial& o) const {  // *this / o
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        r.deg_ -= o.deg_;
        return r;
    }
    Monomial lcm(const Monomial& o) const {
        Monomial r(*this);
        r.deg_ = 0;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            r.e_[i] = std::max(e_[i], o.e_[i]);
            r.deg_ += r.e_[i];
        }
        return r;
    }
    Monomial with_exp(std::size_t var, std::uint16_t e) const {
        Monomial r(*this);
        r.deg_ = r.deg_ - r.e_[var] + e;
        r.e_[var] = e;
        return r;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::vector<std::uint16_t> e_;
    unsigned deg_ = 0;
};

// Graded reverse-lexicographic order: compare total degree first; on ties the
// monomial with the smaller exponent in the last differing variable (scanning
// from the last variable) is the larger one.
struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (std::size_t i = a.nvars(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] > b[i];
        }
        return false;
    }
};

// All monomials in n variables of the given total degree, sorted ascending in
// grevlex, without duplicates.
inline std::vector<Monomial> homogeneous_monomials(std::size_t nvars, unsigned degree) {
    if (nvars < 1) throw std::invalid_argument("homogeneous_monomials: nvars >= 1 required");
    std::vector<Monomial> out;
    std::vector<std::uint16_t> e(nvars, 0);
    // Enumerate compositions of `degree` into nvars parts.
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned rem) {
        if (i + 1 == nvars) {
            e[i] = static_cast<std::uint16_t>(rem);
            out.emplace_back(e);
            return;
        }
        for (unsigned k = 0; k <= rem; ++k) {
            e[i] = static_cast<std::uint16_t>(k);
            rec(i + 1, rem - k);
        }
        e[i] = 0;
    };
    rec(0, degree);
    std::sort(out.begin(), out.end(), GrevlexLess{});
    return out;
}

// Sparse multivariate polynomial over a coefficient domain D; no zero
// coefficients are stored and terms are kept in grevlex order.
template <typename D>
class MPoly {
public:
    using TermMap = std::map<Monomial, D, GrevlexLess>;

    MPoly() = default;
    MPoly(std::size_t nvars, const D& sample) : n_(nvars), sample_(sample.zero()) {}

    static MPoly constant(std::size_t nvars, const D& value) {
        MPoly f(nvars, value);
        if (!value.is_zero()) f.t_[Monomial(nvars)] = value;
        return f;
    }
    static MPoly variable(std::size_t nvars, std::size_t var, const D& sample) {
        MPoly f(nvars, sample);
        Monomial m(nvars);
        f.t_[m.with_exp(var, 1)] = sample.one();
        return f;
    }
    static MPoly term(std::size_t nvars, const Monomial& m, const D& coeff) {
        MPoly f(nvars, coeff);
        if (!coeff.is_zero()) f.t_[m] = coeff;
        return f;
    }

    std::size_t nvars() const { return n_; }
    const D& sample() const { return sample_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t term_count() const { return t_.size(); }

    // Domain interface, so polynomials can themselves serve as coefficients
    // (only constants are invertible).
    MPoly zero() const { return MPoly(n_, sample_); }
    MPoly one() const { return constant(n_, sample_.one()); }
    MPoly from_int(std::int64_t k) const { return constant(n_, sample_.from_int(k)); }
    bool is_unit() const {
        return t_.size() == 1 && t_.begin()->first.degree() == 0 && t_.begin()->second.is_unit();
    }
    MPoly inv() const {
        if (!is_unit()) throw std::domain_error("MPoly: inverse of a non-constant");
        return constant(n_, t_.begin()->second.inv());
    }

    int total_degree() const {
        if (t_.empty()) return -1;
        return static_cast<int>(t_.rbegin()->first.degree());
    }
    bool is_homogeneous() const {
        if (t_.empty()) return true;
        unsigned d = t_.begin()->first.degree();
        return t_.rbegin()->first.degree() == d;
    }
    const Monomial& leading_monomial() const {
        if (t_.empty()) throw std::domain_error("MPoly: leading term of zero");
        return t_.rbegin()->first;
    }
    const D& leading_coeff() const {
        if (t_.empty()) throw std::domain_error("MPoly: leading term of zero");
        return t_.rbegin()->second;
    }
    D coeff(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? sample_.zero() : it->second;
    }

    void add_term(const Monomial& m, const D& c) {
        if (c.is_zero()) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    MPoly operator-() const {
        MPoly r(*this);
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    MPoly operator+(const MPoly& o) const {
        check(o);
        MPoly r(*this);
        for (auto& [m, c] : o.t_) r.add_term(m, c);
        return r;
    }
    MPoly operator-(const MPoly& o) const { return *this + (-o); }
    MPoly operator*(const MPoly& o) const {
        check(o);
        MPoly r(n_, sample_);
        for (auto& [ma, ca] : t_)
            for (auto& [mb, cb] : o.t_) r.add_term(ma.times(mb), ca * cb);
        return r;
    }
    MPoly operator*(const D& s) const {
        MPoly r(n_, sample_);
        for (auto& [m, c] : t_) r.add_term(m, c * s);
        return r;
    }
    MPoly& operator+=(const MPoly& o) {
        check(o);
        for (auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) { return *this += -o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly pow(unsigned e) const {
        MPoly r = constant(n_, sample_.one());
        MPoly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const MPoly& o) const {
        if (n_ != o.n_ || t_.size() != o.t_.size()) return false;
        auto it = t_.begin(), jt = o.t_.begin();
        for (; it != t_.end(); ++it, ++jt)
            if (it->first != jt->first || !(it->second == jt->second)) return false;
        return true;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    // Exact formal derivative.
    MPoly derivative(std::size_t var) const {
        if (var >= n_) throw std::invalid_argument("MPoly: variable index out of range");
        MPoly r(n_, sample_);
        for (auto& [m, c] : t_) {
            std::uint16_t e = m[var];
            if (e == 0) continue;
            r.add_term(m.with_exp(var, static_cast<std::uint16_t>(e - 1)),
                       c * sample_.from_int(e));
        }
        return r;
    }

    // Partial evaluation: substitute values for the variables whose entry is
    // set; the result keeps the same variable count with those exponents
    // collapsed.
    MPoly substitute(const std::vector<std::optional<D>>& assign) const {
        if (assign.size() != n_) throw std::invalid_argument("MPoly: assignment size mismatch");
        MPoly r(n_, sample_);
        for (auto& [m, c] : t_) {
            D value = c;
            Monomial mm = m;
            for (std::size_t i = 0; i < n_; ++i) {
                if (!assign[i].has_value() || m[i] == 0) continue;
                D pw = sample_.one();
                for (std::uint16_t k = 0; k < m[i]; ++k) pw = pw * (*assign[i]);
                value = value * pw;
                mm = mm.with_exp(i, 0);
            }
            r.add_term(mm, value);
        }
        return r;
    }

    // Full evaluation at a point.
    D eval(const std::vector<D>& x) const {
        if (x.size() != n_) throw std::invalid_argument("MPoly: point size mismatch");
        D acc = sample_.zero();
        for (auto& [m, c] : t_) {
            D v = c;
            for (std::size_t i = 0; i < n_; ++i)
                for (std::uint16_t k = 0; k < m[i]; ++k) v = v * x[i];
            acc += v;
        }
        return acc;
    }

    // Substitute a polynomial for one variable.
    MPoly compose(std::size_t var, const MPoly& g) const {
        MPoly r(n_, sample_);
        for (auto& [m, c] : t_) {
            MPoly t = term(n_, m.with_exp(var, 0), c);
            for (std::uint16_t k = 0; k < m[var]; ++k) t *= g;
            r += t;
        }
        return r;
    }

    // Variables actually appearing.
    std::vector<std::size_t> support_vars() const {
        std::vector<bool> seen(n_, false);
        for (auto& [m, c] : t_)
            for (std::size_t i = 0; i < n_; ++i)
                if (m[i]) seen[i] = true;
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (seen[i]) out.push_back(i);
        return out;
    }

private:
    void check(const MPoly& o) const {
        if (n_ != o.n_) throw std::domain_error("MPoly: mixed variable counts");
    }
    std::size_t n_ = 0;
    D sample_;
    TermMap t_;
};

template <typename D>
std::string mpoly_to_string(const MPoly<D>& f, const std::vector<std::string>& names);

template <typename D>
std::ostream& operator<<(std::ostream& os, const MPoly<D>& f) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < f.nvars(); ++i) names.push_back("v" + std::to_string(i));
    return os << mpoly_to_string(f, names);
}

// Single-divisor multivariate division: f = q*g + r where no term of r is
// divisible by the leading monomial of g. In particular r = 0 iff g | f.
template <typename D>
std::pair<MPoly<D>, MPoly<D>> mpoly_divrem(const MPoly<D>& f, const MPoly<D>& g) {
    if (g.is_zero()) throw std::domain_error("mpoly_divrem: division by zero");
    MPoly<D> q(f.nvars(), f.sample());
    MPoly<D> r = f;
    MPoly<D> rem(f.nvars(), f.sample());
    const Monomial& gl = g.leading_monomial();
    D glc_inv = g.leading_coeff().inv();
    while (!r.is_zero()) {
        const Monomial& rl = r.leading_monomial();
        if (gl.divides(rl)) {
            D c = r.leading_coeff() * glc_inv;
            Monomial m = rl.quotient(gl);
            MPoly<D> t = MPoly<D>::term(f.nvars(), m, c);
            q += t;
            r -= t * g;
        } else {
            MPoly<D> t = MPoly<D>::term(f.nvars(), rl, r.leading_coeff());
            rem += t;
            r -= t;
        }
    }
    return {q, rem};
}

// ---------------------------------------------------------------------------
// Plain-text parsing and printing.
// ---------------------------------------------------------------------------

template <typename D>
std::string mpoly_to_string(const MPoly<D>& f, const std::vector<std::string>& names) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Descending order (leading term first).
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::ostringstream term;
        bool printed_coeff = false;
        std::ostringstream coeff;
        coeff << c;
        std::string cs = coeff.str();
        bool is_one = cs == "1", is_minus_one = cs == "-1";
        if (m.degree() == 0 || (!is_one && !is_minus_one)) {
            term << cs;
            printed_coeff = true;
        } else if (is_minus_one) {
            term << "-";
        }
        bool need_star = printed_coeff;
        for (std::size_t i = 0; i < m.nvars(); ++i) {
            if (m[i] == 0) continue;
            if (need_star) term << "*";
            term << names.at(i);
            if (m[i] > 1) term << "^" << m[i];
            need_star = true;
        }
        std::string ts = term.str();
        if (!first) {
            if (!ts.empty() && ts[0] == '-') os << " - " << ts.substr(1);
            else os << " + " << ts;
        } else {
            os << ts;
        }
        first = false;
    }
    return os.str();
}

// Parses sums of terms like "3*x^2*y - z + 4"; '*' between factors is
// optional when whitespace separates them.
template <typename D>
MPoly<D> mpoly_parse(const std::string& text, const std::vector<std::string>& names,
                     const D& sample) {
    std::size_t n = names.size();
    MPoly<D> out(n, sample);
    std::size_t i = 0;
    auto skip_ws = [&]() { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto var_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t k = 0; k < n; ++k)
            if (names[k] == name) return k;
        throw std::invalid_argument("mpoly_parse: unknown variable '" + name + "'");
    };
    skip_ws();
    bool expect_term = true;
    int sign = 1;
    D coeff = sample.one();
    Monomial mono(n);
    bool in_term = false;
    auto flush = [&]() {
        if (!in_term) return;
        D c = sign < 0 ? -coeff : coeff;
        out.add_term(mono, c);
        coeff = sample.one();
        mono = Monomial(n);
        sign = 1;
        in_term = false;
    };
    while (i < text.size()) {
        skip_ws();
        if (i >= text.size()) break;
        char c = text[i];
        if (c == '+') { flush(); sign = 1; ++i; expect_term = true; continue; }
        if (c == '-') {
            if (expect_term && !in_term) { sign = -sign; ++i; continue; }
            flush(); sign = -1; ++i; expect_term = true; continue;
        }
        if (c == '*') { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            long v = std::stol(text.substr(i, j - i));
            coeff = coeff * sample.from_int(v);
            in_term = true;
            expect_term = false;
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::size_t var = var_index(text.substr(i, j - i));
            i = j;
            unsigned e = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                std::size_t k = i;
                while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                if (k == i) throw std::invalid_argument("mpoly_parse: exponent expected");
                e = static_cast<unsigned>(std::stoul(text.substr(i, k - i)));
                i = k;
            }
            mono = mono.with_exp(var, static_cast<std::uint16_t>(mono[var] + e));
            in_term = true;
            expect_term = false;
            continue;
        }
        throw std::invalid_argument(std::string("mpoly_parse: unexpected character '") + c + "'");
    }
    flush();
    return out;
}

}  // namespace quintic
