#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include "arith.hpp"

namespace quintic {

// Exact rational domain backed by GMP. Thin wrapper so rationals satisfy the
// same element interface as Fp / PadicNum (zero()/one()/from_int()/inv()).
class Rational {
public:
    Rational() : q_(0) {}
    Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    Rational(const Int& n) : q_(n) {}
    Rational(long n) : q_(n) {}
    Rational(const Int& num, const Int& den) : q_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }

    const mpq_class& value() const { return q_; }
    Int numerator() const { return q_.get_num(); }
    Int denominator() const { return q_.get_den(); }

    Rational zero() const { return Rational(0L); }
    Rational one() const { return Rational(1L); }
    Rational from_int(std::int64_t n) const { return Rational(static_cast<long>(n)); }

    bool is_zero() const { return q_ == 0; }
    bool is_unit() const { return q_ != 0; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(q_ / o.q_));
    }
    Rational inv() const { return one() / *this; }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    std::string str() const { return q_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& a) {
        return os << a.q_.get_str();
    }

private:
    mpq_class q_;
};

}  // namespace quintic
