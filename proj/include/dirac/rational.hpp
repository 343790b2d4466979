#ifndef DIRAC_RATIONAL_HPP
#define DIRAC_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "dirac/error.hpp"

namespace dirac {

/// Arbitrary-precision rational number in canonical form:
/// denominator > 0, gcd(|num|, den) = 1, zero is 0/1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d);
    static Rational from_string(const std::string& text);

    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    bool is_negative() const { return sgn(v_) < 0; }

    Rational inverse() const;
    Rational times_int(long k) const { return Rational(mpq_class(v_ * k)); }
    Rational abs() const { return is_negative() ? -*this : *this; }

    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }
    bool denominator_is_one() const { return v_.get_den() == 1; }

    /// Canonical rendering: "n" when den == 1, else "n/d".
    std::string str() const;

    // Coefficient-field rendering hooks used by Polynomial<K>.
    bool is_negative_lead() const { return is_negative(); }
    std::string factor_str() const { return str(); }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

} // namespace dirac

#endif
