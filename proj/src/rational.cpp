#include "dirac/rational.hpp"

namespace dirac {

Rational::Rational(long n, long d) {
    if (d == 0)
        throw DomainError("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::from_string(const std::string& text) {
    mpq_class v;
    if (v.set_str(text, 10) != 0)
        throw DomainError("malformed rational literal: " + text);
    if (v.get_den() == 0)
        throw DomainError("rational with zero denominator: " + text);
    v.canonicalize();
    Rational r;
    r.v_ = v;
    return r;
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero())
        throw DomainError("rational division by zero");
    return Rational(mpq_class(v_ / o.v_));
}

Rational Rational::inverse() const {
    if (is_zero())
        throw DomainError("inverse of zero rational");
    return Rational(mpq_class(1 / v_));
}

std::string Rational::str() const {
    if (denominator_is_one())
        return v_.get_num().get_str();
    return v_.get_str();
}

} // namespace dirac
