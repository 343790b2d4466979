#include "dirac/ratfun.hpp"

namespace dirac {

RatFun::RatFun(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
        throw DomainError("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = ParamPoly::constant(den_.table(), den_.order(), Rational(1));
        return;
    }
    if (!den_.is_constant() || !num_.is_constant()) {
        ParamPoly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            auto qn = exact_divide(num_, g);
            auto qd = exact_divide(den_, g);
            if (!qn || !qd)
                throw InternalError("gcd does not divide rational-function parts");
            num_ = *qn;
            den_ = *qd;
        }
    }
    // Monic denominator fixes the representative within the unit class.
    Rational lc = den_.leading_coeff();
    if (!lc.is_one()) {
        Rational inv = lc.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Rational RatFun::evaluate(std::span<const Rational> point) const {
    Rational d = den_.evaluate(point);
    if (d.is_zero())
        throw DomainError("rational function evaluated at a denominator zero");
    return num_.evaluate(point) / d;
}

std::string RatFun::factor_str() const {
    if (den_is_one()) {
        if (num_.is_constant())
            return num_.is_zero() ? "0" : num_.leading_coeff().str();
        if (num_.term_count() == 1)
            return num_.str();
        return "(" + num_.str() + ")";
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::string RatFun::str() const {
    if (den_is_one())
        return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace dirac
