#ifndef DIRAC_RATFUN_HPP
#define DIRAC_RATFUN_HPP

#include <span>
#include <string>

#include "dirac/poly_gcd.hpp"
#include "dirac/polynomial.hpp"
#include "dirac/rational.hpp"

namespace dirac {

/// Polynomial in the declared model parameters with rational coefficients.
using ParamPoly = Polynomial<Rational>;

/// Element of the coefficient field Q(params): a reduced fraction of
/// parameter polynomials with monic denominator. Equality is structural on
/// the canonical form.
class RatFun {
public:
    RatFun(ParamPoly num, ParamPoly den);

    static RatFun constant(const TablePtr& params, const OrderPtr& order, const Rational& r) {
        return RatFun(ParamPoly::constant(params, order, r),
                      ParamPoly::constant(params, order, Rational(1)));
    }
    static RatFun parameter(const TablePtr& params, const OrderPtr& order, VarId v) {
        return RatFun(ParamPoly::variable(params, order, v, Rational(1)),
                      ParamPoly::constant(params, order, Rational(1)));
    }
    static RatFun from_poly(ParamPoly num) {
        ParamPoly one = ParamPoly::constant(num.table(), num.order(), Rational(1));
        return RatFun(std::move(num), std::move(one));
    }

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_is_one() && num_.is_constant() && !num_.is_zero() &&
                                 num_.leading_coeff().is_one(); }
    bool den_is_one() const {
        return den_.is_constant() && !den_.is_zero() && den_.leading_coeff().is_one();
    }
    bool is_rational_constant() const { return num_.is_constant() && den_is_one(); }

    RatFun operator+(const RatFun& o) const {
        return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFun operator-(const RatFun& o) const {
        return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RatFun operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }
    RatFun operator/(const RatFun& o) const {
        if (o.is_zero())
            throw DomainError("rational-function division by zero");
        return RatFun(num_ * o.den_, den_ * o.num_);
    }
    RatFun operator-() const {
        RatFun r = *this;
        r.num_ = -r.num_;
        return r;
    }

    RatFun inverse() const {
        if (is_zero())
            throw DomainError("inverse of zero rational function");
        return RatFun(den_, num_);
    }

    RatFun times_int(long k) const { return RatFun(num_.scaled(Rational(k)), den_); }

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    Rational evaluate(std::span<const Rational> point) const;

    bool is_negative_lead() const { return !num_.is_zero() && num_.leading_coeff().is_negative(); }

    /// Rendering suitable for juxtaposition with "*variable..." factors.
    std::string factor_str() const;
    /// Standalone rendering.
    std::string str() const;

private:
    ParamPoly num_;
    ParamPoly den_;
};

} // namespace dirac

#endif
