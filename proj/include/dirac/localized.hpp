#ifndef DIRAC_LOCALIZED_HPP
#define DIRAC_LOCALIZED_HPP

#include "dirac/poly_gcd.hpp"
#include "dirac/ring.hpp"

namespace dirac {

/// num/den with a denominator that is a unit on the constraint set (per the
/// active genericity certificate). Kept gcd-reduced with monic denominator.
struct LocalizedExpression {
    PhasePoly num;
    PhasePoly den;

    static LocalizedExpression from_poly(PhasePoly p, const Ring& ring) {
        if (p.table() != ring.vars())
            throw DomainError("localized expression from a different ring");
        PhasePoly one = ring.one(p.order());
        return LocalizedExpression{std::move(p), std::move(one)};
    }

    // gcd reduction above this size is skipped; the fraction stays valid,
    // only fatter
    static constexpr std::size_t kGcdTermLimit = 24;

    static LocalizedExpression make(PhasePoly n, PhasePoly d) {
        if (d.is_zero())
            throw DomainError("localized expression with zero denominator");
        LocalizedExpression e{std::move(n), std::move(d)};
        e.normalize();
        return e;
    }

    bool is_zero() const { return num.is_zero(); }
    bool den_is_one() const {
        return den.is_constant() && !den.is_zero() && den.leading_coeff().is_one();
    }

    LocalizedExpression operator+(const LocalizedExpression& o) const {
        return make(num * o.den + o.num * den, den * o.den);
    }
    LocalizedExpression operator-(const LocalizedExpression& o) const {
        return make(num * o.den - o.num * den, den * o.den);
    }
    LocalizedExpression operator*(const LocalizedExpression& o) const {
        return make(num * o.num, den * o.den);
    }
    LocalizedExpression operator/(const LocalizedExpression& o) const {
        if (o.num.is_zero())
            throw DomainError("division by a zero localized expression");
        return make(num * o.den, den * o.num);
    }
    LocalizedExpression operator-() const { return LocalizedExpression{-num, den}; }

    std::string str() const {
        if (den_is_one())
            return num.str();
        return "(" + num.str() + ")/(" + den.str() + ")";
    }

private:
    void normalize() {
        if (num.is_zero()) {
            RatFun one = den.leading_coeff() / den.leading_coeff();
            den = PhasePoly::constant(den.table(), den.order(), one);
            return;
        }
        if (!num.is_constant() && !den.is_constant()) {
            // Monomial content is cheap and covers most pivot denominators.
            Monomial cn = num.monomial_content();
            Monomial cd = den.monomial_content();
            Monomial gcm(num.table()->size());
            for (VarId v = 0; v < num.table()->size(); ++v)
                gcm.set_exp(v, std::min(cn.exp(v), cd.exp(v)));
            if (!gcm.is_one()) {
                num = num.divided_by_monomial(gcm);
                den = den.divided_by_monomial(gcm);
            }
        }
        if (!den.is_constant()) {
            if (auto q = exact_divide(num, den)) {
                num = std::move(*q);
                den = PhasePoly::constant(den.table(), den.order(),
                                          den.leading_coeff() / den.leading_coeff());
            } else if (!num.is_constant() && num.term_count() <= kGcdTermLimit &&
                       den.term_count() <= kGcdTermLimit) {
                // Full gcd only for genuinely small operands; an unreduced
                // fraction stays correct, just fatter.
                PhasePoly g = poly_gcd(num, den);
                if (!g.is_constant()) {
                    auto qn = exact_divide(num, g);
                    auto qd = exact_divide(den, g);
                    if (!qn || !qd)
                        throw InternalError("gcd does not divide localized-expression parts");
                    num = *qn;
                    den = *qd;
                }
            }
        }
        const RatFun& lc = den.leading_coeff();
        if (!lc.is_one()) {
            RatFun inv = lc.inverse();
            num = num.scaled(inv);
            den = den.scaled(inv);
        }
    }
};

} // namespace dirac

#endif
