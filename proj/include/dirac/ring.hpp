#ifndef DIRAC_RING_HPP
#define DIRAC_RING_HPP

#include <memory>
#include <vector>

#include "dirac/ratfun.hpp"

namespace dirac {

using PhasePoly = Polynomial<RatFun>;

/// Shared context for a model's polynomial ring: the phase-space variable
/// table, the parameter table with nonzero assumptions, and the fixed
/// parameter order used by every coefficient.
class Ring {
public:
    Ring(TablePtr vars, TablePtr params, std::vector<std::uint8_t> param_nonzero)
        : vars_(std::move(vars)), params_(std::move(params)),
          param_nonzero_(std::move(param_nonzero)),
          param_order_(make_order(MonomialOrder::degrevlex())) {}

    const TablePtr& vars() const { return vars_; }
    const TablePtr& params() const { return params_; }
    const OrderPtr& param_order() const { return param_order_; }

    bool param_declared_nonzero(VarId p) const {
        return p < param_nonzero_.size() && param_nonzero_[p] != 0;
    }

    RatFun coeff_zero() const { return coeff_rational(Rational(0)); }
    RatFun coeff_one() const { return coeff_rational(Rational(1)); }
    RatFun coeff_rational(const Rational& r) const {
        return RatFun::constant(params_, param_order_, r);
    }
    RatFun coeff_param(VarId p) const { return RatFun::parameter(params_, param_order_, p); }

    PhasePoly zero(const OrderPtr& order) const { return PhasePoly(vars_, order); }
    PhasePoly one(const OrderPtr& order) const {
        return PhasePoly::constant(vars_, order, coeff_one());
    }
    PhasePoly constant(const OrderPtr& order, const RatFun& c) const {
        return PhasePoly::constant(vars_, order, c);
    }
    PhasePoly var(const OrderPtr& order, VarId v, std::uint32_t e = 1) const {
        return PhasePoly::variable(vars_, order, v, coeff_one(), e);
    }

    /// New ring whose variable table extends this one (parameters unchanged).
    std::shared_ptr<const Ring> extended(std::vector<VarInfo> extra) const {
        return std::make_shared<const Ring>(vars_->extended(std::move(extra)), params_,
                                            param_nonzero_);
    }

private:
    TablePtr vars_;
    TablePtr params_;
    std::vector<std::uint8_t> param_nonzero_;
    OrderPtr param_order_;
};

using RingPtr = std::shared_ptr<const Ring>;

} // namespace dirac

#endif
