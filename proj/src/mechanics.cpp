#include "dirac/mechanics.hpp"

namespace dirac {

PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g) {
    if (f.table() != g.table())
        throw DomainError("bracket operands from different tables");
    const TablePtr& table = f.table();
    PhasePoly acc(f.table(), f.order());
    for (VarId v = 0; v < table->size(); ++v) {
        if (table->role(v) != VarRole::Coordinate)
            continue;
        std::int32_t p = table->momentum_of(v);
        if (p < 0)
            continue;
        VarId pm = static_cast<VarId>(p);
        if (f.contains_var(v) && g.contains_var(pm))
            acc = acc + f.diff(v) * g.diff(pm);
        if (f.contains_var(pm) && g.contains_var(v))
            acc = acc - f.diff(pm) * g.diff(v);
    }
    return acc;
}

PhasePoly gauge_time_derivative(const PhasePoly& f) {
    const TablePtr& table = f.table();
    PhasePoly acc(f.table(), f.order());
    std::vector<PhasePoly::Term> raw;
    for (const auto& t : f.terms()) {
        for (VarId v = 0; v < table->size(); ++v) {
            std::uint32_t e = t.mono.exp(v);
            if (e == 0 || table->role(v) != VarRole::Gauge)
                continue;
            std::int32_t d = table->gauge_derivative_of(v);
            if (d < 0)
                throw InternalError("missing derivative symbol for gauge function '" +
                                    table->name(v) + "'");
            Monomial m = t.mono;
            m.set_exp(v, e - 1);
            m.set_exp(static_cast<VarId>(d), m.exp(static_cast<VarId>(d)) + 1);
            raw.push_back({std::move(m), t.coeff.times_int(static_cast<long>(e))});
        }
    }
    return PhasePoly(f.table(), f.order(), std::move(raw));
}

LegendreSystem legendre_system(const DegenerateModel& model, MonomialOrder::Kind inner,
                               const ResourceBudget& budget, Certificate* cert) {
    const Ring& ring = *model.ring;
    OrderPtr block = make_elimination_order(model.velocities, ring.vars()->size(), inner);
    Ideal ideal;
    PhasePoly lagr = model.lagrangian.with_order(block);
    for (std::size_t i = 0; i < model.dimension(); ++i) {
        PhasePoly p = ring.var(block, model.momenta[i]);
        ideal.generators.push_back(p - lagr.diff(model.velocities[i]));
    }
    LegendreSystem sys{ideal, buchberger(ideal, model.ring, false, budget, cert), block};
    return sys;
}

PhasePoly canonical_hamiltonian(const DegenerateModel& model, const LegendreSystem& legendre) {
    const Ring& ring = *model.ring;
    const OrderPtr& block = legendre.block_order;
    PhasePoly energy(ring.vars(), block);
    for (std::size_t i = 0; i < model.dimension(); ++i)
        energy = energy + ring.var(block, model.momenta[i]) * ring.var(block, model.velocities[i]);
    energy = energy - model.lagrangian.with_order(block);
    PhasePoly hc = nf(energy, legendre.gb);
    for (VarId v : model.velocities)
        if (hc.contains_var(v))
            throw InternalError("canonical Hamiltonian contains velocity '" +
                                ring.vars()->name(v) + "'; the elimination order is broken");
    return hc;
}

int hessian_rank(const DegenerateModel& model) {
    const Ring& ring = *model.ring;
    OrderPtr order = model.lagrangian.order();
    std::vector<std::vector<PhasePoly>> H;
    for (std::size_t i = 0; i < model.dimension(); ++i) {
        std::vector<PhasePoly> row;
        for (std::size_t j = 0; j < model.dimension(); ++j)
            row.push_back(model.lagrangian.diff(model.velocities[i]).diff(model.velocities[j]));
        H.push_back(std::move(row));
    }
    QuotientMatrix M = make_quotient_matrix(std::move(H), nullptr);
    Certificate scratch;
    return matrix_rank_mod(M, ring, scratch);
}

LocalizedExpression dirac_bracket(const PhasePoly& f, const PhasePoly& g,
                                  const SecondClassData& sc, const GroebnerBasis* reduce_mod,
                                  const Ring& ring, Certificate& cert) {
    PhasePoly pb = poisson_bracket(f, g);
    if (sc.constraints.empty())
        return LocalizedExpression::from_poly(reduce_mod ? nf(pb, *reduce_mod) : pb, ring);
    const std::size_t r = sc.constraints.size();
    std::vector<PhasePoly> rhs;
    rhs.reserve(r);
    for (const PhasePoly& chi : sc.constraints)
        rhs.push_back(poisson_bracket(chi, g));
    std::vector<LocalizedExpression> lambda =
        solve_square_mod(sc.C, rhs, sc.sigma.get(), ring, cert);
    LocalizedExpression acc = LocalizedExpression::from_poly(pb, ring);
    for (std::size_t a = 0; a < r; ++a) {
        if (lambda[a].is_zero())
            continue;
        PhasePoly left = poisson_bracket(f, sc.constraints[a]);
        if (left.is_zero())
            continue;
        acc = acc - LocalizedExpression::from_poly(left, ring) * lambda[a];
    }
    if (reduce_mod)
        acc = LocalizedExpression::make(nf(acc.num, *reduce_mod), acc.den);
    return acc;
}

} // namespace dirac
