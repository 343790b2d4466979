#ifndef DIRAC_MECHANICS_HPP
#define DIRAC_MECHANICS_HPP

#include "dirac/groebner.hpp"
#include "dirac/localized.hpp"
#include "dirac/model.hpp"
#include "dirac/quotient_linalg.hpp"

namespace dirac {

/// Canonical Poisson bracket {f,g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i).
/// Multipliers, gauge symbols and velocities have no conjugate partners and
/// behave as constants.
PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g);

/// Formal explicit time derivative: gauge symbols are mapped to their next
/// derivative symbol (Leibniz over monomials); everything else is constant.
PhasePoly gauge_time_derivative(const PhasePoly& f);

/// Legendre ideal <p_i - dL/ddot(q_i)> under the velocity-elimination block
/// order, together with its Groebner basis.
struct LegendreSystem {
    Ideal ideal;
    GroebnerBasis gb;
    OrderPtr block_order;
};

LegendreSystem legendre_system(const DegenerateModel& model, MonomialOrder::Kind inner,
                               const ResourceBudget& budget = {}, Certificate* cert = nullptr);

/// NF(p.qdot - L) modulo the Legendre basis; must be velocity-free.
PhasePoly canonical_hamiltonian(const DegenerateModel& model, const LegendreSystem& legendre);

/// Symbolic rank of the Hessian d^2 L / ddot(q) ddot(q).
int hessian_rank(const DegenerateModel& model);

/// Second-class constraint data needed to evaluate Dirac brackets: the
/// constraints, their bracket matrix C_{ab} = {chi_a, chi_b} mod Sigma
/// (invertible on Sigma), and the constraint basis the inversion works modulo.
struct SecondClassData {
    std::vector<PhasePoly> constraints;
    std::vector<std::vector<PhasePoly>> C;
    std::shared_ptr<const GroebnerBasis> sigma;
};

/// {f,g}_D = {f,g} - {f,chi_a} C^-1_{ab} {chi_b,g}. The C-inverse application
/// is an exact quotient-field solve C*lambda = {chi,g}; pivot denominators are
/// certified. The numerator is reduced modulo `reduce_mod` when given.
LocalizedExpression dirac_bracket(const PhasePoly& f, const PhasePoly& g,
                                  const SecondClassData& sc, const GroebnerBasis* reduce_mod,
                                  const Ring& ring, Certificate& cert);

} // namespace dirac

#endif
