#include "dirac/certificate.hpp"

#include "dirac/poly_gcd.hpp"

namespace dirac {

void Certificate::add(std::string text, CertEntry::Kind kind) {
    if (seen_.insert(text).second)
        entries_.push_back(CertEntry{std::move(text), kind});
}

void Certificate::merge(const Certificate& other) {
    for (const CertEntry& e : other.entries_)
        add(e.text, e.kind);
}

void Certificate::record_param_divisor(const ParamPoly& p, const Ring& ring) {
    if (p.is_zero())
        throw DomainError("division by the zero parameter polynomial");
    if (p.is_constant())
        return; // rational units need no assumption
    if (p.term_count() == 1) {
        // Monomial: each parameter factor separately.
        const Monomial& m = p.leading_monomial();
        for (VarId v = 0; v < ring.params()->size(); ++v) {
            if (m.exp(v) == 0)
                continue;
            add(ring.params()->name(v), ring.param_declared_nonzero(v)
                                            ? CertEntry::Kind::ParamAssumption
                                            : CertEntry::Kind::GenericNonzero);
        }
        return;
    }
    ParamPoly sf = squarefree_part(p);
    add(sf.str(), CertEntry::Kind::GenericNonzero);
}

void Certificate::record_phase_divisor(const PhasePoly& p, const Ring& ring,
                                       const VanishTest& vanishes) {
    if (p.is_zero())
        throw DomainError("division by the zero polynomial");
    if (p.is_constant()) {
        record_param_divisor(p.leading_coeff().num(), ring);
        return;
    }

    // Parameter content: clear coefficient denominators (units), then take the
    // gcd of the numerators.
    ParamPoly content(ring.params(), ring.param_order());
    ParamPoly lcm_den = ParamPoly::constant(ring.params(), ring.param_order(), Rational(1));
    for (const auto& t : p.terms()) {
        auto g = poly_gcd(lcm_den, t.coeff.den());
        auto extra = exact_divide(t.coeff.den(), g);
        if (!extra)
            throw InternalError("denominator lcm failed");
        lcm_den = lcm_den * *extra;
    }
    std::vector<PhasePoly::Term> cleared_terms;
    for (const auto& t : p.terms()) {
        auto q = exact_divide(lcm_den, t.coeff.den());
        if (!q)
            throw InternalError("denominator clearing failed");
        ParamPoly num = t.coeff.num() * *q;
        content = content.is_zero() ? make_monic(num) : poly_gcd(content, num);
        cleared_terms.push_back({t.mono, RatFun::from_poly(std::move(num))});
    }
    record_param_divisor(content, ring);

    PhasePoly cleared(p.table(), p.order(), std::move(cleared_terms));

    // Monomial content over phase variables: minimum exponent per variable.
    std::vector<std::uint32_t> minexp(p.table()->size(), UINT32_MAX);
    for (const auto& t : cleared.terms())
        for (VarId v = 0; v < p.table()->size(); ++v)
            minexp[v] = std::min(minexp[v], t.mono.exp(v));
    Monomial shift(p.table()->size());
    for (VarId v = 0; v < p.table()->size(); ++v) {
        if (minexp[v] == UINT32_MAX)
            minexp[v] = 0;
        if (minexp[v] > 0) {
            PhasePoly varpoly = PhasePoly::variable(p.table(), p.order(), v, ring.coeff_one());
            if (vanishes(varpoly))
                throw InternalError("certificate polynomial '" + p.table()->name(v) +
                                    "' vanishes on the constraint set");
            add(p.table()->name(v), CertEntry::Kind::GenericNonzero);
            shift.set_exp(v, minexp[v]);
        }
    }
    std::vector<PhasePoly::Term> primitive_terms;
    for (const auto& t : cleared.terms())
        primitive_terms.push_back({t.mono.quotient_by(shift), t.coeff});
    PhasePoly primitive(p.table(), p.order(), std::move(primitive_terms));

    if (primitive.is_constant())
        return;
    // Squarefree refinement is worthwhile only at moderate size; a raw entry
    // is still a valid nonvanishing assumption.
    PhasePoly sf = primitive.term_count() <= 64 ? make_monic(squarefree_part(primitive))
                                                : make_monic(primitive);
    if (sf.is_constant())
        return;
    if (vanishes(sf))
        throw InternalError("certificate polynomial '" + sf.str() +
                            "' vanishes on the constraint set");
    add(sf.str(), CertEntry::Kind::GenericNonzero);
}

} // namespace dirac
