#ifndef DIRAC_POLY_GCD_HPP
#define DIRAC_POLY_GCD_HPP

#include <optional>
#include <vector>

#include "dirac/polynomial.hpp"

namespace dirac {

/// Single-divisor long division; returns the quotient when g divides f
/// exactly, nullopt otherwise.
template <class K>
std::optional<Polynomial<K>> exact_divide(const Polynomial<K>& f, const Polynomial<K>& g) {
    if (g.is_zero())
        return std::nullopt;
    Polynomial<K> q(f.table(), f.order());
    Polynomial<K> r = f;
    const K lc_inv = (g.leading_coeff() / g.leading_coeff()) / g.leading_coeff();
    while (!r.is_zero()) {
        if (!g.leading_monomial().divides(r.leading_monomial()))
            return std::nullopt;
        K c = r.leading_coeff() * lc_inv;
        Monomial m = r.leading_monomial().quotient_by(g.leading_monomial());
        Polynomial<K> piece =
            Polynomial<K>::constant(f.table(), f.order(), c).times_term(c / c, m);
        q = q + piece;
        r = r - g.times_term(c, m);
    }
    return q;
}

template <class K>
Polynomial<K> make_monic(const Polynomial<K>& f) {
    if (f.is_zero())
        return f;
    const K& lc = f.leading_coeff();
    if (lc.is_one())
        return f;
    return f.scaled((lc / lc) / lc);
}

namespace detail {

template <class K>
std::uint32_t main_var_degree(const Polynomial<K>& f, VarId v) {
    return f.degree_in(v);
}

/// Leading coefficient of f viewed as univariate in v (a polynomial free of v).
template <class K>
Polynomial<K> lead_coeff_in(const Polynomial<K>& f, VarId v) {
    std::uint32_t d = f.degree_in(v);
    std::vector<typename Polynomial<K>::Term> picked;
    for (const auto& t : f.terms()) {
        if (t.mono.exp(v) == d) {
            Monomial m = t.mono;
            m.set_exp(v, 0);
            picked.push_back({std::move(m), t.coeff});
        }
    }
    return Polynomial<K>(f.table(), f.order(), std::move(picked));
}

/// Coefficient polynomials of f as univariate in v, indexed by v-degree.
template <class K>
std::vector<Polynomial<K>> coeffs_in(const Polynomial<K>& f, VarId v) {
    std::uint32_t d = f.degree_in(v);
    std::vector<std::vector<typename Polynomial<K>::Term>> buckets(d + 1);
    for (const auto& t : f.terms()) {
        Monomial m = t.mono;
        std::uint32_t e = m.exp(v);
        m.set_exp(v, 0);
        buckets[e].push_back({std::move(m), t.coeff});
    }
    std::vector<Polynomial<K>> out;
    out.reserve(buckets.size());
    for (auto& b : buckets)
        out.emplace_back(f.table(), f.order(), std::move(b));
    return out;
}

template <class K>
Polynomial<K> pseudo_rem(Polynomial<K> f, const Polynomial<K>& g, VarId v) {
    const std::uint32_t dg = g.degree_in(v);
    const Polynomial<K> lg = lead_coeff_in(g, v);
    while (!f.is_zero() && f.degree_in(v) >= dg) {
        std::uint32_t df = f.degree_in(v);
        Polynomial<K> lf = lead_coeff_in(f, v);
        const K one = f.leading_coeff() / f.leading_coeff();
        Polynomial<K> shift =
            Polynomial<K>::variable(f.table(), f.order(), v, one, df - dg);
        f = f * lg - lf * shift * g;
        if (!f.is_zero() && f.degree_in(v) >= df && df >= dg) {
            // cancellation failed to lower the degree; cannot happen for a
            // correct pseudo-division step
            throw InternalError("pseudo-division failed to reduce degree");
        }
    }
    return f;
}

} // namespace detail

template <class K>
Polynomial<K> poly_gcd(Polynomial<K> f, Polynomial<K> g);

namespace detail {

/// gcd of the coefficients of f as univariate in v.
template <class K>
Polynomial<K> content_in(const Polynomial<K>& f, VarId v) {
    Polynomial<K> c(f.table(), f.order());
    for (Polynomial<K>& part : coeffs_in(f, v)) {
        if (part.is_zero())
            continue;
        c = c.is_zero() ? make_monic(part) : poly_gcd(c, part);
        if (c.is_constant())
            break;
    }
    return c;
}

} // namespace detail

/// Monic gcd over the coefficient field K via primitive pseudo-remainder
/// sequences with content/primitive-part recursion on a fixed variable order.
template <class K>
Polynomial<K> poly_gcd(Polynomial<K> f, Polynomial<K> g) {
    if (f.is_zero())
        return make_monic(g);
    if (g.is_zero())
        return make_monic(f);
    // Main variable: highest-index variable occurring in either operand.
    std::int64_t main = -1;
    for (VarId v : f.support_vars())
        main = std::max<std::int64_t>(main, v);
    for (VarId v : g.support_vars())
        main = std::max<std::int64_t>(main, v);
    if (main < 0) {
        // Both constants over a field.
        return make_monic(f);
    }
    VarId v = static_cast<VarId>(main);
    if (!f.contains_var(v) || !g.contains_var(v)) {
        // v occurs in only one operand: gcd divides the other's content in v.
        const Polynomial<K>& with = f.contains_var(v) ? f : g;
        const Polynomial<K>& without = f.contains_var(v) ? g : f;
        return poly_gcd(detail::content_in(with, v), without);
    }
    Polynomial<K> cf = detail::content_in(f, v);
    Polynomial<K> cg = detail::content_in(g, v);
    Polynomial<K> cont = poly_gcd(cf, cg);
    auto pf = exact_divide(f, cf);
    auto pg = exact_divide(g, cg);
    if (!pf || !pg)
        throw InternalError("content division failed in gcd");
    Polynomial<K> a = *pf, b = *pg;
    while (!b.is_zero()) {
        Polynomial<K> r = detail::pseudo_rem(a, b, v);
        a = b;
        if (r.is_zero()) {
            b = r;
        } else {
            Polynomial<K> cr = detail::content_in(r, v);
            auto pr = exact_divide(r, cr);
            if (!pr)
                throw InternalError("primitive part division failed in gcd");
            b = *pr;
        }
    }
    if (a.degree_in(v) == 0 && !a.is_constant()) {
        // remainder sequence collapsed below v; only the content survives
        return make_monic(cont);
    }
    if (a.is_constant())
        return make_monic(cont);
    return make_monic(cont * a);
}

/// Product of the distinct irreducible factors (characteristic 0).
template <class K>
Polynomial<K> squarefree_part(const Polynomial<K>& f) {
    if (f.is_zero() || f.is_constant())
        return make_monic(f);
    Polynomial<K> d = f;
    for (VarId v : f.support_vars())
        d = poly_gcd(d, f.diff(v));
    auto q = exact_divide(f, d);
    if (!q)
        throw InternalError("squarefree part: derived part does not divide");
    return make_monic(*q);
}

} // namespace dirac

#endif
