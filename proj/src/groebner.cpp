#include "dirac/groebner.hpp"

#include <algorithm>
#include <set>

namespace dirac {

bool GroebnerBasis::is_trivial() const {
    return basis_.size() == 1 && basis_[0].is_constant() && !basis_[0].is_zero();
}

NormalFormResult normal_form(const PhasePoly& f, std::span<const PhasePoly> reducers, bool track,
                             BudgetTracker* budget) {
    PhasePoly p = f;
    PhasePoly remainder(f.table(), f.order());
    std::vector<PhasePoly::Term> rem_terms;
    std::vector<PhasePoly> quotients;
    if (track)
        quotients.assign(reducers.size(), PhasePoly(f.table(), f.order()));
    while (!p.is_zero()) {
        if (budget)
            budget->charge(1);
        bool reduced = false;
        for (std::size_t i = 0; i < reducers.size(); ++i) {
            const PhasePoly& g = reducers[i];
            if (g.is_zero())
                continue;
            if (!g.leading_monomial().divides(p.leading_monomial()))
                continue;
            RatFun c = p.leading_coeff() / g.leading_coeff();
            Monomial m = p.leading_monomial().quotient_by(g.leading_monomial());
            p = p - g.times_term(c, m);
            if (budget)
                budget->charge(p.term_count());
            if (track) {
                PhasePoly piece =
                    PhasePoly::constant(f.table(), f.order(), c).times_term(c / c, m);
                quotients[i] = quotients[i] + piece;
            }
            reduced = true;
            break;
        }
        if (!reduced) {
            rem_terms.push_back(p.leading_term());
            p = p - PhasePoly(f.table(), f.order(), {p.leading_term()});
        }
    }
    remainder = PhasePoly(f.table(), f.order(), std::move(rem_terms));
    return NormalFormResult{std::move(remainder), std::move(quotients)};
}

NormalFormResult normal_form(const PhasePoly& f, const GroebnerBasis& gb, bool track) {
    return normal_form(f, gb.basis(), track);
}

PhasePoly nf(const PhasePoly& f, const GroebnerBasis& gb) {
    return normal_form(f, gb.basis(), false).remainder;
}

namespace {

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

PhasePoly monicize(const PhasePoly& p, std::vector<PhasePoly>* cof_row, const RingPtr& ring,
                   Certificate* cert) {
    if (p.is_zero() || p.leading_coeff().is_one())
        return p;
    const RatFun& lc = p.leading_coeff();
    if (cert && ring)
        cert->record_param_divisor(lc.num(), *ring);
    RatFun inv = lc.inverse();
    if (cof_row)
        for (PhasePoly& q : *cof_row)
            q = q.scaled(inv);
    return p.scaled(inv);
}

} // namespace

GroebnerBasis buchberger(const Ideal& ideal, const RingPtr& ring, bool track_cofactors,
                         const ResourceBudget& budget, Certificate* cert) {
    GroebnerBasis out;
    BudgetTracker tracker(budget);

    std::vector<PhasePoly> gens;
    for (const PhasePoly& g : ideal.generators)
        if (!g.is_zero())
            gens.push_back(g);
    if (gens.empty()) {
        if (!ideal.generators.empty())
            out.order_ = ideal.generators[0].order();
        out.generators_ = ideal.generators;
        return out;
    }
    const OrderPtr order = gens[0].order();
    const TablePtr table = gens[0].table();
    for (const PhasePoly& g : gens)
        if (g.table() != table || !(*g.order() == *order))
            throw DomainError("generators disagree on table or order");

    std::vector<PhasePoly> basis;
    std::vector<std::vector<PhasePoly>> cof; // cof[i][j]: basis[i] over gens[j]
    auto zero = [&] { return PhasePoly(table, order); };
    auto one_poly = [&] { return PhasePoly::constant(table, order, gens[0].leading_coeff() /
                                                                        gens[0].leading_coeff()); };

    // Pending pair set ordered by (lcm, i, j) under the active order.
    auto pair_less = [&](const Pair& a, const Pair& b) {
        auto c = order->compare(a.lcm, b.lcm);
        if (c != 0)
            return c < 0;
        if (a.i != b.i)
            return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<Pair> pending;
    auto push_pairs_for = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i)
            pending.push_back(Pair{i, n, Monomial::lcm(basis[i].leading_monomial(),
                                                       basis[n].leading_monomial())});
    };
    auto is_pending = [&](std::size_t a, std::size_t b) {
        for (const Pair& p : pending)
            if ((p.i == a && p.j == b) || (p.i == b && p.j == a))
                return true;
        return false;
    };

    for (std::size_t j = 0; j < gens.size(); ++j) {
        std::vector<PhasePoly> row;
        if (track_cofactors) {
            row.assign(gens.size(), zero());
            row[j] = one_poly();
        }
        PhasePoly g = monicize(gens[j], track_cofactors ? &row : nullptr, ring, cert);
        basis.push_back(std::move(g));
        if (track_cofactors)
            cof.push_back(std::move(row));
        push_pairs_for(basis.size() - 1);
    }

    while (!pending.empty()) {
        tracker.check_polys(basis.size());
        auto it = std::min_element(pending.begin(), pending.end(), pair_less);
        Pair pr = *it;
        pending.erase(it);

        const Monomial& ltI = basis[pr.i].leading_monomial();
        const Monomial& ltJ = basis[pr.j].leading_monomial();
        // Product criterion: coprime leading terms reduce to zero.
        if (pr.lcm == ltI * ltJ)
            continue;
        // Chain criterion: a third element dividing the lcm whose pairs with
        // both ends were already treated.
        bool skip = false;
        for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j)
                continue;
            if (basis[k].leading_monomial().divides(pr.lcm) && !is_pending(pr.i, k) &&
                !is_pending(pr.j, k))
                skip = true;
        }
        if (skip)
            continue;

        RatFun one = basis[pr.i].leading_coeff() / basis[pr.i].leading_coeff();
        Monomial mi = pr.lcm.quotient_by(ltI);
        Monomial mj = pr.lcm.quotient_by(ltJ);
        PhasePoly s = basis[pr.i].times_term(one, mi) - basis[pr.j].times_term(one, mj);
        tracker.charge(s.term_count());
        NormalFormResult red = normal_form(s, basis, track_cofactors, &tracker);
        if (red.remainder.is_zero())
            continue;
        std::vector<PhasePoly> row;
        if (track_cofactors) {
            row.assign(gens.size(), zero());
            for (std::size_t j = 0; j < gens.size(); ++j) {
                PhasePoly acc = cof[pr.i][j].times_term(one, mi) - cof[pr.j][j].times_term(one, mj);
                for (std::size_t k = 0; k < basis.size(); ++k)
                    if (!red.quotients[k].is_zero())
                        acc = acc - red.quotients[k] * cof[k][j];
                row[j] = std::move(acc);
            }
        }
        PhasePoly r = monicize(red.remainder, track_cofactors ? &row : nullptr, ring, cert);
        basis.push_back(std::move(r));
        if (track_cofactors)
            cof.push_back(std::move(row));
        push_pairs_for(basis.size() - 1);
    }

    // Minimalisation: drop elements whose leading term is divisible by the
    // leading term of another kept element. Ascending scan keeps divisors.
    std::vector<std::size_t> idx(basis.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        auto c = order->compare(basis[a].leading_monomial(), basis[b].leading_monomial());
        if (c != 0)
            return c < 0;
        return a < b;
    });
    std::vector<std::size_t> kept;
    for (std::size_t i : idx) {
        bool redundant = false;
        for (std::size_t k : kept)
            if (basis[k].leading_monomial().divides(basis[i].leading_monomial())) {
                redundant = true;
                break;
            }
        if (!redundant)
            kept.push_back(i);
    }

    std::vector<PhasePoly> final_basis;
    std::vector<std::vector<PhasePoly>> final_cof;
    for (std::size_t k : kept) {
        final_basis.push_back(basis[k]);
        if (track_cofactors)
            final_cof.push_back(cof[k]);
    }

    // Autoreduction: fully reduce each element against the others. Leading
    // terms are untouched in a minimal basis, so one pass suffices.
    for (std::size_t i = 0; i < final_basis.size(); ++i) {
        std::vector<PhasePoly> others;
        std::vector<std::size_t> map;
        for (std::size_t k = 0; k < final_basis.size(); ++k)
            if (k != i) {
                others.push_back(final_basis[k]);
                map.push_back(k);
            }
        NormalFormResult red = normal_form(final_basis[i], others, track_cofactors, &tracker);
        if (track_cofactors) {
            for (std::size_t t = 0; t < others.size(); ++t) {
                if (red.quotients[t].is_zero())
                    continue;
                for (std::size_t j = 0; j < gens.size(); ++j)
                    final_cof[i][j] = final_cof[i][j] - red.quotients[t] * final_cof[map[t]][j];
            }
        }
        final_basis[i] = std::move(red.remainder);
    }

    out.order_ = order;
    out.basis_ = std::move(final_basis);
    if (track_cofactors) {
        out.cofactors_ = std::move(final_cof);
        out.generators_ = gens;
    }
    // A unit in the basis means the trivial ideal; canonical form is {1}.
    for (std::size_t i = 0; i < out.basis_.size(); ++i) {
        if (out.basis_[i].is_constant() && !out.basis_[i].is_zero()) {
            PhasePoly unit = out.basis_[i];
            std::vector<PhasePoly> unit_cof;
            if (track_cofactors)
                unit_cof = out.cofactors_[i];
            out.basis_ = {std::move(unit)};
            if (track_cofactors)
                out.cofactors_ = {std::move(unit_cof)};
            break;
        }
    }
    return out;
}

std::vector<PhasePoly> elimination_ideal(const GroebnerBasis& gb, std::span<const VarId> keep) {
    if (gb.basis().empty())
        return {};
    const TablePtr& table = gb.basis()[0].table();
    std::vector<char> allowed(table->size(), 0);
    for (VarId v : keep)
        allowed[v] = 1;
    std::vector<VarId> complement;
    for (VarId v = 0; v < table->size(); ++v)
        if (!allowed[v])
            complement.push_back(v);
    if (!gb.order()->eliminates(complement, table->size()))
        throw DomainError("order does not eliminate the complement of the kept variables");
    std::vector<PhasePoly> out;
    for (const PhasePoly& g : gb.basis())
        if (g.supported_within(allowed))
            out.push_back(g);
    return out;
}

bool ideal_membership(const PhasePoly& f, const GroebnerBasis& gb) {
    return nf(f, gb).is_zero();
}

bool radical_membership(const PhasePoly& f, const Ideal& ideal, const RingPtr& ring,
                        const ResourceBudget& budget) {
    if (f.is_zero())
        return true;
    // Fresh slack variable for the Rabinowitsch trick.
    std::string slack = "t_rad";
    while (ring->vars()->find(slack))
        slack += "_";
    RingPtr ext = ring->extended({VarInfo{slack, VarRole::Aux, -1, -1, 0}});
    OrderPtr order = make_order(MonomialOrder::degrevlex());
    VarId t = ext->vars()->require(slack);

    Ideal lifted;
    for (const PhasePoly& g : ideal.generators)
        lifted.generators.push_back(g.lifted(ext->vars(), order));
    PhasePoly tf = f.lifted(ext->vars(), order) * ext->var(order, t);
    lifted.generators.push_back(ext->one(order) - tf);
    GroebnerBasis gb = buchberger(lifted, ext, false, budget, nullptr);
    return gb.is_trivial();
}

std::vector<PhasePoly> express_in_generators(const GroebnerBasis& gb, const NormalFormResult& nfr) {
    if (!gb.has_cofactors())
        throw DomainError("basis was computed without cofactors");
    const std::size_t ngens = gb.original_generators().size();
    std::vector<PhasePoly> out;
    if (gb.basis().empty())
        return out;
    const PhasePoly& sample = gb.basis()[0];
    out.assign(ngens, PhasePoly(sample.table(), sample.order()));
    for (std::size_t i = 0; i < gb.basis().size(); ++i) {
        if (i >= nfr.quotients.size() || nfr.quotients[i].is_zero())
            continue;
        for (std::size_t j = 0; j < ngens; ++j)
            out[j] = out[j] + nfr.quotients[i] * gb.cofactors()[i][j];
    }
    return out;
}

} // namespace dirac
