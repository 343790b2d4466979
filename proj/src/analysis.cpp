#include "dirac/analysis.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>

namespace dirac {

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string fresh_name(const VariableTable& table, std::string base) {
    while (table.find(base))
        base += "_";
    return base;
}

/// Splits an (NF-reduced) polynomial into c0 + sum_a c_a * U_a.
struct MultiplierDecomposition {
    PhasePoly c0;
    std::map<VarId, PhasePoly> linear; // multiplier var -> coefficient
};

MultiplierDecomposition decompose_multipliers(const PhasePoly& h) {
    const TablePtr& table = h.table();
    MultiplierDecomposition out{PhasePoly(h.table(), h.order()), {}};
    std::vector<PhasePoly::Term> c0_terms;
    std::map<VarId, std::vector<PhasePoly::Term>> lin_terms;
    for (const auto& t : h.terms()) {
        VarId uvar = 0;
        std::uint32_t udeg = 0;
        for (VarId v = 0; v < table->size(); ++v) {
            if (table->role(v) != VarRole::Multiplier)
                continue;
            std::uint32_t e = t.mono.exp(v);
            if (e == 0)
                continue;
            udeg += e;
            uvar = v;
        }
        if (udeg == 0) {
            c0_terms.push_back(t);
        } else if (udeg == 1) {
            Monomial m = t.mono;
            m.set_exp(uvar, 0);
            lin_terms[uvar].push_back({std::move(m), t.coeff});
        } else {
            throw InternalError("consistency condition is nonlinear in the multipliers");
        }
    }
    out.c0 = PhasePoly(h.table(), h.order(), std::move(c0_terms));
    for (auto& [v, terms] : lin_terms)
        out.linear.emplace(v, PhasePoly(h.table(), h.order(), std::move(terms)));
    return out;
}

/// Row-reduction over the quotient field with LocalizedExpression entries.
/// Unknowns are actual ring variables so free unknowns can appear in solved
/// expressions. Entries are weak-reduced modulo `modulus` as they are formed.
struct FractionSolver {
    const Ring& ring;
    OrderPtr order;
    const GroebnerBasis* modulus;
    Certificate& cert;
    std::vector<VarId> unknowns;
    std::vector<std::vector<LocalizedExpression>> A;
    std::vector<LocalizedExpression> b;

    LocalizedExpression reduce(LocalizedExpression e) const {
        if (modulus)
            e = LocalizedExpression::make(nf(e.num, *modulus), e.den);
        return e;
    }
    bool weakly_zero_le(const LocalizedExpression& e) const {
        return weakly_zero(e.num, modulus);
    }

    struct Result {
        std::vector<std::optional<LocalizedExpression>> solution; // per unknown
        std::vector<std::size_t> pivot_rows;                      // per unknown (or npos)
        std::vector<std::string> residuals; // weakly nonzero unpivoted rows
    };

    Result solve() {
        const std::size_t n = unknowns.size();
        const std::size_t m = A.size();
        std::vector<bool> row_used(m, false);
        std::vector<std::size_t> pivot_row(n, SIZE_MAX);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t best = SIZE_MAX;
            for (std::size_t r = 0; r < m; ++r) {
                if (row_used[r] || weakly_zero_le(A[r][col]))
                    continue;
                if (best == SIZE_MAX ||
                    A[r][col].num.term_count() < A[best][col].num.term_count())
                    best = r;
            }
            if (best == SIZE_MAX)
                continue;
            pivot_row[col] = best;
            row_used[best] = true;
            LocalizedExpression p = A[best][col];
            cert.record_phase_divisor(p.num, ring,
                                      [&](const PhasePoly& q) { return weakly_zero(q, modulus); });
            for (std::size_t c = 0; c < n; ++c)
                A[best][c] = reduce(A[best][c] / p);
            b[best] = reduce(b[best] / p);
            for (std::size_t r = 0; r < m; ++r) {
                if (r == best || weakly_zero_le(A[r][col]))
                    continue;
                LocalizedExpression f = A[r][col];
                for (std::size_t c = 0; c < n; ++c)
                    A[r][c] = reduce(A[r][c] - f * A[best][c]);
                b[r] = reduce(b[r] - f * b[best]);
            }
        }
        Result out;
        out.solution.assign(n, std::nullopt);
        out.pivot_rows = pivot_row;
        for (std::size_t col = 0; col < n; ++col) {
            if (pivot_row[col] == SIZE_MAX)
                continue;
            std::size_t r = pivot_row[col];
            LocalizedExpression val = b[r];
            for (std::size_t c = 0; c < n; ++c) {
                if (c == col || weakly_zero_le(A[r][c]))
                    continue;
                LocalizedExpression var =
                    LocalizedExpression::from_poly(ring.var(order, unknowns[c]), ring);
                val = reduce(val - A[r][c] * var);
            }
            out.solution[col] = val;
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (row_used[r])
                continue;
            bool allzero = true;
            for (std::size_t c = 0; c < n; ++c)
                allzero = allzero && weakly_zero_le(A[r][c]);
            if (allzero && !weakly_zero_le(b[r]))
                out.residuals.push_back(b[r].str());
        }
        return out;
    }
};

struct Engine {
    Analysis a;
    const AnalysisOptions& opts;
    OrderPtr base_order;

    Engine(DegenerateModel model, const AnalysisOptions& options)
        : a{std::move(model), options}, opts(options) {}

    const Ring& ring() const { return *a.ring; }
    const OrderPtr& order() const { return a.order; }

    bool weak_zero(const PhasePoly& p, const GroebnerBasis& gb,
                   const std::vector<Constraint>& cs) const {
        if (nf(p, gb).is_zero())
            return true;
        if (opts.weak == WeakEqualityMode::Radical) {
            Ideal ideal;
            for (const Constraint& c : cs)
                ideal.generators.push_back(c.poly);
            return radical_membership(p, ideal, a.ring, opts.budget);
        }
        return false;
    }

    GroebnerBasis constraint_gb(const std::vector<PhasePoly>& polys, bool track = false) {
        Ideal ideal{polys};
        return buchberger(ideal, a.ring, track, opts.budget, &a.certificate);
    }

    std::vector<PhasePoly> constraint_polys() const {
        std::vector<PhasePoly> out;
        for (const Constraint& c : a.constraints)
            out.push_back(c.poly);
        return out;
    }

    // ------------------------------------------------------------------
    // Stage 1: primary constraints
    // ------------------------------------------------------------------
    void primaries() {
        auto t0 = Clock::now();
        a.hessian_rank = hessian_rank(a.model);
        LegendreSystem legendre = legendre_system(a.model, opts.inner_order, opts.budget, nullptr);
        a.timings_ms.emplace_back("legendre", ms_since(t0));

        t0 = Clock::now();
        const Ring& base = *a.model.ring;
        std::vector<VarId> keep;
        for (VarId v = 0; v < base.vars()->size(); ++v)
            if (base.vars()->role(v) != VarRole::Velocity)
                keep.push_back(v);
        std::vector<PhasePoly> candidates = elimination_ideal(legendre.gb, keep);

        // Radical adjustment: squarefree part for generators univariate in a
        // single variable, reported when it changes anything.
        for (PhasePoly& c : candidates) {
            if (c.support_vars().size() != 1)
                continue;
            PhasePoly sf = squarefree_part(c);
            if (!(sf == make_monic(c))) {
                a.warnings.push_back("primary constraint '" + c.str() +
                                     "' replaced by its squarefree part '" + sf.str() + "'");
                c = sf;
            }
        }
        // Independence filter: drop members implied by the rest (radical
        // membership), scanning until stable.
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                Ideal rest;
                for (std::size_t j = 0; j < candidates.size(); ++j)
                    if (j != i)
                        rest.generators.push_back(candidates[j]);
                if (rest.generators.empty())
                    break;
                if (radical_membership(candidates[i], rest, a.model.ring, opts.budget)) {
                    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
            }
        }

        // Extend the ring with one multiplier per primary, then admit the
        // canonical (monic NF) forms over the extended ring.
        std::vector<VarInfo> extra;
        std::vector<std::string> mult_names;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::string name = fresh_name(*base.vars(), "U" + std::to_string(i + 1));
            mult_names.push_back(name);
            extra.push_back(VarInfo{name, VarRole::Multiplier, -1, -1, 0});
        }
        a.ring = base.extended(std::move(extra));
        a.order = make_order(opts.inner_order == MonomialOrder::Kind::Lex
                                 ? MonomialOrder::lex()
                                 : MonomialOrder::degrevlex());

        std::vector<PhasePoly> admitted;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            PhasePoly lifted = candidates[i].lifted(a.ring->vars(), a.order);
            GroebnerBasis gb = constraint_gb(admitted);
            PhasePoly h = nf(lifted, gb);
            if (h.is_zero())
                continue;
            h = make_monic(h);
            admitted.push_back(h);
            Constraint c{h, 1, Constraint::Class::Unresolved,
                         "phi1_" + std::to_string(admitted.size()),
                         "legendre elimination"};
            a.constraints.push_back(std::move(c));
        }
        for (std::size_t i = 0; i < a.constraints.size(); ++i) {
            MultiplierInfo m;
            m.name = mult_names[i];
            m.var = a.ring->vars()->require(mult_names[i]);
            m.primary = a.constraints[i].name;
            a.multipliers.push_back(std::move(m));
        }

        const int expected = static_cast<int>(a.model.dimension()) - a.hessian_rank;
        if (expected != static_cast<int>(a.constraints.size()))
            a.warnings.push_back(
                "primary constraint count " + std::to_string(a.constraints.size()) +
                " does not match dimension - hessian rank = " + std::to_string(expected));

        a.h_canonical = canonical_hamiltonian(a.model, legendre)
                            .lifted(a.ring->vars(), a.order);
        a.timings_ms.emplace_back("primary", ms_since(t0));
    }

    // ------------------------------------------------------------------
    // Stage 2: consistency completion
    // ------------------------------------------------------------------
    struct SweepRows {
        std::vector<PhasePoly> direct;                 // U-free nonzero conditions
        std::vector<std::pair<std::vector<PhasePoly>, PhasePoly>> usys; // (coeff per U, c0)
    };

    PhasePoly total_hamiltonian() const {
        PhasePoly ht = *a.h_canonical;
        for (std::size_t i = 0; i < a.constraints.size(); ++i) {
            if (a.constraints[i].generation != 1)
                continue;
            ht = ht + ring().var(order(), a.multipliers[i].var) * a.constraints[i].poly;
        }
        return ht;
    }

    SweepRows sweep_rows(const GroebnerBasis& gb, const PhasePoly& ht) {
        SweepRows out;
        const std::size_t nu = a.multipliers.size();
        for (const Constraint& c : a.constraints) {
            PhasePoly h = nf(poisson_bracket(c.poly, ht), gb);
            if (h.is_zero())
                continue;
            MultiplierDecomposition d = decompose_multipliers(h);
            bool has_u = false;
            for (auto& [v, coeff] : d.linear)
                has_u = has_u || !weak_zero(coeff, gb, a.constraints);
            if (!has_u) {
                if (!weak_zero(d.c0, gb, a.constraints))
                    out.direct.push_back(d.c0);
                continue;
            }
            std::vector<PhasePoly> coeffs(nu, PhasePoly(a.ring->vars(), order()));
            for (std::size_t i = 0; i < nu; ++i) {
                auto it = d.linear.find(a.multipliers[i].var);
                if (it != d.linear.end())
                    coeffs[i] = it->second;
            }
            out.usys.emplace_back(std::move(coeffs), d.c0);
        }
        return out;
    }

    /// Cross-multiplication triangularisation of the multiplier system;
    /// multiplier-free residual rows are secondary-constraint candidates.
    std::vector<PhasePoly> system_residuals(SweepRows& rows, const GroebnerBasis& gb) {
        const std::size_t nu = a.multipliers.size();
        auto& sys = rows.usys;
        std::vector<bool> used(sys.size(), false);
        for (std::size_t col = 0; col < nu; ++col) {
            std::size_t best = SIZE_MAX;
            for (std::size_t r = 0; r < sys.size(); ++r) {
                if (used[r] || sys[r].first[col].is_zero())
                    continue;
                if (best == SIZE_MAX ||
                    sys[r].first[col].term_count() < sys[best].first[col].term_count())
                    best = r;
            }
            if (best == SIZE_MAX)
                continue;
            used[best] = true;
            const PhasePoly pivot = sys[best].first[col];
            for (std::size_t r = 0; r < sys.size(); ++r) {
                if (r == best || sys[r].first[col].is_zero())
                    continue;
                const PhasePoly factor = sys[r].first[col];
                for (std::size_t c = 0; c < nu; ++c)
                    sys[r].first[c] = nf(pivot * sys[r].first[c] - factor * sys[best].first[c], gb);
                sys[r].second = nf(pivot * sys[r].second - factor * sys[best].second, gb);
            }
        }
        std::vector<PhasePoly> residuals;
        for (std::size_t r = 0; r < sys.size(); ++r) {
            if (used[r])
                continue;
            bool allzero = true;
            for (const PhasePoly& c : sys[r].first)
                allzero = allzero && weak_zero(c, gb, a.constraints);
            if (allzero && !weak_zero(sys[r].second, gb, a.constraints))
                residuals.push_back(sys[r].second);
        }
        return residuals;
    }

    void complete() {
        auto t0 = Clock::now();
        a.h_total = total_hamiltonian();
        bool fixpoint = false;
        int sweep = 0;
        while (!fixpoint) {
            ++sweep;
            if (sweep > opts.max_iterations)
                throw ResourceLimitError("consistency iteration did not reach a fixpoint within " +
                                         std::to_string(opts.max_iterations) + " sweeps");
            GroebnerBasis gb = constraint_gb(constraint_polys());
            SweepRecord rec;
            rec.sweep = sweep;
            if (gb.is_trivial()) {
                rec.inconsistent = true;
                rec.detail = "constraint ideal collapsed to the whole ring";
                a.trace.push_back(std::move(rec));
                a.status = AnalysisStatus::Inconsistent;
                return;
            }
            SweepRows rows = sweep_rows(gb, *a.h_total);
            rec.multiplier_rows = static_cast<int>(rows.usys.size());
            std::vector<PhasePoly> candidates = rows.direct;
            {
                SweepRows copy = rows; // triangularisation mutates
                for (PhasePoly& r : system_residuals(copy, gb))
                    candidates.push_back(std::move(r));
            }
            int gen = sweep + 1;
            for (const PhasePoly& cand : candidates) {
                GroebnerBasis gbx = constraint_gb(constraint_polys());
                PhasePoly h = nf(cand, gbx);
                if (h.is_zero())
                    continue;
                if (opts.weak == WeakEqualityMode::Radical && weak_zero(h, gbx, a.constraints))
                    continue;
                h = make_monic(h);
                int idx = 1;
                for (const Constraint& c : a.constraints)
                    if (c.generation == gen)
                        ++idx;
                Constraint c{h, gen, Constraint::Class::Unresolved,
                             "phi" + std::to_string(gen) + "_" + std::to_string(idx),
                             "consistency sweep " + std::to_string(sweep)};
                rec.added.push_back(c.name);
                a.constraints.push_back(std::move(c));
            }
            fixpoint = rec.added.empty();
            a.trace.push_back(std::move(rec));
        }
        a.sigma = std::make_shared<const GroebnerBasis>(constraint_gb(constraint_polys()));
        if (a.sigma->is_trivial()) {
            a.status = AnalysisStatus::Inconsistent;
            SweepRecord rec;
            rec.sweep = sweep + 1;
            rec.inconsistent = true;
            rec.detail = "constraint ideal collapsed to the whole ring";
            a.trace.push_back(std::move(rec));
            return;
        }
        std::vector<PhasePoly> prim;
        for (const Constraint& c : a.constraints)
            if (c.generation == 1)
                prim.push_back(c.poly);
        a.sigma1 = std::make_shared<const GroebnerBasis>(constraint_gb(prim));

        // Determine multipliers from the fixpoint rows.
        SweepRows rows = sweep_rows(*a.sigma, *a.h_total);
        if (!rows.usys.empty()) {
            FractionSolver solver{ring(), order(), a.sigma.get(), a.certificate, {}, {}, {}};
            for (const MultiplierInfo& m : a.multipliers)
                solver.unknowns.push_back(m.var);
            for (auto& [coeffs, c0] : rows.usys) {
                std::vector<LocalizedExpression> arow;
                for (const PhasePoly& c : coeffs)
                    arow.push_back(LocalizedExpression::from_poly(c, ring()));
                solver.A.push_back(std::move(arow));
                solver.b.push_back(LocalizedExpression::from_poly(-c0, ring()));
            }
            FractionSolver::Result res = solver.solve();
            if (!res.residuals.empty())
                throw InternalError("multiplier system has a constraint residual after fixpoint: " +
                                    res.residuals.front());
            for (std::size_t i = 0; i < a.multipliers.size(); ++i) {
                if (res.solution[i]) {
                    a.multipliers[i].determined = true;
                    a.multipliers[i].value = *res.solution[i];
                }
            }
        }
        a.timings_ms.emplace_back("complete", ms_since(t0));
    }

    // ------------------------------------------------------------------
    // Stage 3: first/second class separation
    // ------------------------------------------------------------------
    void separate() {
        auto t0 = Clock::now();
        const std::size_t k = a.constraints.size();
        SeparationData sep;
        sep.M.assign(k, std::vector<PhasePoly>(k, ring().zero(order())));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                PhasePoly b = nf(poisson_bracket(a.constraints[i].poly, a.constraints[j].poly),
                                 *a.sigma);
                sep.M[i][j] = b;
                sep.M[j][i] = -b;
            }
        }
        QuotientMatrix M = make_quotient_matrix(sep.M, a.sigma.get());
        sep.M = M.entries;
        sep.rank = matrix_rank_mod(M, ring(), a.certificate);
        if (sep.rank % 2 != 0)
            throw InternalError("skew Poisson-bracket matrix has odd generic rank");

        for (std::size_t i = 0; i < k; ++i) {
            bool zero_row = true;
            for (std::size_t j = 0; j < k; ++j)
                zero_row = zero_row && sep.M[i][j].is_zero();
            a.constraints[i].cls =
                zero_row ? Constraint::Class::First : Constraint::Class::Second;
        }

        const std::size_t s = k - static_cast<std::size_t>(sep.rank);
        std::vector<std::vector<PhasePoly>> kernel;
        if (sep.rank == 0) {
            for (std::size_t i = 0; i < k; ++i) {
                std::vector<PhasePoly> v(k, ring().zero(order()));
                v[i] = ring().one(order());
                kernel.push_back(std::move(v));
            }
        } else {
            kernel = null_space_mod(M, ring(), a.certificate);
        }
        if (kernel.size() != s)
            throw InternalError("kernel dimension disagrees with co-rank");

        auto make_combo = [&](const std::vector<PhasePoly>& v) {
            PhasePoly poly = ring().zero(order());
            bool primary = true;
            for (std::size_t i = 0; i < k; ++i) {
                if (v[i].is_zero())
                    continue;
                poly = poly + v[i] * a.constraints[i].poly;
                primary = primary && a.constraints[i].generation == 1;
            }
            if (poly.is_zero())
                throw InternalError("class combination degenerated to zero");
            const RatFun& lc = poly.leading_coeff();
            std::vector<PhasePoly> combo = v;
            if (!lc.is_one()) {
                a.certificate.record_param_divisor(lc.num(), ring());
                RatFun inv = lc.inverse();
                poly = poly.scaled(inv);
                for (PhasePoly& c : combo)
                    c = c.scaled(inv);
            }
            return ClassCombo{std::move(poly), std::move(combo), primary, ""};
        };

        std::vector<ClassCombo> fc;
        for (const auto& v : kernel)
            fc.push_back(make_combo(v));
        std::stable_sort(fc.begin(), fc.end(),
                         [](const ClassCombo& x, const ClassCombo& y) {
                             return x.primary && !y.primary;
                         });
        for (std::size_t i = 0; i < fc.size(); ++i)
            fc[i].name = "psi_" + std::to_string(i + 1);
        sep.first_class = std::move(fc);
        sep.k1 = 0;
        for (const ClassCombo& c : sep.first_class)
            if (c.primary)
                ++sep.k1;

        // Class soundness: every first-class combination commutes weakly with
        // the whole constraint set.
        for (const ClassCombo& psi : sep.first_class)
            for (const Constraint& phi : a.constraints)
                if (!nf(poisson_bracket(psi.poly, phi.poly), *a.sigma).is_zero())
                    throw InternalError("first-class candidate " + psi.name +
                                        " fails weak commutation with " + phi.name);

        if (sep.rank > 0) {
            std::vector<std::vector<PhasePoly>> P;
            for (const ClassCombo& c : sep.first_class)
                P.push_back(c.combo);
            std::vector<std::vector<PhasePoly>> T;
            if (P.empty()) {
                for (std::size_t i = 0; i < k; ++i) {
                    std::vector<PhasePoly> v(k, ring().zero(order()));
                    v[i] = ring().one(order());
                    T.push_back(std::move(v));
                }
            } else {
                T = complement_space(P, k, a.sigma.get(), ring(), a.certificate);
            }
            if (T.size() != static_cast<std::size_t>(sep.rank))
                throw InternalError("complement dimension disagrees with rank");
            for (std::size_t i = 0; i < T.size(); ++i) {
                ClassCombo c = make_combo(T[i]);
                c.name = "chi_" + std::to_string(i + 1);
                sep.second_class.push_back(std::move(c));
            }
            // C matrix of the second-class set and its adjugate inverse.
            std::vector<std::vector<PhasePoly>> C(
                sep.second_class.size(),
                std::vector<PhasePoly>(sep.second_class.size(), ring().zero(order())));
            for (std::size_t i = 0; i < sep.second_class.size(); ++i)
                for (std::size_t j = i + 1; j < sep.second_class.size(); ++j) {
                    PhasePoly b = nf(poisson_bracket(sep.second_class[i].poly,
                                                     sep.second_class[j].poly),
                                     *a.sigma);
                    C[i][j] = b;
                    C[j][i] = -b;
                }
            QuotientMatrix Cm = make_quotient_matrix(std::move(C), a.sigma.get());
            sep.C = Cm.entries;
            sep.cinv = matrix_inverse_mod(Cm, ring(), a.certificate);
        }
        a.separation = std::move(sep);
        a.timings_ms.emplace_back("separate", ms_since(t0));
    }

    // ------------------------------------------------------------------
    // Stage 4: gauge generator
    // ------------------------------------------------------------------
    void generator() {
        auto t0 = Clock::now();
        const SeparationData& sep = *a.separation;
        const std::size_t s = sep.first_class.size();
        if (s == 0) {
            a.timings_ms.emplace_back("generator", ms_since(t0));
            return; // no gauge symmetry
        }
        // Gauge ring: order-0..2 symbols for every first-class combination.
        std::vector<VarInfo> extra;
        const std::size_t base_size = a.ring->vars()->size();
        std::vector<std::array<std::string, 3>> names;
        int n1 = 0, n2 = 0;
        for (const ClassCombo& c : sep.first_class) {
            std::string base = c.primary ? "eps1_" + std::to_string(++n1)
                                         : "eps2_" + std::to_string(++n2);
            base = fresh_name(*a.ring->vars(), base);
            names.push_back({base, base + "_d", base + "_dd"});
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
            std::int32_t base_id = static_cast<std::int32_t>(base_size + 3 * i);
            for (int d = 0; d < 3; ++d)
                extra.push_back(VarInfo{names[i][static_cast<std::size_t>(d)], VarRole::Gauge, -1,
                                        base_id, static_cast<std::uint8_t>(d)});
        }
        RingPtr gring_ptr = a.ring->extended(std::move(extra));
        const Ring& gring = *gring_ptr;
        OrderPtr gorder = a.order; // same kind; width comes from each polynomial

        auto lift = [&](const PhasePoly& p) { return p.lifted(gring.vars(), gorder); };

        std::vector<PhasePoly> phi_lifted;
        for (const Constraint& c : a.constraints)
            phi_lifted.push_back(lift(c.poly));
        std::vector<PhasePoly> prim_lifted;
        for (const Constraint& c : a.constraints)
            if (c.generation == 1)
                prim_lifted.push_back(lift(c.poly));

        auto gb_full = std::make_shared<const GroebnerBasis>(
            buchberger(Ideal{phi_lifted}, gring_ptr, true, opts.budget, &a.certificate));
        auto gb_prim = std::make_shared<const GroebnerBasis>(
            buchberger(Ideal{prim_lifted}, gring_ptr, false, opts.budget, &a.certificate));

        SecondClassData sc;
        sc.sigma = gb_full;
        for (const ClassCombo& c : sep.second_class)
            sc.constraints.push_back(lift(c.poly));
        for (const auto& row : sep.C) {
            std::vector<PhasePoly> r;
            for (const PhasePoly& e : row)
                r.push_back(lift(e));
            sc.C.push_back(std::move(r));
        }
        PhasePoly hc = lift(*a.h_canonical);

        std::vector<VarId> eps_primary, eps_secondary;
        for (std::size_t i = 0; i < s; ++i) {
            VarId v0 = gring.vars()->require(names[i][0]);
            if (sep.first_class[i].primary)
                eps_primary.push_back(v0);
            else
                eps_secondary.push_back(v0);
        }

        // rho: {psi_mu, H_C}_D expanded over the complete constraint set.
        const std::size_t k = a.constraints.size();
        auto project = [&](LocalizedExpression e) {
            return LocalizedExpression::make(nf(e.num, *gb_prim), e.den);
        };
        std::vector<std::vector<LocalizedExpression>> rho;
        std::vector<AlgebraEntry> algebra;
        std::vector<std::pair<std::string, LocalizedExpression>> eps_solutions;
        std::vector<std::string> free_functions;
        for (std::size_t mu = 0; mu < s; ++mu) {
            LocalizedExpression D = dirac_bracket(lift(sep.first_class[mu].poly), hc, sc, nullptr,
                                                  gring, a.certificate);
            NormalFormResult red = normal_form(D.num, *gb_full, true);
            if (!red.remainder.is_zero())
                throw InternalError("{" + sep.first_class[mu].name +
                                    ", H_C}_D does not lie in the constraint ideal; "
                                    "the first-class set is incomplete");
            std::vector<PhasePoly> coeffs = express_in_generators(*gb_full, red);
            std::vector<LocalizedExpression> row;
            for (std::size_t nu = 0; nu < k; ++nu)
                row.push_back(project(LocalizedExpression::make(coeffs[nu], D.den)));
            rho.push_back(std::move(row));
        }

        // First-class algebra {psi_x, psi_y}_D = varrho * Phi.
        for (std::size_t x = 0; x < s; ++x) {
            for (std::size_t y = x + 1; y < s; ++y) {
                LocalizedExpression D =
                    dirac_bracket(lift(sep.first_class[x].poly), lift(sep.first_class[y].poly),
                                  sc, nullptr, gring, a.certificate);
                NormalFormResult red = normal_form(D.num, *gb_full, true);
                if (!red.remainder.is_zero())
                    throw InternalError("{" + sep.first_class[x].name + ", " +
                                        sep.first_class[y].name +
                                        "}_D does not lie in the constraint ideal "
                                        "(non-polynomial structure functions)");
                std::vector<PhasePoly> coeffs = express_in_generators(*gb_full, red);
                for (std::size_t nu = 0; nu < k; ++nu) {
                    PhasePoly c = nf(coeffs[nu], *gb_full);
                    if (c.is_zero())
                        continue;
                    algebra.push_back(AlgebraEntry{sep.first_class[x].name,
                                                       sep.first_class[y].name,
                                                       a.constraints[nu].name,
                                                       LocalizedExpression::make(c, D.den)});
                }
            }
        }

        // Gauge-function system: for every secondary constraint alpha,
        //   sum_{gamma in secondary FC} P[gamma][alpha] * deps2_gamma
        // + sum_{mu} rho[mu][alpha] * eps_mu  == 0 on Sigma_1,
        // solved for the primary-first-class eps1 functions.
        std::vector<std::size_t> secondary_idx;
        for (std::size_t nu = 0; nu < k; ++nu)
            if (a.constraints[nu].generation > 1)
                secondary_idx.push_back(nu);

        std::vector<std::size_t> prim_fc, sec_fc;
        for (std::size_t i = 0; i < s; ++i)
            (sep.first_class[i].primary ? prim_fc : sec_fc).push_back(i);

        FractionSolver solver{gring, gorder, gb_prim.get(), a.certificate, {}, {}, {}};
        for (std::size_t b : prim_fc)
            solver.unknowns.push_back(gring.vars()->require(names[b][0]));
        for (std::size_t alpha : secondary_idx) {
            std::vector<LocalizedExpression> arow;
            for (std::size_t b : prim_fc)
                arow.push_back(rho[b][alpha]);
            LocalizedExpression rhs =
                LocalizedExpression::from_poly(gring.zero(gorder), gring);
            for (std::size_t g : sec_fc) {
                VarId e0 = gring.vars()->require(names[g][0]);
                std::int32_t e1 = gring.vars()->gauge_derivative_of(e0);
                PhasePoly epsdot = gring.var(gorder, static_cast<VarId>(e1));
                PhasePoly P = lift(sep.first_class[g].combo[alpha]);
                rhs = rhs - LocalizedExpression::from_poly(nf(P, *gb_prim) * epsdot, gring);
                rhs = rhs - rho[g][alpha] *
                                LocalizedExpression::from_poly(gring.var(gorder, e0), gring);
            }
            solver.A.push_back(std::move(arow));
            solver.b.push_back(solver.reduce(rhs));
        }
        FractionSolver::Result res = solver.solve();
        if (!res.residuals.empty())
            throw InternalError("gauge-function system is inconsistent; residual: " +
                                res.residuals.front());

        // Assemble G.
        LocalizedExpression G = LocalizedExpression::from_poly(gring.zero(gorder), gring);
        for (std::size_t bi = 0; bi < prim_fc.size(); ++bi) {
            std::size_t i = prim_fc[bi];
            PhasePoly psi = lift(sep.first_class[i].poly);
            LocalizedExpression coeff =
                res.solution[bi]
                    ? *res.solution[bi]
                    : LocalizedExpression::from_poly(gring.var(gorder, solver.unknowns[bi]),
                                                     gring);
            if (res.solution[bi])
                eps_solutions.emplace_back(names[i][0], *res.solution[bi]);
            else
                free_functions.push_back(names[i][0]);
            G = G + coeff * LocalizedExpression::from_poly(psi, gring);
        }
        for (std::size_t i : sec_fc) {
            VarId e0 = gring.vars()->require(names[i][0]);
            G = G + LocalizedExpression::from_poly(
                        gring.var(gorder, e0) * lift(sep.first_class[i].poly), gring);
            free_functions.push_back(names[i][0]);
        }

        // Conservation: dG/dt + {G, H_C}_D == 0 on Sigma_1.
        LocalizedExpression dG =
            LocalizedExpression::make(gauge_time_derivative(G.num), G.den);
        LocalizedExpression num_bracket = dirac_bracket(G.num, hc, sc, nullptr, gring,
                                                        a.certificate);
        LocalizedExpression den_bracket = dirac_bracket(G.den, hc, sc, nullptr, gring,
                                                        a.certificate);
        LocalizedExpression quotient =
            (num_bracket * LocalizedExpression::from_poly(G.den, gring) -
             LocalizedExpression::from_poly(G.num, gring) * den_bracket) /
            LocalizedExpression::from_poly(G.den * G.den, gring);
        LocalizedExpression total = dG + quotient;
        bool conserved = nf(total.num, *gb_prim).is_zero();
        if (!conserved)
            throw InternalError("generator conservation failed: dG/dt + {G,H_C}_D != 0 on the "
                                "primary constraint surface");
        a.generator = GeneratorData{std::move(gring_ptr), gb_full, gb_prim, std::move(sc),
                                    std::move(eps_primary), std::move(eps_secondary),
                                    std::move(rho), std::move(algebra), std::move(eps_solutions),
                                    std::move(free_functions), std::move(G), conserved};
        a.timings_ms.emplace_back("generator", ms_since(t0));
    }

    Analysis run() {
        primaries();
        if (opts.stage == Stage::Primary || a.regular()) {
            a.sigma = std::make_shared<const GroebnerBasis>(constraint_gb(constraint_polys()));
            a.sigma1 = a.sigma;
            return std::move(a);
        }
        complete();
        if (a.status == AnalysisStatus::Inconsistent || opts.stage == Stage::Complete)
            return std::move(a);
        separate();
        if (opts.stage == Stage::Separate)
            return std::move(a);
        generator();
        return std::move(a);
    }
};

} // namespace

Analysis run_analysis(DegenerateModel model, const AnalysisOptions& options) {
    Engine engine(std::move(model), options);
    return engine.run();
}

LocalizedExpression gauge_variation(const Analysis& analysis, const PhasePoly& f) {
    if (!analysis.generator)
        throw DomainError("no gauge generator available");
    const GeneratorData& gen = *analysis.generator;
    const Ring& gring = *gen.ring;
    OrderPtr gorder = analysis.order;
    PhasePoly fl = f.lifted(gring.vars(), gorder);
    Certificate scratch;
    const LocalizedExpression& G = gen.generator;
    LocalizedExpression num_bracket = dirac_bracket(G.num, fl, gen.sc, nullptr, gring, scratch);
    LocalizedExpression den_bracket = dirac_bracket(G.den, fl, gen.sc, nullptr, gring, scratch);
    return (num_bracket * LocalizedExpression::from_poly(G.den, gring) -
            LocalizedExpression::from_poly(G.num, gring) * den_bracket) /
           LocalizedExpression::from_poly(G.den * G.den, gring);
}

} // namespace dirac
