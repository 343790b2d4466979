#ifndef DIRAC_GROEBNER_HPP
#define DIRAC_GROEBNER_HPP

#include <optional>
#include <span>
#include <vector>

#include "dirac/certificate.hpp"
#include "dirac/ring.hpp"

namespace dirac {

/// Hard caps on basis size and cumulative reduction work. Exceeding either is
/// a reported error, never silent truncation.
struct ResourceBudget {
    std::size_t max_polys = 4096;
    std::size_t max_total_terms = 8'000'000;
};

/// Shared work meter threaded through Buchberger runs.
class BudgetTracker {
public:
    explicit BudgetTracker(const ResourceBudget& cfg) : cfg_(cfg) {}
    void charge(std::size_t terms) {
        used_ += terms;
        if (used_ > cfg_.max_total_terms)
            throw ResourceLimitError("term budget exceeded (" + std::to_string(cfg_.max_total_terms) +
                                     " cumulative terms); raise --term-budget");
    }
    void check_polys(std::size_t count) const {
        if (count > cfg_.max_polys)
            throw ResourceLimitError("polynomial budget exceeded");
    }

private:
    const ResourceBudget cfg_;
    std::size_t used_ = 0;
};

struct Ideal {
    std::vector<PhasePoly> generators;
};

/// Reduced Groebner basis (monic, pairwise tail-reduced, ascending leading
/// terms), optionally with cofactors h expressing basis elements in the
/// original generators: basis[i] = sum_j cofactors[i][j] * generators[j].
class GroebnerBasis {
public:
    const std::vector<PhasePoly>& basis() const { return basis_; }
    const OrderPtr& order() const { return order_; }
    bool has_cofactors() const { return !cofactors_.empty(); }
    const std::vector<std::vector<PhasePoly>>& cofactors() const { return cofactors_; }
    const std::vector<PhasePoly>& original_generators() const { return generators_; }

    bool is_trivial() const;
    bool empty() const { return basis_.empty(); }

private:
    friend GroebnerBasis buchberger(const Ideal&, const RingPtr&, bool, const ResourceBudget&,
                                    Certificate*);
    std::vector<PhasePoly> basis_;
    std::vector<std::vector<PhasePoly>> cofactors_;
    std::vector<PhasePoly> generators_;
    OrderPtr order_;
};

struct NormalFormResult {
    PhasePoly remainder;
    std::vector<PhasePoly> quotients; // empty unless tracked
};

/// Multivariate division by an ordered list of reducers. With track, the
/// identity f = sum_i quotients[i]*reducers[i] + remainder holds exactly.
NormalFormResult normal_form(const PhasePoly& f, std::span<const PhasePoly> reducers, bool track,
                             BudgetTracker* budget = nullptr);
NormalFormResult normal_form(const PhasePoly& f, const GroebnerBasis& gb, bool track);
PhasePoly nf(const PhasePoly& f, const GroebnerBasis& gb);

/// Buchberger's algorithm (normal selection strategy, product and chain
/// criteria), followed by minimalisation and autoreduction. Deterministic:
/// the reduced basis is unique for (ideal, order) and cofactor rows are
/// produced by a fixed reduction order. Parametric leading-coefficient
/// inversions are recorded in `cert` when given.
GroebnerBasis buchberger(const Ideal& ideal, const RingPtr& ring, bool track_cofactors = false,
                         const ResourceBudget& budget = {}, Certificate* cert = nullptr);

/// Basis elements supported entirely on `keep`; a Groebner basis of the
/// elimination ideal when gb's order eliminates the complement.
std::vector<PhasePoly> elimination_ideal(const GroebnerBasis& gb, std::span<const VarId> keep);

bool ideal_membership(const PhasePoly& f, const GroebnerBasis& gb);

/// Rabinowitsch trick: f in radical(I) iff 1 in I + <1 - t*f>.
bool radical_membership(const PhasePoly& f, const Ideal& ideal, const RingPtr& ring,
                        const ResourceBudget& budget = {});

/// Combines tracked normal-form quotients with gb cofactors into coefficients
/// over the original generators: f - remainder = sum_j result[j]*generators[j].
std::vector<PhasePoly> express_in_generators(const GroebnerBasis& gb, const NormalFormResult& nfr);

} // namespace dirac

#endif
