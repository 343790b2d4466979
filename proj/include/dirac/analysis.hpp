#ifndef DIRAC_ANALYSIS_HPP
#define DIRAC_ANALYSIS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirac/mechanics.hpp"

namespace dirac {

enum class Stage { Primary, Complete, Separate, Generator };
enum class WeakEqualityMode { Ideal, Radical };

struct AnalysisOptions {
    Stage stage = Stage::Generator;
    WeakEqualityMode weak = WeakEqualityMode::Ideal;
    MonomialOrder::Kind inner_order = MonomialOrder::Kind::DegRevLex;
    int max_iterations = 32;
    ResourceBudget budget{};
};

struct Constraint {
    PhasePoly poly; // monic normal form w.r.t. previously admitted constraints
    int generation; // 1 = primary, 2 = secondary, ...
    enum class Class { First, Second, Unresolved } cls = Class::Unresolved;
    std::string name;       // phi<generation>_<index>
    std::string provenance; // which step produced it
};

struct SweepRecord {
    int sweep = 0;
    std::vector<std::string> added;
    int multiplier_rows = 0;
    bool inconsistent = false;
    std::string detail;
};

struct MultiplierInfo {
    std::string name;
    VarId var = 0;
    std::string primary; // constraint the multiplier is attached to
    bool determined = false;
    std::optional<LocalizedExpression> value; // may reference free multipliers
};

/// A first- or second-class constraint obtained as a combination of the
/// complete set: poly = sum_a combo[a] * Phi_a (denominator-cleared).
struct ClassCombo {
    PhasePoly poly;
    std::vector<PhasePoly> combo;
    bool primary = false; // supported on generation-1 constraints only
    std::string name;
};

struct SeparationData {
    std::vector<std::vector<PhasePoly>> M; // NF-reduced Poisson bracket matrix
    int rank = 0;
    std::vector<ClassCombo> first_class;  // primary combos first
    std::vector<ClassCombo> second_class;
    std::vector<std::vector<PhasePoly>> C; // second-class bracket matrix, NF-reduced
    std::optional<MatrixInverse> cinv;     // adjugate/determinant inverse of C
    int k1 = 0;                            // primary first-class count
};

struct AlgebraEntry {
    std::string left, right, constraint;
    LocalizedExpression value;
};

struct GeneratorData {
    RingPtr ring; // gauge ring (multiplier ring + gauge symbols)
    std::shared_ptr<const GroebnerBasis> sigma_gauge;  // complete set, gauge ring
    std::shared_ptr<const GroebnerBasis> sigma1_gauge; // primaries, gauge ring
    SecondClassData sc; // second-class data lifted to the gauge ring
    std::vector<VarId> eps_primary;   // order-0 symbol per primary first-class combo
    std::vector<VarId> eps_secondary; // order-0 symbol per secondary first-class combo
    // rho[mu][alpha]: {psi_mu, H_C}_D expanded over the complete constraint
    // set, projected onto the primary-constraint surface.
    std::vector<std::vector<LocalizedExpression>> rho;
    std::vector<AlgebraEntry> algebra; // first-class algebra varrho, over Phi
    std::vector<std::pair<std::string, LocalizedExpression>> eps_solutions;
    std::vector<std::string> free_functions;
    LocalizedExpression generator;
    bool conservation_ok = false;
};

enum class AnalysisStatus { Ok, Inconsistent };

struct Analysis {
    DegenerateModel model;
    AnalysisOptions options;
    AnalysisStatus status = AnalysisStatus::Ok;
    int hessian_rank = 0;

    std::optional<PhasePoly> h_canonical; // over the analysis ring
    RingPtr ring;                         // model ring extended with multipliers
    OrderPtr order;                       // analysis order (inner kind, full table)
    std::optional<PhasePoly> h_total;

    std::vector<Constraint> constraints;
    std::shared_ptr<const GroebnerBasis> sigma;  // GB of the complete constraint set
    std::shared_ptr<const GroebnerBasis> sigma1; // GB of the primary constraints
    std::vector<SweepRecord> trace;
    std::vector<MultiplierInfo> multipliers;
    std::optional<SeparationData> separation;
    std::optional<GeneratorData> generator;

    Certificate certificate;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, long>> timings_ms;

    bool regular() const { return constraints.empty(); }
    std::size_t count_first_class() const {
        return separation ? separation->first_class.size() : 0;
    }
};

Analysis run_analysis(DegenerateModel model, const AnalysisOptions& options);

/// Dirac bracket of the generator with f (gauge symbols constant).
LocalizedExpression gauge_variation(const Analysis& analysis, const PhasePoly& f);

} // namespace dirac

#endif
