#ifndef DIRAC_CERTIFICATE_HPP
#define DIRAC_CERTIFICATE_HPP

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dirac/ring.hpp"

namespace dirac {

/// One polynomial assumed nonvanishing on the constraint set, with the reason
/// the assumption is legitimate.
struct CertEntry {
    enum class Kind { ParamAssumption, GenericNonzero };
    std::string text; // canonical rendering
    Kind kind;
};

/// Genericity certificate: every division performed during rank / kernel /
/// inverse computations lands here, normalized into numeric-content-free,
/// squarefree pieces (parameter factors split from phase-space factors).
class Certificate {
public:
    using VanishTest = std::function<bool(const PhasePoly&)>;

    /// Records a division by a parameter polynomial.
    void record_param_divisor(const ParamPoly& p, const Ring& ring);

    /// Records a division by a phase-space polynomial. `vanishes` tests
    /// membership in the active constraint ideal; a divisor that vanishes on
    /// the constraint set invalidates the computation.
    void record_phase_divisor(const PhasePoly& p, const Ring& ring, const VanishTest& vanishes);

    const std::vector<CertEntry>& entries() const { return entries_; }
    bool contains_text(const std::string& text) const { return seen_.count(text) > 0; }

    void merge(const Certificate& other);

private:
    void add(std::string text, CertEntry::Kind kind);

    std::vector<CertEntry> entries_;
    std::set<std::string> seen_;
};

} // namespace dirac

#endif
