#ifndef DIRAC_MODEL_HPP
#define DIRAC_MODEL_HPP

#include <string>
#include <vector>

#include "dirac/ring.hpp"

namespace dirac {

/// A finite-dimensional mechanical model with a polynomial Lagrangian.
/// The variable table is laid out as [velocities | momenta | coordinates],
/// so a block order on the velocity prefix eliminates velocities.
struct DegenerateModel {
    std::string name;
    RingPtr ring;
    std::vector<VarId> coordinates; // declaration order
    std::vector<VarId> velocities;  // velocities[i] belongs to coordinates[i]
    std::vector<VarId> momenta;     // momenta[i] belongs to coordinates[i]
    PhasePoly lagrangian;           // in (q, dot(q)) over Q(params)

    std::size_t dimension() const { return coordinates.size(); }
};

/// Parses the line-oriented model format:
///   name        = "string"
///   coordinates = [q1, q2]
///   parameters  = [g != 0, m]        # optional
///   lagrangian  = "1/2*(dot(q1) - q2)^2"
/// '#' starts a comment outside quotes.
DegenerateModel load_model_text(const std::string& content, const std::string& display_name);

/// Reads and parses a model file (UTF-8).
DegenerateModel load_model(const std::string& path);

/// Momentum symbol naming: coordinate "qX" pairs with "pX", any other
/// coordinate "c" pairs with "p_c".
std::string momentum_name_for(const std::string& coordinate);

} // namespace dirac

#endif
