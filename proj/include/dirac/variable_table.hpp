#ifndef DIRAC_VARIABLE_TABLE_HPP
#define DIRAC_VARIABLE_TABLE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dirac/error.hpp"

namespace dirac {

using VarId = std::uint32_t;

enum class VarRole : std::uint8_t {
    Coordinate,
    Velocity,
    Momentum,
    Multiplier,
    Gauge,
    Aux,
};

struct VarInfo {
    std::string name;
    VarRole role = VarRole::Aux;
    // Velocity/Momentum: index of the owning coordinate.
    std::int32_t coordinate = -1;
    // Gauge symbols: index of the order-0 symbol and the derivative order.
    std::int32_t gauge_base = -1;
    std::uint8_t deriv_order = 0;
};

/// Immutable symbol table defining the global variable indexing for every
/// monomial. Grown only through extended(), which yields a new table with the
/// current one as a prefix so existing exponent vectors stay valid after a pad.
class VariableTable {
public:
    explicit VariableTable(std::vector<VarInfo> vars);

    std::size_t size() const { return vars_.size(); }
    const VarInfo& info(VarId id) const { return vars_.at(id); }
    const std::string& name(VarId id) const { return vars_.at(id).name; }
    VarRole role(VarId id) const { return vars_.at(id).role; }

    std::optional<VarId> find(const std::string& name) const;
    VarId require(const std::string& name) const;

    /// Velocity / momentum partners of a coordinate (-1 when absent).
    std::int32_t velocity_of(VarId coordinate) const { return velocity_of_.at(coordinate); }
    std::int32_t momentum_of(VarId coordinate) const { return momentum_of_.at(coordinate); }
    /// Formal time derivative of a gauge symbol (-1 when not materialised).
    std::int32_t gauge_derivative_of(VarId gauge) const { return gauge_deriv_.at(gauge); }

    std::vector<VarId> ids_with_role(VarRole role) const;

    std::shared_ptr<const VariableTable> extended(std::vector<VarInfo> extra) const;

private:
    std::vector<VarInfo> vars_;
    std::map<std::string, VarId> index_;
    std::vector<std::int32_t> velocity_of_;
    std::vector<std::int32_t> momentum_of_;
    std::vector<std::int32_t> gauge_deriv_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

inline TablePtr make_table(std::vector<VarInfo> vars) {
    return std::make_shared<VariableTable>(std::move(vars));
}

} // namespace dirac

#endif
