#include "dirac/variable_table.hpp"

namespace dirac {

VariableTable::VariableTable(std::vector<VarInfo> vars) : vars_(std::move(vars)) {
    for (VarId i = 0; i < vars_.size(); ++i) {
        auto [it, fresh] = index_.emplace(vars_[i].name, i);
        if (!fresh)
            throw ValidationError("duplicate symbol: " + vars_[i].name);
    }
    velocity_of_.assign(vars_.size(), -1);
    momentum_of_.assign(vars_.size(), -1);
    gauge_deriv_.assign(vars_.size(), -1);
    for (VarId i = 0; i < vars_.size(); ++i) {
        const VarInfo& v = vars_[i];
        if (v.role == VarRole::Velocity && v.coordinate >= 0)
            velocity_of_[static_cast<std::size_t>(v.coordinate)] = static_cast<std::int32_t>(i);
        if (v.role == VarRole::Momentum && v.coordinate >= 0)
            momentum_of_[static_cast<std::size_t>(v.coordinate)] = static_cast<std::int32_t>(i);
    }
    // Link each gauge symbol to its next formal derivative, when present.
    for (VarId i = 0; i < vars_.size(); ++i) {
        const VarInfo& v = vars_[i];
        if (v.role != VarRole::Gauge)
            continue;
        for (VarId j = 0; j < vars_.size(); ++j) {
            const VarInfo& w = vars_[j];
            if (w.role == VarRole::Gauge && w.gauge_base == v.gauge_base &&
                w.deriv_order == v.deriv_order + 1) {
                gauge_deriv_[i] = static_cast<std::int32_t>(j);
                break;
            }
        }
    }
}

std::optional<VarId> VariableTable::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

VarId VariableTable::require(const std::string& name) const {
    auto id = find(name);
    if (!id)
        throw ValidationError("unknown symbol: " + name);
    return *id;
}

std::vector<VarId> VariableTable::ids_with_role(VarRole role) const {
    std::vector<VarId> out;
    for (VarId i = 0; i < vars_.size(); ++i)
        if (vars_[i].role == role)
            out.push_back(i);
    return out;
}

std::shared_ptr<const VariableTable> VariableTable::extended(std::vector<VarInfo> extra) const {
    std::vector<VarInfo> all = vars_;
    for (auto& v : extra)
        all.push_back(std::move(v));
    return std::make_shared<VariableTable>(std::move(all));
}

} // namespace dirac
