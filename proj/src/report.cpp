#include "dirac/report.hpp"

#include <sstream>

#include <json.hpp>

namespace dirac {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* kConvention = "evolution df/dt = {f, H_T}; "
                          "{f,g} = sum_i (df/dq_i * dg/dp_i - df/dp_i * dg/dq_i)";

const char* class_name(Constraint::Class c) {
    switch (c) {
    case Constraint::Class::First: return "first";
    case Constraint::Class::Second: return "second";
    case Constraint::Class::Unresolved: return "unresolved";
    }
    return "?";
}

ordered_json combo_json(const ClassCombo& c, const Analysis& a) {
    ordered_json j;
    j["name"] = c.name;
    j["primary"] = c.primary;
    j["polynomial"] = c.poly.str();
    ordered_json combo = ordered_json::object();
    for (std::size_t i = 0; i < c.combo.size(); ++i)
        if (!c.combo[i].is_zero())
            combo[a.constraints[i].name] = c.combo[i].str();
    j["combination"] = std::move(combo);
    return j;
}

} // namespace

std::string report_json(const Analysis& a, const ReportOptions& opt) {
    ordered_json j;
    j["model"] = a.model.name;
    j["status"] = a.status == AnalysisStatus::Ok ? "ok" : "inconsistent";
    j["stage"] = opt.stage_name;
    j["order"] = opt.order_name;
    j["weak_equality"] = opt.weak_name;
    j["convention"] = kConvention;
    j["hessian_rank"] = a.hessian_rank;
    j["regular"] = a.regular();
    j["canonical_hamiltonian"] = a.h_canonical ? ordered_json(a.h_canonical->str())
                                               : ordered_json(nullptr);

    ordered_json cs = ordered_json::array();
    for (const Constraint& c : a.constraints) {
        ordered_json e;
        e["name"] = c.name;
        e["generation"] = c.generation;
        e["class"] = class_name(c.cls);
        e["polynomial"] = c.poly.str();
        e["provenance"] = c.provenance;
        cs.push_back(std::move(e));
    }
    j["constraints"] = std::move(cs);

    ordered_json counts;
    counts["total"] = a.constraints.size();
    if (a.separation) {
        counts["first_class"] = a.separation->first_class.size();
        counts["second_class"] = a.separation->second_class.size();
        counts["primary_first_class"] = a.separation->k1;
    } else {
        counts["first_class"] = nullptr;
        counts["second_class"] = nullptr;
        counts["primary_first_class"] = nullptr;
    }
    j["counts"] = std::move(counts);

    ordered_json ms = ordered_json::array();
    for (const MultiplierInfo& m : a.multipliers) {
        ordered_json e;
        e["name"] = m.name;
        e["attached_to"] = m.primary;
        e["status"] = m.determined ? "determined" : "free";
        e["value"] = m.determined ? ordered_json(m.value->str()) : ordered_json(nullptr);
        ms.push_back(std::move(e));
    }
    j["multipliers"] = std::move(ms);

    if (a.separation) {
        ordered_json fc = ordered_json::array();
        for (const ClassCombo& c : a.separation->first_class)
            fc.push_back(combo_json(c, a));
        j["first_class"] = std::move(fc);
        ordered_json sc = ordered_json::array();
        for (const ClassCombo& c : a.separation->second_class)
            sc.push_back(combo_json(c, a));
        j["second_class"] = std::move(sc);
    } else {
        j["first_class"] = nullptr;
        j["second_class"] = nullptr;
    }

    if (a.generator) {
        const GeneratorData& g = *a.generator;
        ordered_json rho = ordered_json::object();
        for (std::size_t mu = 0; mu < g.rho.size(); ++mu) {
            ordered_json row = ordered_json::object();
            for (std::size_t nu = 0; nu < g.rho[mu].size(); ++nu)
                if (!g.rho[mu][nu].is_zero())
                    row[a.constraints[nu].name] = g.rho[mu][nu].str();
            rho[a.separation->first_class[mu].name] = std::move(row);
        }
        j["rho"] = std::move(rho);

        ordered_json alg = ordered_json::array();
        for (const AlgebraEntry& e : g.algebra) {
            ordered_json x;
            x["left"] = e.left;
            x["right"] = e.right;
            x["constraint"] = e.constraint;
            x["coefficient"] = e.value.str();
            alg.push_back(std::move(x));
        }
        j["constraint_algebra"] = std::move(alg);

        ordered_json gf;
        ordered_json solved = ordered_json::object();
        for (const auto& [name, value] : g.eps_solutions)
            solved[name] = value.str();
        gf["solved"] = std::move(solved);
        gf["free"] = g.free_functions;
        j["gauge_functions"] = std::move(gf);
        j["generator"] = g.generator.str();
        j["generator_conserved"] = g.conservation_ok;
    } else {
        j["rho"] = nullptr;
        j["constraint_algebra"] = nullptr;
        j["gauge_functions"] = nullptr;
        j["generator"] = nullptr;
        j["generator_conserved"] = nullptr;
    }

    ordered_json cert = ordered_json::array();
    for (const CertEntry& e : a.certificate.entries()) {
        ordered_json x;
        x["polynomial"] = e.text;
        x["justification"] = e.kind == CertEntry::Kind::ParamAssumption ? "parameter_assumption"
                                                                        : "generic_nonzero";
        cert.push_back(std::move(x));
    }
    j["genericity_assumptions"] = std::move(cert);
    j["warnings"] = a.warnings;

    ordered_json trace = ordered_json::array();
    for (const SweepRecord& r : a.trace) {
        ordered_json e;
        e["sweep"] = r.sweep;
        e["added"] = r.added;
        e["multiplier_rows"] = r.multiplier_rows;
        e["inconsistent"] = r.inconsistent;
        if (!r.detail.empty())
            e["detail"] = r.detail;
        trace.push_back(std::move(e));
    }
    j["trace"] = std::move(trace);

    if (opt.include_timings) {
        ordered_json t = ordered_json::object();
        for (const auto& [stage, ms_val] : a.timings_ms)
            t[stage] = ms_val;
        j["timings_ms"] = std::move(t);
    }
    return j.dump(2) + "\n";
}

std::string report_text(const Analysis& a, const ReportOptions& opt) {
    std::ostringstream out;
    out << "model: " << a.model.name << "\n";
    out << "status: " << (a.status == AnalysisStatus::Ok ? "ok" : "INCONSISTENT") << "\n";
    out << "stage: " << opt.stage_name << "  order: " << opt.order_name
        << "  weak-equality: " << opt.weak_name << "\n";
    out << "convention: " << kConvention << "\n";
    out << "hessian rank: " << a.hessian_rank << " (dimension " << a.model.dimension() << ")\n";
    if (a.h_canonical)
        out << "canonical hamiltonian: H_C = " << a.h_canonical->str() << "\n";
    if (a.regular()) {
        out << "regular system: no constraints\n";
        return out.str();
    }
    out << "\nconstraints (" << a.constraints.size() << "):\n";
    for (const Constraint& c : a.constraints)
        out << "  " << c.name << " [generation " << c.generation << ", " << class_name(c.cls)
            << "-class] = " << c.poly.str() << "\n";
    if (!a.multipliers.empty()) {
        out << "\nmultipliers:\n";
        for (const MultiplierInfo& m : a.multipliers) {
            out << "  " << m.name << " (for " << m.primary << "): ";
            if (m.determined)
                out << m.value->str() << "\n";
            else
                out << "free\n";
        }
    }
    if (a.separation) {
        const SeparationData& s = *a.separation;
        out << "\nseparation: rank(M) = " << s.rank << ", first-class s = "
            << s.first_class.size() << " (primary k1 = " << s.k1 << "), second-class r = "
            << s.second_class.size() << "\n";
        for (const ClassCombo& c : s.first_class)
            out << "  " << c.name << (c.primary ? " [primary]" : "") << " = " << c.poly.str()
                << "\n";
        for (const ClassCombo& c : s.second_class)
            out << "  " << c.name << " = " << c.poly.str() << "\n";
    }
    if (a.generator) {
        out << "\ngauge generator:\n  G = " << a.generator->generator.str() << "\n";
        if (!a.generator->eps_solutions.empty()) {
            out << "  solved gauge functions:\n";
            for (const auto& [name, value] : a.generator->eps_solutions)
                out << "    " << name << " = " << value.str() << "\n";
        }
        if (!a.generator->free_functions.empty()) {
            out << "  free gauge functions:";
            for (const std::string& f : a.generator->free_functions)
                out << " " << f;
            out << "\n";
        }
        out << "  conservation on the primary surface: "
            << (a.generator->conservation_ok ? "verified" : "FAILED") << "\n";
    }
    if (!a.certificate.entries().empty()) {
        out << "\ngenericity assumptions:\n";
        for (const CertEntry& e : a.certificate.entries())
            out << "  " << e.text << " != 0  ["
                << (e.kind == CertEntry::Kind::ParamAssumption ? "declared parameter"
                                                               : "generic")
                << "]\n";
    }
    if (!a.warnings.empty()) {
        out << "\nwarnings:\n";
        for (const std::string& w : a.warnings)
            out << "  " << w << "\n";
    }
    if (!a.trace.empty()) {
        out << "\nconsistency trace:\n";
        for (const SweepRecord& r : a.trace) {
            out << "  sweep " << r.sweep << ": ";
            if (r.inconsistent)
                out << "INCONSISTENT (" << r.detail << ")";
            else if (r.added.empty())
                out << "fixpoint";
            else {
                out << "added";
                for (const std::string& n : r.added)
                    out << " " << n;
            }
            out << " [" << r.multiplier_rows << " multiplier rows]\n";
        }
    }
    out << "\ntimings:\n";
    for (const auto& [stage, ms_val] : a.timings_ms)
        out << "  " << stage << ": " << ms_val << " ms\n";
    return out.str();
}

} // namespace dirac
