#ifndef DIRAC_REPORT_HPP
#define DIRAC_REPORT_HPP

#include <string>

#include "dirac/analysis.hpp"

namespace dirac {

struct ReportOptions {
    std::string stage_name = "all";
    std::string order_name = "degrevlex";
    std::string weak_name = "ideal";
    bool include_timings = false; // JSON only; the text report always shows timings
};

/// Deterministic JSON report: identical inputs yield byte-identical output
/// (timings are opt-in and excluded from that guarantee).
std::string report_json(const Analysis& analysis, const ReportOptions& options);

std::string report_text(const Analysis& analysis, const ReportOptions& options);

} // namespace dirac

#endif
