#pragma once

#include <string>
#include <vector>

#include "th/report.hpp"

namespace th {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool applicable = true;  // false when no configured q is in the criterion's scope
    std::string detail;
    double seconds = 0.0;
};

struct SelftestReport {
    std::vector<CriterionResult> criteria;
    FindingsReport findings;
    bool all_pass = true;
};

// Runs the criteria suite. Each criterion works over the intersection of
// its pinned q set with config.qs; an empty intersection marks the
// criterion inapplicable (and passing). The findings report always carries
// exactly one entry per tracked claim. The performance criterion
// additionally runs the reduced q=11 lane when 11 is configured.
//
// A nonempty `only` restricts execution to those criterion ids; criterion
// 15 pulls in 1 through 14 because it reports their combined runtime.
SelftestReport run_selftest(const RunConfig& config, const std::vector<int>& only = {});

int criterion_count();

}  // namespace th
