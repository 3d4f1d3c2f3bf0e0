#pragma once

// JSON Lines serialization of solver traces. One record per iteration:
//   {"n", "x", "f0", "infeas", "s_norm", "tau", "merit", "status"}
// s_norm, tau and merit are null for CCP traces. "status" is the status of
// the subproblem that produced the record, except on the last line, where it
// is the termination reason.

#include <ostream>
#include <string>

#include "json.hpp"

#include "conedc/ccp.hpp"
#include "conedc/penalty_ccp.hpp"

namespace conedc {

std::string to_string(SolveStatus s);

nlohmann::json vec_to_json(const Vec& v);

void write_jsonl(std::ostream& out, const IterationTrace& trace);
void write_jsonl(std::ostream& out, const PenaltyTrace& trace);

/// Summary documents printed by the CLI with --json.
nlohmann::json report_json(const IterationTrace& trace);
nlohmann::json report_json(const PenaltyTrace& trace);

}  // namespace conedc
