#pragma once

// JSON problem files. Three kinds are accepted:
//
//   {"kind": "builtin", "name": "example29"}
//   {"kind": "quadratic_sdp", "C": [[...]], "B": [[[...]], ...],
//    "A": [{"i": 0, "j": 0, "matrix": [[...]]}, ...],
//    "objective": {"P": [[...]], "q": [...], "Q": [[...]]},
//    "box": {"lo": [...], "hi": [...]}, "mu": 4.0}
//   {"kind": "scalar_dc_polynomial", "dim": 1,
//    "objective": {"g": P, "h": P}, "constraints": [{"G": P, "H": P}, ...],
//    "box": {"lo": [...], "hi": [...]}}
//
// where a polynomial P is either {"coeffs": [c0, c1, ...]} (dim 1, ascending
// powers) or {"terms": [{"coef": c, "powers": [p1, ..., pd]}, ...]}.
// Optional everywhere: "name", "cone" (checked against the data), "x0",
// "known_facts": {"critical_points", "global_optima", "strictly_feasible_point", "notes"}.
// Every violation raises Error(SchemaError).

#include <optional>
#include <string>

#include "json.hpp"

#include "conedc/problem_library.hpp"

namespace conedc {

struct LoadedProblem {
  ProblemInstance problem;
  std::optional<Vec> x0;
};

/// {"psd": n} | {"orthant": m} | {"product": [descriptor, ...]}
Cone cone_from_json(const nlohmann::json& j);
nlohmann::json cone_to_json(const Cone& cone);

LoadedProblem problem_from_json(const nlohmann::json& doc);
LoadedProblem load_problem_file(const std::string& path);

nlohmann::json export_quadratic_sdp(const QuadraticSdpData& data, const std::string& name = "quadratic_sdp");
nlohmann::json export_builtin(const std::string& name);

}  // namespace conedc
