#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conedc/dc_function.hpp"
#include "conedc/feasible_set.hpp"

namespace conedc {

struct KnownMultiplier {
  Vec x;
  ConeElement lambda;
};

/// Analytic facts attached to library instances, used by tests and reports.
struct KnownFacts {
  std::vector<Vec> critical_points;
  std::vector<Vec> global_optima;
  std::vector<KnownMultiplier> multipliers;
  std::optional<Vec> strictly_feasible_point;
  std::string notes;
};

/// min g0(x) - h0(x)  s.t.  G(x) - H(x) in -K,  x in A.
struct ProblemInstance {
  std::string name;
  ScalarDcFunction objective;
  ConeDcMap constraint;
  FeasibleSet feasible_set;
  std::optional<KnownFacts> known_facts;
  /// Entrywise DC view of the constraint map, when the instance has one.
  std::optional<ComponentwiseDcMatrix> componentwise;

  int dim() const { return objective.dim; }
};

}  // namespace conedc
