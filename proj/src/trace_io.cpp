#include "conedc/trace_io.hpp"

namespace conedc {

using nlohmann::json;

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::IterLimit: return "IterLimit";
  }
  return "unknown";
}

json vec_to_json(const Vec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

namespace {

json ccp_record(const CcpRecord& r, const std::string& status) {
  return {{"n", r.n},         {"x", vec_to_json(r.x)}, {"f0", r.f0},     {"infeas", r.infeasibility},
          {"s_norm", nullptr}, {"tau", nullptr},         {"merit", nullptr}, {"status", status}};
}

json penalty_record(const PenaltyRecord& r, const std::string& status) {
  return {{"n", r.n},           {"x", vec_to_json(r.x)}, {"f0", r.f0},       {"infeas", r.infeasibility},
          {"s_norm", r.s_norm}, {"tau", r.tau},          {"merit", r.merit}, {"status", status}};
}

}  // namespace

void write_jsonl(std::ostream& out, const IterationTrace& trace) {
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const bool last = i + 1 == trace.records.size();
    const auto& r = trace.records[i];
    out << ccp_record(r, last ? to_string(trace.termination) : to_string(r.subproblem_status)).dump() << '\n';
  }
}

void write_jsonl(std::ostream& out, const PenaltyTrace& trace) {
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const bool last = i + 1 == trace.records.size();
    const auto& r = trace.records[i];
    out << penalty_record(r, last ? to_string(trace.termination) : to_string(r.subproblem_status)).dump() << '\n';
  }
}

json report_json(const IterationTrace& trace) {
  const auto& last = trace.records.back();
  return {{"algorithm", "ccp"},
          {"termination", to_string(trace.termination)},
          {"iterations", trace.records.size() - 1},
          {"x", vec_to_json(last.x)},
          {"f0", last.f0},
          {"infeas", last.infeasibility}};
}

json report_json(const PenaltyTrace& trace) {
  const auto& last = trace.records.back();
  json doc{{"algorithm", "penalty-ccp"},
           {"termination", to_string(trace.termination)},
           {"iterations", trace.records.size() - 1},
           {"subproblems", trace.subproblems},
           {"x", vec_to_json(last.x)},
           {"f0", last.f0},
           {"infeas", last.infeasibility},
           {"s_norm", last.s_norm},
           {"tau", last.tau},
           {"merit", last.merit}};
  doc["x1"] = trace.records.size() > 1 ? vec_to_json(trace.records[1].x) : vec_to_json(trace.last_solution);
  return doc;
}

}  // namespace conedc
