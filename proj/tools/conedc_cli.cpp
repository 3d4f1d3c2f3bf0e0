// conedc: command-line front end for the cone-constrained DC solvers.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "conedc/certificates.hpp"
#include "conedc/dc_calculus.hpp"
#include "conedc/error.hpp"
#include "conedc/problem_file.hpp"
#include "conedc/trace_io.hpp"

using namespace conedc;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kInfeasibleStart = 2, kSchema = 3, kIterLimit = 4, kUsage = 64 };

struct Options {
  std::string problem_path;
  std::string builtin_name;
  std::string x0;
  double tol = 1e-8;
  double tau0 = 1.0;
  double mu = 2.0;
  double kappa = 1e-6;
  std::string tau_max = "inf";
  int max_iter = -1;
  std::uint64_t seed = 0;
  std::string trace_path;
  bool json = false;
  std::string lambda;
  int samples = 200;
  bool witness_map = false;
};

Vec parse_csv(const std::string& text, const char* what) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, "expected comma-separated numbers, got '" + text + "'");
    }
  }
  if (vals.empty()) throw CLI::ValidationError(what, "empty list");
  return Eigen::Map<Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

double parse_tau_max(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--tau-max", "expected a number or 'inf'");
}

struct Loaded {
  ProblemInstance problem;
  Vec x0;
};

Loaded load(const Options& o) {
  if (o.problem_path.empty() == o.builtin_name.empty()) {
    throw CLI::ValidationError("problem", "give exactly one of --problem FILE or --builtin NAME");
  }
  std::optional<ProblemInstance> p;
  std::optional<Vec> file_x0;
  if (!o.problem_path.empty()) {
    LoadedProblem lp = load_problem_file(o.problem_path);
    p.emplace(std::move(lp.problem));
    file_x0 = lp.x0;
  } else if (o.builtin_name == "quadratic_sdp") {
    p.emplace(random_quadratic_sdp(o.seed));
  } else {
    try {
      p.emplace(builtin(o.builtin_name));
    } catch (const Error&) {
      throw CLI::ValidationError("--builtin", "unknown builtin '" + o.builtin_name + "' (see 'list builtins')");
    }
  }
  Vec x0;
  if (!o.x0.empty()) {
    x0 = parse_csv(o.x0, "--x0");
  } else if (file_x0) {
    x0 = *file_x0;
  } else if (p->known_facts && p->known_facts->strictly_feasible_point) {
    x0 = *p->known_facts->strictly_feasible_point;
  } else {
    x0 = p->feasible_set.center();
  }
  if (x0.size() != p->dim()) {
    throw CLI::ValidationError("--x0", "expected " + std::to_string(p->dim()) + " coordinates");
  }
  return {std::move(*p), std::move(x0)};
}

InnerOptions inner_options(const Options& o) {
  InnerOptions in;
  in.tol = o.tol;
  in.tol_feas = o.tol;
  return in;
}

void write_trace(const Options& o, const auto& trace) {
  if (o.trace_path.empty()) return;
  std::ofstream out(o.trace_path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write trace file '" + o.trace_path + "'");
  write_jsonl(out, trace);
}

std::string fmt(const Vec& x) {
  std::ostringstream ss;
  ss.precision(10);
  ss << '[';
  for (int i = 0; i < x.size(); ++i) ss << (i ? ", " : "") << x(i);
  ss << ']';
  return ss.str();
}

int solve_ccp(const Options& o) {
  Loaded L = load(o);
  CcpConfig cfg;
  cfg.inner = inner_options(o);
  cfg.tol_feas = o.tol;
  if (o.max_iter > 0) cfg.max_iter = o.max_iter;
  const IterationTrace trace = run_ccp(L.problem, L.x0, cfg);
  write_trace(o, trace);
  if (o.json) {
    std::cout << report_json(trace).dump(2) << '\n';
  } else {
    const auto& last = trace.records.back();
    std::cout << "termination: " << to_string(trace.termination) << "\niterations: " << trace.records.size() - 1
              << "\nx: " << fmt(last.x) << "\nf0: " << last.f0 << "\ninfeasibility: " << last.infeasibility << '\n';
  }
  return trace.termination == CcpTermination::MaxIter ? kIterLimit : kOk;
}

int solve_penalty(const Options& o) {
  Loaded L = load(o);
  PenaltyConfig cfg;
  cfg.tau0 = o.tau0;
  cfg.mu = o.mu;
  cfg.kappa = o.kappa;
  cfg.tau_max = parse_tau_max(o.tau_max);
  cfg.inner = inner_options(o);
  if (o.max_iter > 0) cfg.max_iter = o.max_iter;
  const PenaltyTrace trace = run_penalty_ccp(L.problem, L.x0, cfg);
  write_trace(o, trace);
  if (o.json) {
    std::cout << report_json(trace).dump(2) << '\n';
  } else {
    const auto& last = trace.records.back();
    const Vec x1 = trace.records.size() > 1 ? trace.records[1].x : trace.last_solution;
    std::cout << "termination: " << to_string(trace.termination) << "\niterations: " << trace.records.size() - 1
              << "\nx1: " << fmt(x1) << "\nx: " << fmt(last.x) << "\nf0: " << last.f0 << "\ntau: " << last.tau
              << "\n|s|: " << last.s_norm << "\ninfeasibility: " << last.infeasibility << '\n';
  }
  return trace.termination == PenaltyTermination::MaxIter ? kIterLimit : kOk;
}

int check_criticality(const Options& o) {
  Loaded L = load(o);
  std::optional<ConeElement> lambda;
  if (!o.lambda.empty()) {
    const Vec l = parse_csv(o.lambda, "--lambda");
    const Cone& K = L.problem.constraint.cone;
    const auto& blocks = K.blocks();
    if (blocks.size() != 1 || blocks[0].kind != BlockKind::Orthant || l.size() != blocks[0].size) {
      throw CLI::ValidationError("--lambda", "multipliers on the command line need an orthant cone of matching size");
    }
    lambda.emplace(K, std::vector<Mat>{Mat(l)});
  }
  const double infeas = infeasibility(L.problem, L.x0);
  if (infeas > o.tol) throw Error(ErrorCode::InfeasibleStart, "point is infeasible: dist(F(x), -K) = " + std::to_string(infeas));
  const CriticalityCertificate cert = certify(L.problem, L.x0, lambda, inner_options(o));
  const bool critical = cert.subproblem_gap <= o.tol;
  json doc{{"x", vec_to_json(cert.x)},
           {"v", vec_to_json(cert.v)},
           {"criticality_residual", cert.subproblem_gap},
           {"verdict", critical ? "critical" : "not critical"},
           {"infeasibility", infeas},
           {"slater", {{"holds", cert.slater.holds}, {"min_value", cert.slater.min_value}, {"x", vec_to_json(cert.slater.x)}}}};
  if (cert.kkt) {
    doc["kkt"] = {{"stationarity", cert.kkt->stationarity},
                  {"complementarity", cert.kkt->complementarity},
                  {"dual_feasibility", cert.kkt->dual_feasibility}};
  }
  if (o.json) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "criticality residual: " << cert.subproblem_gap << "\nverdict: " << doc["verdict"].get<std::string>()
              << "\nslater: " << (cert.slater.holds ? "holds" : "fails") << '\n';
    if (cert.kkt) {
      std::cout << "kkt stationarity: " << cert.kkt->stationarity << "\nkkt complementarity: " << cert.kkt->complementarity
                << "\nkkt dual feasibility: " << cert.kkt->dual_feasibility << '\n';
    }
  }
  return kOk;
}

int check_generalized(const Options& o) {
  Loaded L = load(o);
  const Vec v = L.problem.objective.h.subgradient(L.x0);
  const double r = generalized_criticality_residual(L.problem, L.x0, v, o.tau0, inner_options(o));
  const bool critical = r <= o.tol;
  json doc{{"x", vec_to_json(L.x0)},
           {"tau", o.tau0},
           {"generalized_residual", r},
           {"verdict", critical ? "generalized critical" : "not generalized critical"},
           {"infeasibility", infeasibility(L.problem, L.x0)}};
  if (o.json) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "generalized residual: " << r << "\nverdict: " << doc["verdict"].get<std::string>() << '\n';
  }
  return kOk;
}

ComponentwiseDcMatrix componentwise_map(const Options& o, Vec& x) {
  if (o.witness_map) {
    x = o.x0.empty() ? Vec::Zero(1) : parse_csv(o.x0, "--x0");
    if (x.size() != 1) throw CLI::ValidationError("--x0", "the witness map has one variable");
    return nonconvex_witness_componentwise();
  }
  Loaded L = load(o);
  if (!L.problem.componentwise) {
    throw CLI::ValidationError("problem", "'" + L.problem.name + "' has no componentwise DC matrix (try a quadratic_sdp)");
  }
  x = L.x0;
  return *L.problem.componentwise;
}

int decompose_lambda_max(const Options& o) {
  Vec x;
  const ComponentwiseDcMatrix F = componentwise_map(o, x);
  const ScalarDcFunction dc = lambda_max_dc_decomposition(F);
  const LambdaMaxSubgradient sg = lambda_max_subgradient(F, x);
  const double lmax = Eigen::SelfAdjointEigenSolver<Mat>(F.value(x), Eigen::EigenvaluesOnly).eigenvalues()(F.order() - 1);
  json doc{{"x", vec_to_json(x)},      {"lambda_max", lmax},          {"g", dc.g.value(x)},
           {"h", dc.h.value(x)},       {"xi_g", vec_to_json(sg.xi_g)}, {"xi_h", vec_to_json(sg.xi_h)},
           {"identity_error", std::abs(dc.g.value(x) - dc.h.value(x) - lmax)}};
  if (o.json) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "lambda_max: " << lmax << "\ng: " << doc["g"].get<double>() << "\nh: " << doc["h"].get<double>()
              << "\nxi_g: " << fmt(sg.xi_g) << "\nxi_h: " << fmt(sg.xi_h) << '\n';
  }
  return kOk;
}

int verify_convexity(const Options& o) {
  VerifyOptions vo;
  vo.samples = o.samples;
  vo.seed = o.seed;
  std::optional<MapOracle> phi;
  std::optional<FeasibleSet> region;
  std::string what;
  if (o.witness_map) {
    phi = MapOracle::from(nonconvex_witness());
    region.emplace(FeasibleSet::box(1, -2.0, 2.0));
    what = "example-1 map";
  } else {
    Loaded L = load(o);
    phi = MapOracle::from(L.problem.constraint.G);
    region.emplace(L.problem.feasible_set);
    what = "G of " + L.problem.name;
  }
  const ConvexityVerdict v = verify_k_convexity(*phi, *region, vo);
  json doc{{"map", what}, {"passed", v.passed}, {"checks", v.checks}};
  if (v.witness) {
    const auto& w = *v.witness;
    doc["witness"] = {{"x1", vec_to_json(w.x1)},
                      {"x2", vec_to_json(w.x2)},
                      {"alpha", std::isnan(w.alpha) ? json(nullptr) : json(w.alpha)},
                      {"block", w.z.block},
                      {"z", vec_to_json(w.z.v)},
                      {"violation", w.violation}};
  }
  if (o.json) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << what << ": " << (v.passed ? "passed" : "witness found") << " (" << v.checks << " checks)\n";
    if (v.witness) {
      std::cout << "x1: " << fmt(v.witness->x1) << "\nx2: " << fmt(v.witness->x2) << "\nalpha: " << v.witness->alpha
                << "\nz: " << fmt(v.witness->z.v) << "\nviolation: " << v.witness->violation << '\n';
    }
  }
  return kOk;
}

void add_problem_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--problem", o.problem_path, "problem file (JSON)");
  cmd->add_option("--builtin", o.builtin_name, "builtin problem name");
  cmd->add_option("--x0", o.x0, "point as comma-separated values");
  cmd->add_option("--tol", o.tol, "solver and verdict tolerance");
  cmd->add_option("--seed", o.seed, "seed for random instances and sampling");
  cmd->add_flag("--json", o.json, "print the final report as JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cone-constrained DC optimization: CCP, penalty CCP, certificates"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* solve = app.add_subcommand("solve", "run a solver")->require_subcommand(1);
  auto* ccp = solve->add_subcommand("ccp", "convex-concave procedure from a feasible start");
  add_problem_flags(ccp, o);
  ccp->add_option("--max-iter", o.max_iter);
  ccp->add_option("--trace", o.trace_path, "write a JSONL trace");
  ccp->callback([&] { action = [&] { return solve_ccp(o); }; });

  auto* pen = solve->add_subcommand("penalty-ccp", "penalty convex-concave procedure");
  add_problem_flags(pen, o);
  pen->add_option("--tau0", o.tau0, "initial penalty scale");
  pen->add_option("--mu", o.mu, "penalty growth factor (> 1)");
  pen->add_option("--kappa", o.kappa, "slack threshold for penalty growth");
  pen->add_option("--tau-max", o.tau_max, "cap on the penalty norm, or 'inf'");
  pen->add_option("--max-iter", o.max_iter);
  pen->add_option("--trace", o.trace_path, "write a JSONL trace");
  pen->callback([&] { action = [&] { return solve_penalty(o); }; });

  auto* check = app.add_subcommand("check", "certificates at a point")->require_subcommand(1);
  auto* crit = check->add_subcommand("criticality", "criticality residual (and KKT residuals with --lambda)");
  add_problem_flags(crit, o);
  crit->add_option("--lambda", o.lambda, "multiplier for orthant constraints, comma-separated");
  crit->callback([&] { action = [&] { return check_criticality(o); }; });

  auto* gen = check->add_subcommand("generalized", "generalized criticality residual for penalty --tau0");
  add_problem_flags(gen, o);
  gen->add_option("--tau0", o.tau0, "penalty scale");
  gen->callback([&] { action = [&] { return check_generalized(o); }; });

  auto* dec = app.add_subcommand("decompose", "DC decompositions")->require_subcommand(1);
  auto* lmax = dec->add_subcommand("lambda-max", "lambda_max DC split of a componentwise DC matrix at --x0");
  add_problem_flags(lmax, o);
  lmax->add_flag("--witness-map", o.witness_map, "use [[1, x^2], [x^2, 1]]");
  lmax->callback([&] { action = [&] { return decompose_lambda_max(o); }; });

  auto* ver = app.add_subcommand("verify", "randomized checks")->require_subcommand(1);
  auto* conv = ver->add_subcommand("convexity", "K-convexity of the convex constraint part G");
  add_problem_flags(conv, o);
  conv->add_option("--samples", o.samples, "number of sampled pairs");
  conv->add_flag("--witness-map", o.witness_map, "test [[1, x^2], [x^2, 1]] instead");
  conv->callback([&] { action = [&] { return verify_convexity(o); }; });

  auto* list = app.add_subcommand("list", "listings")->require_subcommand(1);
  list->add_subcommand("builtins", "builtin problem names")->callback([&] {
    action = [] {
      for (const auto& n : builtin_names()) std::cout << n << '\n';
      std::cout << "quadratic_sdp (random, uses --seed)\n";
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::InfeasibleStart: return kInfeasibleStart;
      case ErrorCode::SchemaError: return kSchema;
      default: return kFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
