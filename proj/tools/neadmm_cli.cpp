// Command-line harness: runs the examples and applications and writes CSV traces.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "neadmm/diagnostics.hpp"
#include "neadmm/examples.hpp"
#include "neadmm/io.hpp"
#include "neadmm/maxop.hpp"
#include "neadmm/sphere.hpp"
#include "neadmm/synthetic.hpp"

namespace {

using namespace neadmm;

constexpr int kExitConverged = 0;
constexpr int kExitError = 1;
constexpr int kExitMaxIter = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<double> rho0;
  std::string rho_schedule = "constant";
  std::optional<int> max_iter;
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;
  std::uint64_t seed = 1;
  int n = 128, m = 64, k = 16;
  int bags = 20, instances = 5, features = 4;
  std::optional<double> lambda;
  std::string input;
  std::string output;
  std::string dataset_out;
  bool diagnose = false;
  bool generate_only = false;
  int example = 1;
};

RhoSchedule ParseSchedule(const std::string& text, double rho0) {
  if (!(rho0 > 0.0)) throw UsageError("--rho0 must be positive");
  if (text == "constant") return RhoSchedule::Constant(rho0);
  const std::string prefix = "increment:";
  if (text.rfind(prefix, 0) == 0) {
    double delta = 0.0;
    try {
      delta = io::ParseDouble(text.substr(prefix.size()));
    } catch (const SolverError&) {
      throw UsageError("bad increment in --rho-schedule: " + text);
    }
    if (!(delta >= 0.0)) throw UsageError("increment must be nonnegative");
    return RhoSchedule::Increment(rho0, delta);
  }
  throw UsageError("--rho-schedule must be 'constant' or 'increment:<delta>'");
}

StopCriteria MakeStop(const RunConfig& cfg, int default_max_iter) {
  StopCriteria stop;
  stop.tol_primal = cfg.tol_primal;
  stop.tol_dual = cfg.tol_dual;
  stop.max_iter = cfg.max_iter.value_or(default_max_iter);
  try {
    stop.Validate();
  } catch (const SolverError& e) {
    throw UsageError(e.what());
  }
  return stop;
}

void Emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    io::WriteFile(cfg.output, text);
  }
}

template <class State>
int Finish(const SolveResult<State>& result) {
  std::cerr << "status: " << ToString(result.status) << " after " << result.trace.size()
            << " iterations\n";
  if (result.failed()) {
    std::cerr << "error: " << result.message << '\n';
    return kExitError;
  }
  return result.converged() ? kExitConverged : kExitMaxIter;
}

int RunExample(const RunConfig& cfg, examples::Which which, bool report_only) {
  const RhoSchedule schedule = ParseSchedule(cfg.rho_schedule, cfg.rho0.value_or(1.0));
  const StopCriteria stop = MakeStop(cfg, 30);
  const Problem problem = examples::MakeProblem(which);
  std::vector<IterateState> history;
  const auto result = Solve(problem, examples::DefaultStart(which, schedule.rho0()), schedule,
                            stop, &history);

  std::ostringstream out;
  if (report_only || cfg.diagnose) {
    const auto rows = diagnostics::Diagnose(problem, history, examples::Reference(which));
    if (report_only) {
      io::WriteReportCsv(out, rows);
    } else {
      io::WriteTraceCsv(out, result.trace, &rows);
    }
  } else {
    io::WriteTraceCsv(out, result.trace);
  }
  Emit(cfg, out.str());
  if (!result.trace.empty()) {
    std::cerr << "objective: " << io::FormatDouble(result.trace.back().objective)
              << " (optimum " << io::FormatDouble(examples::KnownOptimum(which).p) << ")\n";
  }
  return Finish(result);
}

int RunOneBit(const RunConfig& cfg) {
  if (cfg.diagnose) throw UsageError("--diagnose needs a known optimum; use example1 or example2");
  if (cfg.n < 1 || cfg.m < 1 || cfg.k < 1 || cfg.k > cfg.n) {
    throw UsageError("need --n, --m >= 1 and 1 <= --k <= --n");
  }
  const double lambda = cfg.lambda.value_or(10.0);
  if (!(lambda >= 0.0)) throw UsageError("--lambda must be nonnegative");
  const RhoSchedule schedule = ParseSchedule(cfg.rho_schedule, cfg.rho0.value_or(1000.0));
  const StopCriteria stop = MakeStop(cfg, 300);

  const auto data = synthetic::GenerateOneBit(cfg.n, cfg.m, cfg.k, cfg.seed, lambda);
  const auto init = sphere::BackProjectionState(data.problem, schedule.rho0());
  const auto result = sphere::SolveOneBit(data.problem, init, schedule, stop);

  std::ostringstream out;
  io::WriteTraceCsv(out, result.trace);
  Emit(cfg, out.str());
  const DenseVector& x = result.state.x;
  std::cerr << "sphere_residual: " << io::FormatDouble(std::abs(x.squaredNorm() - 1.0)) << '\n'
            << "correlation: " << io::FormatDouble(std::abs(x.dot(data.x_true)) / x.norm())
            << '\n';
  return Finish(result);
}

int RunMultiInstance(const RunConfig& cfg) {
  if (cfg.diagnose) throw UsageError("--diagnose needs a known optimum; use example1 or example2");
  maxop::BagDataset data;
  if (!cfg.input.empty()) {
    std::istringstream in(io::ReadFile(cfg.input));
    data = io::ReadBagCsv(in);
  } else {
    if (cfg.bags < 1 || cfg.instances < 1 || cfg.features < 1) {
      throw UsageError("--bags, --instances and --features must be positive");
    }
    const auto gen = synthetic::GenerateBags(cfg.bags, cfg.instances, cfg.features, cfg.seed);
    data = gen.data;
    std::cerr << "positive_fraction: " << io::FormatDouble(gen.positive_fraction) << '\n';
  }
  if (!cfg.dataset_out.empty()) {
    std::ostringstream bag_csv;
    io::WriteBagCsv(bag_csv, data);
    io::WriteFile(cfg.dataset_out, bag_csv.str());
  }
  if (cfg.generate_only) return kExitConverged;

  const double lambda = cfg.lambda.value_or(1.0);
  if (!(lambda >= 0.0)) throw UsageError("--lambda must be nonnegative");
  const RhoSchedule schedule = ParseSchedule(cfg.rho_schedule, cfg.rho0.value_or(0.1));
  const StopCriteria stop = MakeStop(cfg, 1000);

  maxop::MaxOpProblem problem{data, maxop::LogisticLoss(data.labels()), ProxTerm::L1(lambda)};
  const auto result =
      maxop::Solve(problem, maxop::ZeroState(data, schedule.rho0()), schedule, stop);

  std::ostringstream out;
  io::WriteTraceCsv(out, result.trace);
  Emit(cfg, out.str());
  const DenseVector gap = result.state.q - data.BagMax(result.state.t);
  std::cerr << "max_rule_gap: " << io::FormatDouble(gap.lpNorm<Eigen::Infinity>()) << '\n';
  return Finish(result);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neADMM solvers for nonlinear equality-constrained problems"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--rho0", cfg.rho0, "Initial penalty parameter");
    sub->add_option("--rho-schedule", cfg.rho_schedule, "constant or increment:<delta>");
    sub->add_option("--max-iter", cfg.max_iter, "Iteration limit");
    sub->add_option("--tol-primal", cfg.tol_primal, "Primal residual tolerance");
    sub->add_option("--tol-dual", cfg.tol_dual, "Dual residual tolerance");
    sub->add_option("--output,-o", cfg.output, "Trace CSV path (stdout when omitted)");
  };

  auto* ex1 = app.add_subcommand("example1", "min x+z s.t. sqrt(x)+sqrt(z)=1");
  auto* ex2 = app.add_subcommand("example2", "min x+z s.t. x^2+z^2=1");
  for (auto* sub : {ex1, ex2}) {
    add_common(sub);
    sub->add_flag("--diagnose", cfg.diagnose, "Append bound, gap, lyapunov and vi_norm columns");
  }

  auto* cs = app.add_subcommand("onebit-cs", "1-bit compressive sensing on synthetic data");
  add_common(cs);
  cs->add_option("--n", cfg.n, "Signal length");
  cs->add_option("--m", cfg.m, "Number of measurements");
  cs->add_option("--k", cfg.k, "Sparsity");
  cs->add_option("--lambda", cfg.lambda, "Sign-consistency weight");
  cs->add_option("--seed", cfg.seed, "Data seed");
  cs->add_flag("--diagnose", cfg.diagnose, "Not available for this subcommand");

  auto* mi = app.add_subcommand("multi-instance", "Max-rule multi-instance learning");
  add_common(mi);
  mi->add_option("--input", cfg.input, "Bag CSV (bag_id,label,f1..fp)");
  mi->add_option("--bags", cfg.bags, "Synthetic bag count");
  mi->add_option("--instances", cfg.instances, "Synthetic instances per bag");
  mi->add_option("--features", cfg.features, "Synthetic feature count");
  mi->add_option("--seed", cfg.seed, "Data seed");
  mi->add_option("--lambda", cfg.lambda, "L1 weight on beta");
  mi->add_option("--dataset-out", cfg.dataset_out, "Write the dataset as bag CSV");
  mi->add_flag("--generate-only", cfg.generate_only, "Write --dataset-out and stop");
  mi->add_flag("--diagnose", cfg.diagnose, "Not available for this subcommand");

  auto* diag = app.add_subcommand("diagnose", "Convergence diagnostics report for an example");
  add_common(diag);
  diag->add_option("--example", cfg.example, "1 or 2")->check(CLI::IsMember({1, 2}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (ex1->parsed()) return RunExample(cfg, examples::Which::kExample1, false);
    if (ex2->parsed()) return RunExample(cfg, examples::Which::kExample2, false);
    if (cs->parsed()) return RunOneBit(cfg);
    if (mi->parsed()) {
      if (cfg.generate_only && cfg.dataset_out.empty()) {
        throw UsageError("--generate-only needs --dataset-out");
      }
      return RunMultiInstance(cfg);
    }
    const auto which = cfg.example == 1 ? examples::Which::kExample1 : examples::Which::kExample2;
    return RunExample(cfg, which, true);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
