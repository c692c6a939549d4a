// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "../tests/oracles.hpp"
#include "neadmm/diagnostics.hpp"
#include "neadmm/examples.hpp"
#include "neadmm/maxop.hpp"
#include "neadmm/sphere.hpp"
#include "neadmm/synthetic.hpp"

namespace {

using namespace neadmm;
using examples::Which;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

template <class Check>
void Criterion(int id, const char* name, Check&& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = check();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s criterion %d: %s (%s; %.2fs)\n", out.pass ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), secs);
  std::fflush(stdout);
  if (!out.pass) ++failures;
}

std::string Fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const Which kExamples[] = {Which::kExample1, Which::kExample2};

std::vector<RhoSchedule> ExampleSchedules() {
  return {RhoSchedule::Constant(1.0), RhoSchedule::Increment(1.0, 0.01)};
}

Outcome ExampleConvergence() {
  Outcome out;
  double worst_gap = 0, worst_r = 0;
  int latest = 0;
  for (Which w : kExamples) {
    for (const auto& s : ExampleSchedules()) {
      const auto res = examples::RunExample(w, s, 30);
      if (res.failed() || res.trace.empty()) return {false, res.message};
      const double p_star = examples::KnownOptimum(w).p;
      int first = -1;
      for (const auto& row : res.trace) {
        if (std::abs(row.objective - p_star) <= 1e-3 && row.r_norm <= 1e-3) {
          first = row.k;
          break;
        }
      }
      worst_gap = std::max(worst_gap, std::abs(res.trace.back().objective - p_star));
      worst_r = std::max(worst_r, res.trace.back().r_norm);
      if (first < 0) out.pass = false;
      latest = std::max(latest, first);
    }
  }
  out.pass = out.pass && worst_gap <= 1e-3 && worst_r <= 1e-3;
  out.detail = "tolerance first met by iteration " + std::to_string(latest) +
               Fmt(", final max |p-p*| %.2e", worst_gap) + Fmt(", max ||r|| %.2e", worst_r);
  return out;
}

Outcome TUpdateExactness() {
  synthetic::Rng rng(2);
  double worst_gap = 0, worst_drop = 0;
  int steps = 0;
  for (int trial = 0; trial < 500; ++trial) {
    maxop::TUpdateInstance inst;
    inst.psi = 6 * rng.Uniform() - 3;
    inst.phi.resize(1 + static_cast<Eigen::Index>(rng.Below(6)));
    for (Eigen::Index j = 0; j < inst.phi.size(); ++j) inst.phi[j] = 6 * rng.Uniform() - 3;

    const DenseVector t = maxop::TUpdateBag(inst);
    const double h = maxop::BagObjective(inst, t);
    const DenseVector cd = oracle::BagCoordinateDescent(inst.psi, inst.phi, inst.phi);
    const double best = std::min({oracle::BagMinimumByLevel(inst.psi, inst.phi),
                                  oracle::BagMinimumByEnumeration(inst.psi, inst.phi),
                                  oracle::BagH(inst.psi, inst.phi, cd)});
    worst_gap = std::max(worst_gap, h - best);

    // h with the top c sorted entries set to a_c, for c past the chosen prefix.
    const auto n = inst.phi.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return inst.phi[a] > inst.phi[b]; });
    std::vector<double> hs, levels;
    double sum = inst.psi;
    for (Eigen::Index c = 1; c <= n; ++c) {
      sum += inst.phi[order[static_cast<std::size_t>(c - 1)]];
      levels.push_back(sum / double(c + 1));
      DenseVector tc = inst.phi;
      for (Eigen::Index j = 0; j < c; ++j) tc[order[static_cast<std::size_t>(j)]] = levels.back();
      hs.push_back(maxop::BagObjective(inst, tc));
    }
    // c* is the first c with a_c > phi'_{c+1}, else n.
    std::size_t chosen = hs.size() - 1;
    for (std::size_t c = 0; c + 1 < hs.size(); ++c) {
      if (levels[c] > inst.phi[order[c + 1]]) {
        chosen = c;
        break;
      }
    }
    worst_gap = std::max(worst_gap, std::abs(hs[chosen] - h));
    for (std::size_t c = chosen + 1; c < hs.size(); ++c) {
      worst_drop = std::max(worst_drop, hs[c - 1] - hs[c]);
      ++steps;
    }
  }
  return {worst_gap <= 1e-9 && worst_drop <= 1e-12,
          Fmt("max h-gap %.2e", worst_gap) + Fmt(", max decrease past c* %.2e", worst_drop) +
              " over " + std::to_string(steps) + " steps"};
}

Outcome WUpdateOptimality() {
  synthetic::Rng rng(3);
  double worst_gap = -1e300, worst_stat = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 3;
    DenseVector x(n), y2(n);
    for (int i = 0; i < n; ++i) {
      x[i] = 4 * rng.Uniform() - 2;
      y2[i] = 4 * rng.Uniform() - 2;
    }
    const double y1 = 4 * rng.Uniform() - 2, rho = 1.0;
    const DenseVector v = x - y2 / rho;
    const DenseVector w = sphere::UpdateW(x, y1, y2, rho);
    worst_gap = std::max(worst_gap, sphere::SpherePenaltyObjective(w, v, y1, rho) -
                                        oracle::SphereStepMinimum(v, y1, rho));
    const double stat = (2.0 * (w - v) + 4.0 * (w.squaredNorm() - 1.0 + y1 / rho) * w).norm();
    worst_stat = std::max(worst_stat, stat / (1.0 + v.norm()));
  }
  return {worst_gap <= 1e-6 && worst_stat <= 1e-6,
          Fmt("max objective minus oracle %.2e", worst_gap) +
              Fmt(", max scaled stationarity %.2e", worst_stat)};
}

Outcome ErrorBoundHolds() {
  double worst = -1e300;
  int rows = 0;
  for (Which w : kExamples) {
    for (const auto& s : ExampleSchedules()) {
      const Problem p = examples::MakeProblem(w);
      const auto ref = examples::Reference(w);
      std::vector<IterateState> h;
      examples::RunExample(w, s, 30, &h);
      for (std::size_t k = 1; k < h.size(); ++k) {
        const auto eb = diagnostics::ComputeErrorBound(p, h[k], p.f2.Eval(h[k - 1].x2), &ref);
        worst = std::max(worst, eb.gap - eb.bound);
        ++rows;
      }
    }
  }
  return {worst <= 1e-8, std::to_string(rows) + " iterations" + Fmt(", max gap-bound %.2e", worst)};
}

Outcome LyapunovDescent() {
  double worst = -1e300;
  for (Which w : kExamples) {
    const Problem p = examples::MakeProblem(w);
    const auto ref = examples::Reference(w);
    std::vector<IterateState> h;
    examples::RunExample(w, RhoSchedule::Constant(1.0), 30, &h);
    for (std::size_t k = 1; k < h.size(); ++k) {
      worst = std::max(worst, diagnostics::Lyapunov(h[k], &ref, p.f2) -
                                  diagnostics::Lyapunov(h[k - 1], &ref, p.f2));
    }
  }
  return {worst <= 1e-8, Fmt("max V increase %.2e", worst)};
}

Outcome ViProperties() {
  double min_eig = 1e300, c_de = 0, asym = 0;
  for (int d : {1, 2, 5, 10}) {
    for (double rho : {0.1, 1.0, 10.0}) {
      const auto m = diagnostics::BuildViMatrices(d, rho);
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m.G);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
      c_de = std::max(c_de, m.c_minus_de);
      asym = std::max(asym, (m.G - m.G.transpose()).cwiseAbs().maxCoeff());
    }
  }
  std::size_t increases = 0;
  double identity = 0;
  for (Which w : kExamples) {
    const Problem p = examples::MakeProblem(w);
    std::vector<IterateState> h;
    examples::RunExample(w, RhoSchedule::Constant(1.0), 30, &h);
    const auto r = diagnostics::ViSequenceCheck(diagnostics::ViSnapshots(p, h),
                                                diagnostics::BuildViMatrices(1, 1.0));
    increases += r.increases.size();
    identity = std::max(identity, r.max_identity_residual());
  }
  return {min_eig >= -1e-10 && c_de == 0.0 && asym == 0.0 && increases == 0 && identity <= 1e-8,
          Fmt("min eig(G) %.2e", min_eig) + Fmt(", max|C-DE| %.1e", c_de) + ", " +
              std::to_string(increases) + " norm increases" +
              Fmt(", max identity residual %.2e", identity)};
}

Outcome OneBitDesk() {
  const std::uint64_t seeds[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  Outcome out;
  double worst_sphere = 0, min_margin = 1e300, min_drop = 1e300;
  int runs = 0;
  for (int m : {32, 64, 128}) {
    for (std::uint64_t seed : seeds) {
      const auto data = synthetic::GenerateOneBit(128, m, 16, seed, 10.0);
      const auto init = sphere::BackProjectionState(data.problem, 1000.0);
      const auto res = sphere::SolveOneBit(data.problem, init, RhoSchedule::Constant(1000.0),
                                           StopCriteria{1e-6, 1e-6, 300});
      if (res.failed()) return {false, res.message};
      const DenseVector& x = res.state.x;
      const double sphere_res = std::abs(x.squaredNorm() - 1.0);
      const double drop = sphere::OneBitObjective(data.problem, init.w, init.z) -
                          res.trace.back().objective;
      synthetic::Rng baseline_rng(seed + 1000u * static_cast<std::uint64_t>(m));
      const DenseVector r = synthetic::RandomUnitVector(128, baseline_rng);
      const double corr = std::abs(x.dot(data.x_true)) / x.norm();
      const double base = std::abs(r.dot(data.x_true));
      worst_sphere = std::max(worst_sphere, sphere_res);
      min_drop = std::min(min_drop, drop);
      min_margin = std::min(min_margin, corr - base);
      if (!(sphere_res <= 1e-3 && drop > 0 && corr > base)) out.pass = false;
      ++runs;
    }
  }
  out.detail = std::to_string(runs) + " runs" + Fmt(", max |‖x‖²-1| %.2e", worst_sphere) +
               Fmt(", min objective drop %.3f", min_drop) +
               Fmt(", min correlation margin over baseline %.3f", min_margin);
  return out;
}

maxop::MaxOpProblem DeskBags() {
  const auto gen = synthetic::GenerateBags(20, 5, 4, 1);
  return {gen.data, maxop::LogisticLoss(gen.data.labels()), ProxTerm::L1(1.0)};
}

Outcome MultiInstanceDesk() {
  const auto p = DeskBags();
  const auto res = maxop::Solve(p, maxop::ZeroState(p.data, 0.1), RhoSchedule::Increment(0.1, 0.05),
                                StopCriteria{1e-6, 1e-6, 1000});
  if (res.failed()) return {false, res.message};
  const double gap = (res.state.q - p.data.BagMax(res.state.t)).lpNorm<Eigen::Infinity>();
  const double r = res.trace.back().r_norm;
  return {r <= 1e-2 && gap <= 1e-2,
          "rho 0.1 + 0.05k, " + std::to_string(res.trace.size()) + " iterations" +
              Fmt(", r %.2e", r) + Fmt(", max |q - max t| %.2e", gap)};
}

void MultiInstanceConstantRhoInfo() {
  const auto p = DeskBags();
  const auto res = maxop::Solve(p, maxop::ZeroState(p.data, 0.1), RhoSchedule::Constant(0.1),
                                StopCriteria{1e-6, 1e-6, 1000});
  const double gap = (res.state.q - p.data.BagMax(res.state.t)).lpNorm<Eigen::Infinity>();
  std::printf("INFO criterion 8 at constant rho 0.1: %zu iterations, r %.2e, max |q - max t| %.2e"
              " (not gating)\n",
              res.trace.size(), res.trace.empty() ? 0.0 : res.trace.back().r_norm, gap);
}

Outcome ClassicAdmmReduction() {
  const double rho = 1.5;
  const int iters = 50;
  const auto qp = oracle::RandomQuadraticPair(5, 2024);
  const Problem p = oracle::EngineProblem(qp);
  std::vector<IterateState> h;
  Solve(p, ZeroState(p, rho), RhoSchedule::Constant(rho), StopCriteria{1e-300, 1e-300, iters}, &h);
  if (h.size() != static_cast<std::size_t>(iters) + 1) return {false, "engine stopped early"};
  const auto ref = oracle::ScaledAdmm(qp, rho, iters);
  double worst = 0;
  for (int k = 1; k <= iters; ++k) {
    const auto& s = h[static_cast<std::size_t>(k)];
    const auto& r = ref[static_cast<std::size_t>(k - 1)];
    worst = std::max({worst, (s.x1 - r.x).lpNorm<Eigen::Infinity>(),
                      (s.x2 - r.z).lpNorm<Eigen::Infinity>(), (s.y - r.y).lpNorm<Eigen::Infinity>()});
  }
  return {worst <= 1e-10, std::to_string(iters) + " iterations" + Fmt(", max deviation %.2e", worst)};
}

}  // namespace

int main() {
  Criterion(1, "example convergence, both rho strategies", ExampleConvergence);
  Criterion(2, "t-update exactness and monotone h past c*", TUpdateExactness);
  Criterion(3, "sphere w-update optimality", WUpdateOptimality);
  Criterion(4, "error bound on examples", ErrorBoundHolds);
  Criterion(5, "Lyapunov descent on examples", LyapunovDescent);
  Criterion(6, "variational-inequality properties", ViProperties);
  Criterion(7, "1-bit compressive sensing desk run", OneBitDesk);
  Criterion(8, "multi-instance desk run", MultiInstanceDesk);
  MultiInstanceConstantRhoInfo();
  Criterion(9, "classic ADMM reduction", ClassicAdmmReduction);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
