#pragma once

#include <functional>
#include <string>
#include <vector>

#include "neadmm/engine.hpp"

namespace neadmm::diagnostics {

/// A known primal-dual optimum of the problem being diagnosed.
struct OptimumReference {
  DenseVector x1_star;
  DenseVector x2_star;
  DenseVector y_star;
  double p_star = 0.0;
  /// Upper bound on ||f1(x1^k) - f1(x1*)||_inf for iteration k. When empty the
  /// exact value is computed from x1_star.
  std::function<double(int)> epsilon;

  /// Throws kInvalidArgument unless f1(x1*) + f2(x2*) = 0 within 1e-8.
  void Validate(const Problem& problem) const;
};

/// rho * eps * ||df2||_1 - y^T r
double ErrorBoundValue(double rho, double eps, double df2_l1, double y_dot_r);

struct ErrorBound {
  double bound = 0.0;  // rho eps^{k} ||f2(x2^k) - f2(x2^{k-1})||_1 - (y^k)^T r^k
  double gap = 0.0;    // p^k - p*
};

/// Objective gap and its a-priori bound at `state`; prev_f2 = f2(x2) one
/// iteration earlier. Throws kMissingReference when ref is null.
ErrorBound ComputeErrorBound(const Problem& problem, const IterateState& state,
                             const DenseVector& prev_f2, const OptimumReference* ref);

/// V = rho ||f2(x2) - f2(x2*)||^2 + ||y - y*||^2 / rho at the state's rho.
double Lyapunov(const IterateState& state, const OptimumReference* ref, const ConstraintTerm& f2);

/// Block matrices of the variational-inequality view, for blocks stacked as
/// (f1, f2, y), each of size d.
struct ViMatrices {
  int d = 0;
  double rho = 0.0;
  DenseMatrix C, D, E, G;
  double c_minus_de = 0.0;      // max |C - D E|
  double g_minus_closed = 0.0;  // max |G - (1/rho) blockdiag(0_d, 0_d, I_d)|
};

ViMatrices BuildViMatrices(int d, double rho);

struct ViSnapshot {
  DenseVector w;        // (f1(x1^k), f2(x2^k), y^k)
  DenseVector w_tilde;  // (f1(x1^{k+1}), f2(x2^{k+1}), y^k + rho(f1(x1^{k+1}) + f2(x2^k)))
};

/// One snapshot per completed iteration of `history` (as recorded by Solve).
/// Throws kInvalidArgument unless rho is the same in every iteration.
std::vector<ViSnapshot> ViSnapshots(const Problem& problem,
                                    const std::vector<IterateState>& history);

struct ViReport {
  std::vector<double> norms;                // ||E(w^k - w~^k)||_D^2
  std::vector<std::size_t> increases;       // k with norms[k] > norms[k-1] + 1e-10
  std::vector<double> identity_residuals;   // ||w^{k+1} - w^k + E(w^k - w~^k)||
  std::vector<double> rate_ratios;          // norms[k] * (k + 1)
  double rate_constant = 0.0;               // max of rate_ratios

  bool monotone() const { return increases.empty(); }
  double max_identity_residual() const;
};

/// Throws kEmptyTrace for an empty snapshot list.
ViReport ViSequenceCheck(const std::vector<ViSnapshot>& snapshots, const ViMatrices& mats);

/// One row per completed iteration k = 1..T of a recorded solve.
struct DiagnosticsRow {
  int k = 0;
  double bound = 0.0;
  double gap = 0.0;
  double lyapunov = 0.0;
  double vi_norm = 0.0;  // NaN when rho varies
  std::string flags;     // '|'-joined: bound_violation, lyapunov_increase, vi_increase
};

std::vector<DiagnosticsRow> Diagnose(const Problem& problem,
                                     const std::vector<IterateState>& history,
                                     const OptimumReference& ref);

}  // namespace neadmm::diagnostics
