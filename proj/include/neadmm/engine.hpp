#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "neadmm/terms.hpp"
#include "neadmm/types.hpp"

namespace neadmm {

/// Penalty parameter as a function of the iteration index. The value for
/// iteration k is fixed when the iteration starts and used by every update in it.
class RhoSchedule {
 public:
  static RhoSchedule Constant(double rho0);
  /// rho_k = rho0 + k * delta, delta >= 0.
  static RhoSchedule Increment(double rho0, double delta);

  /// k is the zero-based index of the iteration being run.
  double At(int k) const { return rho0_ + delta_ * static_cast<double>(k); }
  bool is_constant() const { return delta_ == 0.0; }
  double rho0() const { return rho0_; }
  double delta() const { return delta_; }

 private:
  RhoSchedule(double rho0, double delta) : rho0_(rho0), delta_(delta) {}
  double rho0_;
  double delta_;
};

struct StopCriteria {
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;
  int max_iter = 1000;

  void Validate() const;
};

/// Primal and dual variables of one solve of min F1(x1)+F2(x2) s.t. f1(x1)+f2(x2)=0.
struct IterateState {
  DenseVector x1;
  DenseVector x2;
  DenseVector y;
  double rho = 1.0;
  int k = 0;
  DenseVector primal_residual;  // f1(x1) + f2(x2), size d
  DenseVector dual_residual;    // rho * J_f1(x1)^T (f2(x2) - f2(x2_prev)), size m1
};

bool AllFinite(const IterateState& s);

struct TraceRow {
  int k = 0;
  double objective = 0.0;
  double r_norm = 0.0;
  double s_norm = 0.0;
  double rho = 0.0;
};

enum class SolveStatus { kConverged, kMaxIterations, kSubproblemFailure, kNonFiniteIterate };

const char* ToString(SolveStatus status);

template <class State>
struct SolveResult {
  State state;
  std::vector<TraceRow> trace;
  SolveStatus status = SolveStatus::kMaxIterations;
  std::string message;

  bool converged() const { return status == SolveStatus::kConverged; }
  bool failed() const {
    return status == SolveStatus::kSubproblemFailure || status == SolveStatus::kNonFiniteIterate;
  }
};

/// Minimizes the augmented Lagrangian in one block with the other fixed:
/// (current block value, other block value, y, rho) -> new block value.
using BlockSolver =
    std::function<DenseVector(const DenseVector&, const DenseVector&, const DenseVector&, double)>;

/// Problem data for the generic two-block engine. The block solvers must return
/// minimizers of L_rho in their block. Existence of those minimizers is the
/// caller's responsibility and is not checked.
struct Problem {
  CompositeObjective F1;
  CompositeObjective F2;
  ConstraintTerm f1;
  ConstraintTerm f2;
  BlockSolver solve_x1;  // (x1^k, x2^k, y^k, rho) -> x1^{k+1}
  BlockSolver solve_x2;  // (x2^k, x1^{k+1}, y^k, rho) -> x2^{k+1}

  double Objective(const DenseVector& x1, const DenseVector& x2) const {
    return F1.Value(x1) + F2.Value(x2);
  }
};

/// F1(x1) + F2(x2) + y^T c + (rho/2)||c||^2 with c = f1(x1) + f2(x2).
double AugmentedLagrangian(const CompositeObjective& F1, const CompositeObjective& F2,
                           const ConstraintTerm& f1, const ConstraintTerm& f2,
                           const DenseVector& x1, const DenseVector& x2, const DenseVector& y,
                           double rho);

DenseVector DualUpdate(const DenseVector& y, double rho, const DenseVector& f1x1,
                       const DenseVector& f2x2);

struct Residuals {
  DenseVector primal;
  DenseVector dual;
};

Residuals ComputeResiduals(const ConstraintTerm& f1, const ConstraintTerm& f2,
                           const DenseVector& x1_new, const DenseVector& x2_new,
                           const DenseVector& x2_old, double rho);

/// x1 = 0, x2 = 0, y = 0, residuals zero, rho = rho0.
IterateState ZeroState(const Problem& problem, double rho0);

/// Runs one neADMM iteration per loop pass until both residual norms are within
/// tolerance or max_iter is reached. If `history` is given it receives the
/// initial state followed by the state after every completed iteration.
SolveResult<IterateState> Solve(const Problem& problem, IterateState init,
                                const RhoSchedule& schedule, const StopCriteria& stop,
                                std::vector<IterateState>* history = nullptr);

/// Shared outer loop for the application solvers. `step(state, rho, k)` advances
/// `state` by one iteration and returns its trace row. A SolverError thrown by
/// `step` aborts with kSubproblemFailure; a non-finite state or row aborts with
/// kNonFiniteIterate. In both cases the last good state and the partial trace
/// are returned.
template <class State, class Step>
SolveResult<State> RunIterations(State init, const RhoSchedule& schedule,
                                 const StopCriteria& stop, Step&& step,
                                 const std::type_identity_t<std::function<void(const State&)>>& observer = {}) {
  stop.Validate();
  SolveResult<State> result{std::move(init), {}, SolveStatus::kMaxIterations, {}};
  if (observer) observer(result.state);
  for (int k = 0; k < stop.max_iter; ++k) {
    const double rho = schedule.At(k);
    State next = result.state;
    TraceRow row;
    try {
      row = step(next, rho, k);
    } catch (const SolverError& e) {
      result.status = e.code() == ErrorCode::kNonFiniteIterate ? SolveStatus::kNonFiniteIterate
                                                                : SolveStatus::kSubproblemFailure;
      result.message = "iteration " + std::to_string(k + 1) + ": " + e.what();
      return result;
    }
    row.k = k + 1;
    row.rho = rho;
    if (!AllFinite(next) || !std::isfinite(row.objective) || !std::isfinite(row.r_norm) ||
        !std::isfinite(row.s_norm)) {
      result.status = SolveStatus::kNonFiniteIterate;
      result.message = "iteration " + std::to_string(k + 1) + ": non-finite iterate";
      return result;
    }
    result.state = std::move(next);
    result.trace.push_back(row);
    if (observer) observer(result.state);
    if (row.r_norm <= stop.tol_primal && row.s_norm <= stop.tol_dual) {
      result.status = SolveStatus::kConverged;
      return result;
    }
  }
  return result;
}

}  // namespace neadmm
