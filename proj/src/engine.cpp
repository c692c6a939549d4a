#include "neadmm/engine.hpp"

namespace neadmm {

RhoSchedule RhoSchedule::Constant(double rho0) { return Increment(rho0, 0.0); }

RhoSchedule RhoSchedule::Increment(double rho0, double delta) {
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) {
    throw SolverError(ErrorCode::kInvalidArgument, "rho0 must be positive and finite");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw SolverError(ErrorCode::kInvalidArgument, "rho increment must be nonnegative");
  }
  return RhoSchedule(rho0, delta);
}

void StopCriteria::Validate() const {
  if (!(tol_primal > 0.0) || !(tol_dual > 0.0)) {
    throw SolverError(ErrorCode::kInvalidArgument, "stopping tolerances must be positive");
  }
  if (max_iter < 1) {
    throw SolverError(ErrorCode::kInvalidArgument, "max_iter must be at least 1");
  }
}

bool AllFinite(const IterateState& s) {
  return s.x1.allFinite() && s.x2.allFinite() && s.y.allFinite() &&
         s.primal_residual.allFinite() && s.dual_residual.allFinite() && std::isfinite(s.rho);
}

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kMaxIterations: return "max_iterations";
    case SolveStatus::kSubproblemFailure: return "subproblem_failure";
    case SolveStatus::kNonFiniteIterate: return "non_finite_iterate";
  }
  return "unknown";
}

double AugmentedLagrangian(const CompositeObjective& F1, const CompositeObjective& F2,
                           const ConstraintTerm& f1, const ConstraintTerm& f2,
                           const DenseVector& x1, const DenseVector& x2, const DenseVector& y,
                           double rho) {
  if (!(rho > 0.0)) throw SolverError(ErrorCode::kInvalidArgument, "rho must be positive");
  const DenseVector c = f1.Eval(x1) + f2.Eval(x2);
  RequireSameSize(c.size(), y.size(), "dual variable");
  return F1.Value(x1) + F2.Value(x2) + y.dot(c) + 0.5 * rho * c.squaredNorm();
}

DenseVector DualUpdate(const DenseVector& y, double rho, const DenseVector& f1x1,
                       const DenseVector& f2x2) {
  RequireSameSize(y.size(), f1x1.size(), "f1(x1)");
  RequireSameSize(y.size(), f2x2.size(), "f2(x2)");
  return y + rho * (f1x1 + f2x2);
}

Residuals ComputeResiduals(const ConstraintTerm& f1, const ConstraintTerm& f2,
                           const DenseVector& x1_new, const DenseVector& x2_new,
                           const DenseVector& x2_old, double rho) {
  RequireSameSize(f1.dim_out, f2.dim_out, "constraint ranges");
  const DenseVector f2_new = f2.Eval(x2_new);
  Residuals out;
  out.primal = f1.Eval(x1_new) + f2_new;
  out.dual = rho * f1.Jacobian(x1_new).transpose() * (f2_new - f2.Eval(x2_old));
  return out;
}

IterateState ZeroState(const Problem& problem, double rho0) {
  IterateState s;
  s.x1 = DenseVector::Zero(problem.f1.dim_in);
  s.x2 = DenseVector::Zero(problem.f2.dim_in);
  s.y = DenseVector::Zero(problem.f1.dim_out);
  s.rho = rho0;
  s.primal_residual = DenseVector::Zero(problem.f1.dim_out);
  s.dual_residual = DenseVector::Zero(problem.f1.dim_in);
  return s;
}

namespace {

DenseVector CheckedBlock(const DenseVector& v, Eigen::Index expected, const char* block) {
  if (v.size() != expected) {
    throw SolverError(ErrorCode::kSubproblemFailure,
                      std::string(block) + " solver returned a vector of the wrong size");
  }
  if (!v.allFinite()) {
    throw SolverError(ErrorCode::kSubproblemFailure,
                      std::string(block) + " solver returned a non-finite point");
  }
  return v;
}

}  // namespace

SolveResult<IterateState> Solve(const Problem& problem, IterateState init,
                                const RhoSchedule& schedule, const StopCriteria& stop,
                                std::vector<IterateState>* history) {
  RequireSameSize(problem.f1.dim_out, problem.f2.dim_out, "constraint ranges");
  RequireSameSize(problem.f1.dim_in, init.x1.size(), "x1");
  RequireSameSize(problem.f2.dim_in, init.x2.size(), "x2");
  RequireSameSize(problem.f1.dim_out, init.y.size(), "y");
  if (init.primal_residual.size() != problem.f1.dim_out) {
    init.primal_residual = problem.f1.Eval(init.x1) + problem.f2.Eval(init.x2);
  }
  if (init.dual_residual.size() != problem.f1.dim_in) {
    init.dual_residual = DenseVector::Zero(problem.f1.dim_in);
  }

  auto step = [&problem](IterateState& s, double rho, int k) {
    const DenseVector x2_old = s.x2;
    s.x1 = CheckedBlock(problem.solve_x1(s.x1, s.x2, s.y, rho), problem.f1.dim_in, "x1");
    s.x2 = CheckedBlock(problem.solve_x2(s.x2, s.x1, s.y, rho), problem.f2.dim_in, "x2");
    Residuals res = ComputeResiduals(problem.f1, problem.f2, s.x1, s.x2, x2_old, rho);
    // y^{k+1} = y^k + rho (f1(x1^{k+1}) + f2(x2^{k+1}))
    s.y = s.y + rho * res.primal;
    s.primal_residual = std::move(res.primal);
    s.dual_residual = std::move(res.dual);
    s.rho = rho;
    s.k = k + 1;
    TraceRow row;
    row.objective = problem.Objective(s.x1, s.x2);
    row.r_norm = s.primal_residual.norm();
    row.s_norm = s.dual_residual.norm();
    return row;
  };

  std::function<void(const IterateState&)> observer;
  if (history != nullptr) {
    history->clear();
    observer = [history](const IterateState& s) { history->push_back(s); };
  }
  return RunIterations(std::move(init), schedule, stop, step, observer);
}

}  // namespace neadmm
