#include "neadmm/examples.hpp"

#include <cmath>
#include <limits>

#include "neadmm/inner_solvers.hpp"

namespace neadmm::examples {
namespace {

DenseVector Scalar(double v) { return DenseVector::Constant(1, v); }

double RequirePositiveRho(double rho) {
  if (!(rho > 0.0)) throw SolverError(ErrorCode::kInvalidArgument, "rho must be positive");
  return rho;
}

// g(v) + offset with g = sqrt or square. The sqrt derivative at 0 is designated 0.
ConstraintTerm ScalarMap(Which which, double offset) {
  ConstraintTerm t;
  t.dim_in = 1;
  t.dim_out = 1;
  if (which == Which::kExample1) {
    t.eval = [offset](const DenseVector& v) {
      return Scalar(std::sqrt(std::max(v[0], 0.0)) + offset);
    };
    t.jacobian = [](const DenseVector& v) {
      return DenseMatrix::Constant(1, 1, v[0] > 0.0 ? 0.5 / std::sqrt(v[0]) : 0.0);
    };
  } else {
    t.eval = [offset](const DenseVector& v) { return Scalar(v[0] * v[0] + offset); };
    t.jacobian = [](const DenseVector& v) { return DenseMatrix::Constant(1, 1, 2.0 * v[0]); };
  }
  return t;
}

}  // namespace

const char* ToString(Which which) {
  return which == Which::kExample1 ? "example1" : "example2";
}

ScalarOptimum KnownOptimum(Which which) {
  if (which == Which::kExample1) return {0.25, 0.25, 0.5, -1.0};
  const double h = std::sqrt(0.5);
  // Stationarity 1 + 2 y x = 0 at x = -sqrt(2)/2 gives y = +sqrt(2)/2.
  return {-h, -h, -std::sqrt(2.0), h};
}

double Example1BlockUpdate(double c, double rho) {
  RequirePositiveRho(rho);
  const double root = std::max(0.0, -rho * c / (2.0 + rho));
  return root * root;
}

double Example2BlockUpdate(double c, double rho) {
  RequirePositiveRho(rho);
  const std::vector<double> roots = CubicRealRoots(2.0 * rho, 0.0, 2.0 * rho * c, 1.0);
  if (roots.empty()) throw SolverError(ErrorCode::kNoCandidate, "stationarity cubic has no root");
  auto objective = [&](double x) {
    const double q = x * x + c;
    return x + 0.5 * rho * q * q;
  };
  double best = roots.front();
  double best_value = objective(best);
  for (std::size_t i = 1; i < roots.size(); ++i) {
    const double v = objective(roots[i]);
    if (v < best_value) {
      best = roots[i];
      best_value = v;
    }
  }
  return best;
}

Problem MakeProblem(Which which) {
  Problem p;
  p.F1 = {SmoothTerm::Linear(Scalar(1.0)), ProxTerm::Zero()};
  p.F2 = {SmoothTerm::Linear(Scalar(1.0)), ProxTerm::Zero()};
  p.f1 = ScalarMap(which, 0.0);
  p.f2 = ScalarMap(which, -1.0);
  const auto update = which == Which::kExample1 ? Example1BlockUpdate : Example2BlockUpdate;
  // Both blocks see c = (other block's constraint part) + y / rho.
  const ConstraintTerm f1 = p.f1;
  const ConstraintTerm f2 = p.f2;
  p.solve_x1 = [f2, update](const DenseVector&, const DenseVector& x2, const DenseVector& y,
                            double rho) { return Scalar(update(f2.Eval(x2)[0] + y[0] / rho, rho)); };
  p.solve_x2 = [f1, update](const DenseVector&, const DenseVector& x1, const DenseVector& y,
                            double rho) {
    return Scalar(update(f1.Eval(x1)[0] - 1.0 + y[0] / rho, rho));
  };
  return p;
}

IterateState DefaultStart(Which which, double rho0) {
  const Problem p = MakeProblem(which);
  IterateState s = ZeroState(p, rho0);
  s.x1 = Scalar(1.0);
  s.x2 = Scalar(1.0);
  s.primal_residual = p.f1.Eval(s.x1) + p.f2.Eval(s.x2);
  return s;
}

diagnostics::OptimumReference Reference(Which which) {
  const ScalarOptimum o = KnownOptimum(which);
  diagnostics::OptimumReference ref;
  ref.x1_star = Scalar(o.x);
  ref.x2_star = Scalar(o.z);
  ref.y_star = Scalar(o.y);
  ref.p_star = o.p;
  return ref;
}

SolveResult<IterateState> RunExample(Which which, const RhoSchedule& schedule, int max_iter,
                                     std::vector<IterateState>* history) {
  StopCriteria stop;
  stop.max_iter = max_iter;
  return Solve(MakeProblem(which), DefaultStart(which, schedule.rho0()), schedule, stop, history);
}

}  // namespace neadmm::examples
