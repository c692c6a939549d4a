#include "neadmm/sphere.hpp"

#include <cmath>
#include <limits>

namespace neadmm::sphere {

bool AllFinite(const SphereState& s) {
  return s.x.allFinite() && s.w.allFinite() && std::isfinite(s.y1) && s.y2.allFinite();
}

bool AllFinite(const OneBitCsState& s) {
  return s.x.allFinite() && s.w.allFinite() && s.z.allFinite() && std::isfinite(s.y1) &&
         s.y2.allFinite() && s.y3.allFinite();
}

double SpherePenaltyObjective(const DenseVector& w, const DenseVector& v, double y1, double rho) {
  const double pen = w.squaredNorm() - 1.0 + y1 / rho;
  return (w - v).squaredNorm() + pen * pen;
}

DenseVector SpherePenaltyStep(const DenseVector& v, double y1, double rho) {
  if (!(rho > 0.0)) throw SolverError(ErrorCode::kInvalidArgument, "rho must be positive");
  if (v.size() == 0) throw SolverError(ErrorCode::kDimensionMismatch, "empty vector");
  const double m = v.norm();
  const double lin = 2.0 * y1 / rho - 1.0;

  DenseVector best;
  double best_obj = std::numeric_limits<double>::infinity();
  auto consider = [&](DenseVector w) {
    const double obj = SpherePenaltyObjective(w, v, y1, rho);
    if (obj < best_obj) {
      best_obj = obj;
      best = std::move(w);
    }
  };

  for (double branch : {1.0, -1.0}) {
    // 2u^3 + (2 y1/rho - 1) u = branch * m
    for (double u : CubicRealRoots(2.0, 0.0, lin, -branch * m)) {
      if (u < -1e-12) continue;
      u = std::max(u, 0.0);
      if (m == 0.0) {
        DenseVector w = DenseVector::Zero(v.size());
        w(0) = u;
        consider(std::move(w));
        continue;
      }
      const double denom = 2.0 * u * u + lin;
      if (std::abs(denom) < 1e-12) continue;
      DenseVector w = v / denom;
      if (std::abs(w.norm() - u) > 1e-8 * std::max(1.0, u)) continue;
      consider(std::move(w));
    }
    if (m == 0.0) break;
  }
  if (best.size() == 0) {
    throw SolverError(ErrorCode::kNoCandidate, "sphere step: no consistent root");
  }
  return best;
}

DenseVector UpdateX(const CompositeObjective& loss, const DenseVector& w, const DenseVector& y2,
                    double rho, const FistaConfig& fista, const DenseVector& warm) {
  if (!(rho > 0.0)) throw SolverError(ErrorCode::kInvalidArgument, "rho must be positive");
  RequireSameSize(w.size(), y2.size(), "y2");
  CompositeObjective sub;
  sub.smooth = loss.smooth + SmoothTerm::Quadratic(w + y2 / rho, rho);
  sub.nonsmooth = loss.nonsmooth;
  return Fista(sub, warm.size() == w.size() ? warm : w, fista);
}

DenseVector UpdateW(const DenseVector& x_new, double y1, const DenseVector& y2, double rho) {
  RequireSameSize(x_new.size(), y2.size(), "y2");
  return SpherePenaltyStep(x_new - y2 / rho, y1, rho);
}

SphereState ZeroState(const SphereProblem& problem, double rho0) {
  SphereState s;
  s.x = DenseVector::Zero(problem.dim);
  s.w = DenseVector::Zero(problem.dim);
  s.y2 = DenseVector::Zero(problem.dim);
  s.rho = rho0;
  return s;
}

SolveResult<SphereState> Solve(const SphereProblem& problem, SphereState init,
                               const RhoSchedule& schedule, const StopCriteria& stop) {
  RequireSameSize(problem.dim, init.x.size(), "x");
  RequireSameSize(problem.dim, init.w.size(), "w");
  RequireSameSize(problem.dim, init.y2.size(), "y2");
  auto step = [&problem](SphereState& s, double rho, int k) {
    s.x = UpdateX(problem.loss, s.w, s.y2, rho, problem.fista, s.x);
    const DenseVector w_old = s.w;
    s.w = UpdateW(s.x, s.y1, s.y2, rho);

    const double r1 = s.w.squaredNorm() - 1.0;
    const DenseVector r2 = s.w - s.x;
    const double s1 = rho * (s.w.squaredNorm() - w_old.squaredNorm());
    const DenseVector s2 = rho * (s.w - w_old);
    s.y1 += rho * r1;
    s.y2 += rho * r2;
    s.rho = rho;
    s.k = k + 1;

    TraceRow row;
    row.objective = problem.loss.Value(s.x);
    row.r_norm = std::sqrt(r1 * r1 + r2.squaredNorm());
    row.s_norm = std::sqrt(s1 * s1 + s2.squaredNorm());
    return row;
  };
  return RunIterations(std::move(init), schedule, stop, step);
}

void OneBitCsProblem::Validate() const {
  RequireSameSize(phi.rows(), signs.size(), "sign vector");
  if (phi.rows() < 1 || phi.cols() < 1) {
    throw SolverError(ErrorCode::kInvalidArgument, "measurement matrix must be non-empty");
  }
  for (Eigen::Index i = 0; i < signs.size(); ++i) {
    if (signs(i) != 1.0 && signs(i) != -1.0) {
      throw SolverError(ErrorCode::kInvalidArgument, "sign measurements must be +1 or -1");
    }
  }
  if (!(lambda > 0.0)) throw SolverError(ErrorCode::kInvalidArgument, "lambda must be positive");
}

double OneBitObjective(const OneBitCsProblem& problem, const DenseVector& w,
                       const DenseVector& z) {
  return w.lpNorm<1>() + 0.5 * problem.lambda * z.cwiseMin(0.0).squaredNorm();
}

DenseVector OneBitUpdateZ(const OneBitCsProblem& problem, const DenseMatrix& signed_phi,
                          const DenseVector& w, const DenseVector& y2, double rho) {
  if (!(rho > 0.0)) throw SolverError(ErrorCode::kInvalidArgument, "rho must be positive");
  const DenseVector a = signed_phi * w + y2 / rho;
  const double shrink = rho / (problem.lambda + rho);
  return a.unaryExpr([shrink](double ai) { return ai >= 0.0 ? ai : shrink * ai; });
}

DenseVector OneBitUpdateW(const OneBitCsProblem& problem, const DenseMatrix& signed_phi,
                          const DenseVector& z, const DenseVector& x, const DenseVector& y2,
                          const DenseVector& y3, double rho, const DenseVector& warm) {
  if (!(rho > 0.0)) throw SolverError(ErrorCode::kInvalidArgument, "rho must be positive");
  RequireSameSize(signed_phi.rows(), z.size(), "z");
  RequireSameSize(signed_phi.cols(), x.size(), "x");
  const DenseVector meas_target = z - y2 / rho;
  const DenseVector copy_target = x - y3 / rho;
  CompositeObjective sub;
  sub.smooth.value = [&, rho](const DenseVector& w) {
    return 0.5 * rho * ((signed_phi * w - meas_target).squaredNorm() +
                        (w - copy_target).squaredNorm());
  };
  sub.smooth.gradient = [&, rho](const DenseVector& w) {
    return DenseVector(rho * (signed_phi.transpose() * (signed_phi * w - meas_target) +
                              (w - copy_target)));
  };
  sub.nonsmooth = ProxTerm::L1(1.0);
  return Fista(sub, warm.size() == x.size() ? warm : x, problem.fista);
}

OneBitCsState BackProjectionState(const OneBitCsProblem& problem, double rho0) {
  problem.Validate();
  const DenseMatrix a = problem.SignedPhi();
  OneBitCsState s;
  DenseVector bp = a.transpose() * DenseVector::Ones(problem.m());
  const double norm = bp.norm();
  if (norm > 0.0) {
    bp /= norm;
  } else {
    bp = DenseVector::Zero(problem.n());
    bp(0) = 1.0;
  }
  s.x = bp;
  s.w = bp;
  s.z = a * bp;
  s.y2 = DenseVector::Zero(problem.m());
  s.y3 = DenseVector::Zero(problem.n());
  s.rho = rho0;
  return s;
}

SolveResult<OneBitCsState> SolveOneBit(const OneBitCsProblem& problem, OneBitCsState init,
                                       const RhoSchedule& schedule, const StopCriteria& stop) {
  problem.Validate();
  RequireSameSize(problem.n(), init.x.size(), "x");
  RequireSameSize(problem.n(), init.w.size(), "w");
  RequireSameSize(problem.m(), init.z.size(), "z");
  RequireSameSize(problem.m(), init.y2.size(), "y2");
  RequireSameSize(problem.n(), init.y3.size(), "y3");
  const DenseMatrix a = problem.SignedPhi();

  auto step = [&problem, &a](OneBitCsState& s, double rho, int k) {
    s.x = SpherePenaltyStep(s.w + s.y3 / rho, s.y1, rho);
    const DenseVector z_old = s.z;
    const DenseVector w_old = s.w;
    s.z = OneBitUpdateZ(problem, a, s.w, s.y2, rho);
    s.w = OneBitUpdateW(problem, a, s.z, s.x, s.y2, s.y3, rho, s.w);

    const double r1 = s.x.squaredNorm() - 1.0;
    const DenseVector r2 = a * s.w - s.z;
    const DenseVector r3 = s.w - s.x;
    s.y1 += rho * r1;
    s.y2 += rho * r2;
    s.y3 += rho * r3;
    s.rho = rho;
    s.k = k + 1;

    const DenseVector dw = s.w - w_old;
    TraceRow row;
    row.objective = OneBitObjective(problem, s.w, s.z);
    row.r_norm = std::sqrt(r1 * r1 + r2.squaredNorm() + r3.squaredNorm());
    row.s_norm =
        rho * std::sqrt((s.z - z_old).squaredNorm() + (a * dw).squaredNorm() + dw.squaredNorm());
    return row;
  };
  return RunIterations(std::move(init), schedule, stop, step);
}

}  // namespace neadmm::sphere
