#pragma once

#include "neadmm/engine.hpp"
#include "neadmm/inner_solvers.hpp"

namespace neadmm::sphere {

/// min loss(x) s.t. ||x||_2^2 = 1, split as x = w with the sphere constraint on w.
struct SphereProblem {
  CompositeObjective loss;
  Eigen::Index dim = 0;
  FistaConfig fista;
};

struct SphereState {
  DenseVector x;
  DenseVector w;
  double y1 = 0.0;   // dual of ||w||^2 - 1 = 0 (a single equation)
  DenseVector y2;    // dual of w - x = 0
  double rho = 1.0;
  int k = 0;
};

bool AllFinite(const SphereState& s);

/// ||w - v||^2 + (||w||^2 - 1 + y1/rho)^2, the objective minimized by the
/// closed-form sphere step.
double SpherePenaltyObjective(const DenseVector& w, const DenseVector& v, double y1, double rho);

/// Global minimizer over w of ||w - v||^2 + (||w||^2 - 1 + y1/rho)^2.
///
/// Every stationary point has the form w = v / (2u^2 - 1 + 2 y1/rho) with
/// u = ||w|| a nonnegative root of 2u^3 + (2 y1/rho - 1) u = +m or -m, m = ||v||.
/// Candidates whose norm disagrees with u are dropped from both branches
/// and the one with the smallest objective wins. When v = 0 the
/// direction is free and the first basis vector is used.
///
/// Throws SolverError(kNoCandidate) if no root yields a consistent point.
DenseVector SpherePenaltyStep(const DenseVector& v, double y1, double rho);

/// argmin_x loss(x) + (rho/2)||w - x + y2/rho||^2, solved by FISTA from `warm`.
DenseVector UpdateX(const CompositeObjective& loss, const DenseVector& w, const DenseVector& y2,
                    double rho, const FistaConfig& fista = {},
                    const DenseVector& warm = DenseVector());

/// argmin_w ||w - x_new + y2/rho||^2 + (||w||^2 - 1 + y1/rho)^2.
DenseVector UpdateW(const DenseVector& x_new, double y1, const DenseVector& y2, double rho);

/// State with x = w = 0 and zero duals.
SphereState ZeroState(const SphereProblem& problem, double rho0);

/// Alternates the x and w updates with dual ascent on both constraints.
/// Primal residual sqrt(r1^2 + ||r2||^2) with r1 = ||w||^2 - 1, r2 = w - x; dual
/// residual sqrt(s1^2 + ||s2||^2) with s1 = rho(||w_new||^2 - ||w_old||^2),
/// s2 = rho(w_new - w_old). Trace objective is loss(x).
SolveResult<SphereState> Solve(const SphereProblem& problem, SphereState init,
                               const RhoSchedule& schedule, const StopCriteria& stop);

// ---------------------------------------------------------------------------
// 1-bit compressive sensing:
//   min ||x||_1 + (lambda/2) sum min((Y Phi x)_i, 0)^2  s.t. ||x||_2^2 = 1
// solved in three blocks with z = Y Phi w, w = x.

struct OneBitCsProblem {
  DenseMatrix phi;      // M x N measurement matrix
  DenseVector signs;    // diagonal of Y, entries +-1
  double lambda = 10.0;
  FistaConfig fista{2000, 1e-10, 1.0, 0.5};

  void Validate() const;
  Eigen::Index n() const { return phi.cols(); }
  Eigen::Index m() const { return phi.rows(); }
  /// Y Phi
  DenseMatrix SignedPhi() const { return signs.asDiagonal() * phi; }
};

struct OneBitCsState {
  DenseVector x;
  DenseVector w;
  DenseVector z;
  double y1 = 0.0;
  DenseVector y2;  // dual of Y Phi w - z = 0, size M
  DenseVector y3;  // dual of w - x = 0, size N
  double rho = 1.0;
  int k = 0;
};

bool AllFinite(const OneBitCsState& s);

/// ||w||_1 + (lambda/2) sum min(z, 0)^2
double OneBitObjective(const OneBitCsProblem& problem, const DenseVector& w, const DenseVector& z);

/// Per coordinate: argmin (lambda/2) min(z,0)^2 + (rho/2)(z - a)^2 with
/// a = Y Phi w + y2/rho, i.e. z = a for a >= 0 and rho a / (lambda + rho) otherwise.
DenseVector OneBitUpdateZ(const OneBitCsProblem& problem, const DenseMatrix& signed_phi,
                          const DenseVector& w, const DenseVector& y2, double rho);

/// argmin_w ||w||_1 + (rho/2)||Y Phi w - z + y2/rho||^2 + (rho/2)||w - x + y3/rho||^2.
DenseVector OneBitUpdateW(const OneBitCsProblem& problem, const DenseMatrix& signed_phi,
                          const DenseVector& z, const DenseVector& x, const DenseVector& y2,
                          const DenseVector& y3, double rho,
                          const DenseVector& warm = DenseVector());

/// x = w = normalized back-projection Phi^T Y 1, z = Y Phi w, zero duals.
OneBitCsState BackProjectionState(const OneBitCsProblem& problem, double rho0);

/// Cycles x (closed-form sphere step), z, w, then the three dual updates.
/// Primal residual: sqrt((||x||^2-1)^2 + ||Y Phi w - z||^2 + ||w - x||^2).
/// Dual residual: rho * sqrt(||dz||^2 + ||Y Phi dw||^2 + ||dw||^2) over the
/// blocks updated after x.
SolveResult<OneBitCsState> SolveOneBit(const OneBitCsProblem& problem, OneBitCsState init,
                                       const RhoSchedule& schedule, const StopCriteria& stop);

}  // namespace neadmm::sphere
