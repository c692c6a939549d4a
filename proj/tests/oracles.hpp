#pragma once

// Independent reference solvers shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "neadmm/engine.hpp"
#include "neadmm/inner_solvers.hpp"
#include "neadmm/maxop.hpp"
#include "neadmm/types.hpp"

namespace neadmm::oracle {

// Cyclic coordinate descent for 1/2||Ax - b||^2 + lambda ||x||_1.
inline DenseVector Lasso(const DenseMatrix& a, const DenseVector& b, double lambda,
                         double tol = 1e-14, int max_sweeps = 200000) {
  DenseVector x = DenseVector::Zero(a.cols());
  DenseVector r = b;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double nj = a.col(j).squaredNorm();
      if (nj == 0.0) continue;
      const double rho_j = a.col(j).dot(r) + nj * x[j];
      const double xj = std::copysign(std::max(std::abs(rho_j) - lambda, 0.0), rho_j) / nj;
      r -= a.col(j) * (xj - x[j]);
      change = std::max(change, std::abs(xj - x[j]));
      x[j] = xj;
    }
    if (change < tol) break;
  }
  return x;
}

// Minimum over w in R^n of ||w - v||^2 + (||w||^2 - kappa)^2, kappa = 1 - y1/rho.
// With alpha the component of w along v and s = ||w_perp||^2, the objective is
// (alpha - m)^2 + s + (alpha^2 + s - kappa)^2, convex in s >= 0 with minimizer
// max(0, kappa - alpha^2 - 1/2); s = 0 when n = 1. Alpha is scanned on a grid
// with the given step and the best cells are polished by golden section.
inline double SphereStepMinimum(const DenseVector& v, double y1, double rho, double step = 1e-3) {
  const double m = v.norm();
  const double kappa = 1.0 - y1 / rho;
  const bool has_perp = v.size() > 1;
  auto reduced = [&](double alpha) {
    const double s = has_perp ? std::max(0.0, kappa - alpha * alpha - 0.5) : 0.0;
    const double pen = alpha * alpha + s - kappa;
    return (alpha - m) * (alpha - m) + s + pen * pen;
  };
  const double range = m + std::sqrt(std::abs(kappa)) + 2.0;
  const int cells = static_cast<int>(std::ceil(2.0 * range / step));
  std::vector<std::pair<double, double>> grid;
  grid.reserve(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i) {
    const double a = -range + step * i;
    grid.emplace_back(reduced(a), a);
  }
  std::partial_sort(grid.begin(), grid.begin() + 6, grid.end());
  double best = grid.front().first;
  for (int i = 0; i < 6; ++i) {
    const double a = grid[static_cast<std::size_t>(i)].second;
    const double at = GoldenSectionMin(reduced, a - step, a + step, 1e-13);
    best = std::min(best, reduced(at));
  }
  return best;
}

// h(t) = (psi - max t)^2 + ||t - phi||^2
inline double BagH(double psi, const DenseVector& phi, const DenseVector& t) {
  const double d = psi - t.maxCoeff();
  return d * d + (t - phi).squaredNorm();
}

// Minimum of h by minimizing over the common top value M. For M <= max phi every
// entry above M is lowered to M; for M > max phi the largest entry is raised.
// The reduced function is convex in M, so golden section is exact.
inline double BagMinimumByLevel(double psi, const DenseVector& phi) {
  const double top = phi.maxCoeff();
  auto reduced = [&](double level) {
    double val = (psi - level) * (psi - level);
    if (level > top) return val + (level - top) * (level - top);
    for (Eigen::Index j = 0; j < phi.size(); ++j) {
      const double e = std::max(phi[j] - level, 0.0);
      val += e * e;
    }
    return val;
  };
  const double lo = std::min(phi.minCoeff(), psi) - 1.0;
  const double hi = std::max(top, psi) + 1.0;
  return reduced(GoldenSectionMin(reduced, lo, hi, 1e-13));
}

// Minimum of h over the candidates "top-c sorted entries set to a_c" for all c.
inline double BagMinimumByEnumeration(double psi, const DenseVector& phi) {
  const auto n = phi.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return phi[a] > phi[b]; });
  double best = std::numeric_limits<double>::infinity();
  double sum = psi;
  for (Eigen::Index c = 1; c <= n; ++c) {
    sum += phi[order[static_cast<std::size_t>(c - 1)]];
    const double a = sum / static_cast<double>(c + 1);
    DenseVector t = phi;
    for (Eigen::Index j = 0; j < c; ++j) t[order[static_cast<std::size_t>(j)]] = a;
    best = std::min(best, BagH(psi, phi, t));
  }
  return best;
}

// Exact cyclic coordinate descent on h from `t`, until no coordinate moves more
// than tol. May stop at a nonsmooth point, so it only bounds the optimum above.
inline DenseVector BagCoordinateDescent(double psi, const DenseVector& phi, DenseVector t,
                                        double tol = 1e-12) {
  for (int sweep = 0; sweep < 100000; ++sweep) {
    double change = 0.0;
    for (Eigen::Index j = 0; j < t.size(); ++j) {
      double others = -std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < t.size(); ++i) {
        if (i != j) others = std::max(others, t[i]);
      }
      // Either t_j <= others (h_j = (t_j - phi_j)^2) or t_j >= others
      // (h_j = (psi - t_j)^2 + (t_j - phi_j)^2).
      const double below = std::min(phi[j], others);
      const double above = std::max(0.5 * (psi + phi[j]), others);
      auto hj = [&](double v) {
        const double d = psi - std::max(v, others);
        return d * d + (v - phi[j]) * (v - phi[j]);
      };
      const double next = t.size() == 1 ? 0.5 * (psi + phi[j])
                                        : (hj(below) <= hj(above) ? below : above);
      change = std::max(change, std::abs(next - t[j]));
      t[j] = next;
    }
    if (change < tol) break;
  }
  return t;
}

// min 1/2 x'Px + q'x + 1/2 z'Rz + s'z  s.t. A x + B z = c
struct QuadraticPair {
  DenseMatrix P, R, A, B;
  DenseVector q, s, c;
};

inline QuadraticPair RandomQuadraticPair(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  auto mat = [&](int r, int c) {
    DenseMatrix m(r, c);
    for (int i = 0; i < r * c; ++i) m.data()[i] = nd(gen);
    return m;
  };
  QuadraticPair qp;
  const DenseMatrix mp = mat(n, n), mr = mat(n, n);
  qp.P = mp * mp.transpose() + DenseMatrix::Identity(n, n);
  qp.R = mr * mr.transpose() + DenseMatrix::Identity(n, n);
  qp.A = mat(n, n);
  qp.B = mat(n, n);
  qp.q = mat(n, 1);
  qp.s = mat(n, 1);
  qp.c = mat(n, 1);
  return qp;
}

// The pair as an engine problem with f1 = A x, f2 = B z - c. Each block solver
// takes one Newton step on its block of the augmented Lagrangian, which is exact
// for quadratic F and linear f.
inline Problem EngineProblem(const QuadraticPair& qp) {
  auto quadratic = [](const DenseMatrix& h, const DenseVector& g) {
    return SmoothTerm{[h, g](const DenseVector& x) { return 0.5 * x.dot(h * x) + g.dot(x); },
                      [h, g](const DenseVector& x) -> DenseVector { return h * x + g; }};
  };
  auto newton = [](DenseMatrix h, DenseVector g, ConstraintTerm own, ConstraintTerm other) {
    return [=](const DenseVector& cur, const DenseVector& oth, const DenseVector& y, double rho) {
      const DenseMatrix j = own.Jacobian(cur);
      const DenseVector c = own.Eval(cur) + other.Eval(oth);
      const DenseVector grad = h * cur + g + j.transpose() * (y + rho * c);
      const DenseMatrix hess = h + rho * j.transpose() * j;
      return DenseVector(cur - hess.ldlt().solve(grad));
    };
  };
  Problem p;
  p.F1 = {quadratic(qp.P, qp.q), ProxTerm::Zero()};
  p.F2 = {quadratic(qp.R, qp.s), ProxTerm::Zero()};
  p.f1 = ConstraintTerm::Linear(qp.A);
  p.f2 = ConstraintTerm::Linear(qp.B, -qp.c);
  p.solve_x1 = newton(qp.P, qp.q, p.f1, p.f2);
  p.solve_x2 = newton(qp.R, qp.s, p.f2, p.f1);
  return p;
}

struct AdmmIterate {
  DenseVector x, z, y;
};

// Scaled-form classic ADMM from zero, u = y / rho, each block solved from its
// normal equations. Returns iterates 1..iters with y = rho u.
inline std::vector<AdmmIterate> ScaledAdmm(const QuadraticPair& qp, double rho, int iters) {
  const auto n = qp.q.size();
  DenseVector x = DenseVector::Zero(n), z = DenseVector::Zero(n), u = DenseVector::Zero(n);
  const auto xsys = (qp.P + rho * qp.A.transpose() * qp.A).partialPivLu();
  const auto zsys = (qp.R + rho * qp.B.transpose() * qp.B).partialPivLu();
  std::vector<AdmmIterate> out;
  for (int k = 0; k < iters; ++k) {
    x = xsys.solve(rho * qp.A.transpose() * (qp.c - qp.B * z - u) - qp.q);
    z = zsys.solve(rho * qp.B.transpose() * (qp.c - qp.A * x - u) - qp.s);
    u = u + qp.A * x + qp.B * z - qp.c;
    out.push_back({x, z, rho * u});
  }
  return out;
}

}  // namespace neadmm::oracle
