#include "neadmm/inner_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace neadmm {

void FistaConfig::Validate() const {
  if (max_iter < 1 || !(tol > 0.0) || !(initial_step > 0.0) || !(backtracking_factor > 0.0) ||
      !(backtracking_factor < 1.0)) {
    throw SolverError(ErrorCode::kInvalidArgument, "invalid FISTA configuration");
  }
}

DenseVector Fista(const CompositeObjective& objective, const DenseVector& x0,
                  const FistaConfig& config, FistaReport* report) {
  config.Validate();
  constexpr int kMaxBacktracks = 200;
  const auto& smooth = objective.smooth;
  const auto& prox = objective.nonsmooth.prox;

  DenseVector x = x0;
  double fx = objective.Value(x);
  if (!std::isfinite(fx)) {
    throw SolverError(ErrorCode::kNonFiniteIterate, "FISTA: objective not finite at x0");
  }
  DenseVector y = x;
  double t = 1.0;
  double lipschitz = 1.0 / config.initial_step;
  bool momentum_reset = true;  // y == x
  FistaReport local;

  for (int it = 0; it < config.max_iter; ++it) {
    local.iterations = it + 1;
    const double fy = smooth.value(y);
    const DenseVector gy = smooth.gradient(y);
    if (!std::isfinite(fy) || !gy.allFinite()) {
      throw SolverError(ErrorCode::kNonFiniteIterate, "FISTA: non-finite gradient");
    }

    DenseVector xn;
    for (int bt = 0;; ++bt) {
      const double step = 1.0 / lipschitz;
      xn = prox(y - step * gy, step);
      const DenseVector diff = xn - y;
      const double model = fy + gy.dot(diff) + 0.5 * lipschitz * diff.squaredNorm();
      const double fxn = smooth.value(xn);
      if (fxn <= model + 1e-12 * std::max(1.0, std::abs(fy))) break;
      if (bt == kMaxBacktracks || !std::isfinite(lipschitz)) {
        throw SolverError(ErrorCode::kNonFiniteIterate, "FISTA: line search failed");
      }
      lipschitz /= config.backtracking_factor;
    }
    if (!xn.allFinite()) {
      throw SolverError(ErrorCode::kNonFiniteIterate, "FISTA: non-finite iterate");
    }

    const double fn = objective.Value(xn);
    if (fn > fx) {
      if (momentum_reset) {
        // a plain proximal step failed to descend: x is stationary up to roundoff
        local.converged = true;
        break;
      }
      ++local.restarts;
      y = x;
      t = 1.0;
      momentum_reset = true;
      continue;
    }

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double moved = (xn - x).norm();
    y = xn + ((t - 1.0) / t_next) * (xn - x);
    x = std::move(xn);
    fx = fn;
    t = t_next;
    momentum_reset = false;
    if (moved <= config.tol) {
      local.converged = true;
      break;
    }
  }
  local.final_step = 1.0 / lipschitz;
  if (report != nullptr) *report = local;
  return x;
}

namespace {

double Horner(double a, double b, double c, double d, double t) {
  return ((a * t + b) * t + c) * t + d;
}

double Polish(double a, double b, double c, double d, double t) {
  for (int i = 0; i < 4; ++i) {
    const double f = Horner(a, b, c, d, t);
    const double df = (3.0 * a * t + 2.0 * b) * t + c;
    if (f == 0.0 || df == 0.0) break;
    const double next = t - f / df;
    if (!std::isfinite(next) || std::abs(Horner(a, b, c, d, next)) >= std::abs(f)) break;
    t = next;
  }
  return t;
}

std::vector<double> QuadraticRoots(double b, double c, double d) {
  if (b == 0.0) {
    if (c == 0.0) return {};
    return {-d / c};
  }
  const double disc = c * c - 4.0 * b * d;
  if (disc < 0.0) return {};
  if (disc == 0.0) return {-c / (2.0 * b)};
  const double q = -0.5 * (c + std::copysign(std::sqrt(disc), c));
  std::vector<double> roots{q / b};
  if (q != 0.0) roots.push_back(d / q);
  return roots;
}

std::vector<double> DepressedRoots(double p, double q) {
  if (p == 0.0 && q == 0.0) return {0.0};
  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  const double scale =
      std::max(half_q * half_q, std::abs(third_p * third_p * third_p));
  const double eps = 64.0 * std::numeric_limits<double>::epsilon() * scale;

  if (std::abs(disc) <= eps && p != 0.0) {
    // double root
    return {3.0 * q / p, -1.5 * q / p};
  }
  if (disc > 0.0) {
    const double u = -std::copysign(std::cbrt(std::abs(half_q) + std::sqrt(disc)), q);
    const double v = (u != 0.0) ? -third_p / u : 0.0;
    return {u + v};
  }
  // three distinct real roots, p < 0
  const double m = 2.0 * std::sqrt(-third_p);
  const double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  constexpr double kTwoPiThirds = 2.0 * std::numbers::pi / 3.0;
  return {m * std::cos(theta), m * std::cos(theta - kTwoPiThirds),
          m * std::cos(theta - 2.0 * kTwoPiThirds)};
}

}  // namespace

std::vector<double> CubicRealRoots(double a, double b, double c, double d) {
  if (a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0) {
    throw SolverError(ErrorCode::kDegenerateAllZero, "cubic with all coefficients zero");
  }
  std::vector<double> roots;
  if (a == 0.0) {
    roots = QuadraticRoots(b, c, d);
  } else {
    const double bn = b / a, cn = c / a, dn = d / a;
    const double shift = bn / 3.0;
    const double p = cn - bn * bn / 3.0;
    const double q = 2.0 * bn * bn * bn / 27.0 - bn * cn / 3.0 + dn;
    for (double s : DepressedRoots(p, q)) roots.push_back(s - shift);
  }
  for (double& r : roots) r = Polish(a, b, c, d, r);
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || std::abs(r - unique.back()) > 1e-12 * std::max(1.0, std::abs(r))) {
      unique.push_back(r);
    }
  }
  return unique;
}

double GoldenSectionMin(const std::function<double(double)>& f, double lo, double hi,
                        double tol) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi) || !(tol > 0.0)) {
    throw SolverError(ErrorCode::kInvalidBracket, "golden section needs lo < hi and tol > 0");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (b - a <= std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b))) break;
  }
  // the bracket endpoints are candidates too when the minimum sits on a boundary
  double best = 0.5 * (a + b);
  double fbest = f(best);
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx < fbest) {
      best = x;
      fbest = fx;
    }
  }
  return best;
}

}  // namespace neadmm
