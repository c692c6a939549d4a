#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "neadmm/inner_solvers.hpp"
#include "neadmm/maxop.hpp"

namespace neadmm {
namespace {

DenseVector V(std::initializer_list<double> xs) {
  DenseVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Root of g on [lo, hi] by bisection, g(lo) and g(hi) of opposite sign.
double Bisect(const std::function<double(double)>& g, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) > 0) == (g(lo) > 0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TEST(Fista, UnconstrainedQuadratic) {
  const DenseVector a = V({1.5, -2.0, 0.25});
  const DenseVector x = Fista({SmoothTerm::Quadratic(a), ProxTerm::Zero()}, V({10, 10, 10}));
  EXPECT_LE((x - a).norm(), 1e-7);
}

TEST(Fista, SoftThresholdFixedPoint) {
  const DenseVector x = Fista({SmoothTerm::Quadratic(V({3})), ProxTerm::L1(1.0)}, V({0}));
  EXPECT_NEAR(x[0], 2.0, 1e-7);
}

TEST(Fista, LogisticPlusProximalPull) {
  const SmoothTerm obj = maxop::LogisticLoss(V({1})) + SmoothTerm::Quadratic(V({0}), 1.0);
  FistaConfig cfg;
  cfg.tol = 1e-12;
  cfg.max_iter = 5000;
  const DenseVector q = Fista({obj, ProxTerm::Zero()}, V({0}), cfg);
  const double expected =
      Bisect([](double v) { return 1.0 / (1.0 + std::exp(-v)) - 1.0 + v; }, -5.0, 5.0);
  EXPECT_NEAR(expected, 0.40106, 1e-5);
  EXPECT_NEAR(q[0], expected, 1e-8);
}

// Cyclic coordinate descent for 1/2||Ax - b||^2 + lambda ||x||_1.
DenseVector LassoCoordinateDescent(const DenseMatrix& a, const DenseVector& b, double lambda) {
  DenseVector x = DenseVector::Zero(a.cols());
  DenseVector r = b;
  for (int sweep = 0; sweep < 100000; ++sweep) {
    double change = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double nj = a.col(j).squaredNorm();
      const double rho_j = a.col(j).dot(r) + nj * x[j];
      const double xj = std::copysign(std::max(std::abs(rho_j) - lambda, 0.0), rho_j) / nj;
      r -= a.col(j) * (xj - x[j]);
      change = std::max(change, std::abs(xj - x[j]));
      x[j] = xj;
    }
    if (change < 1e-14) break;
  }
  return x;
}

TEST(Fista, LassoMatchesCoordinateDescent) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix a(8, 5);
    DenseVector b(8);
    for (int i = 0; i < 40; ++i) a.data()[i] = nd(gen);
    for (int i = 0; i < 8; ++i) b[i] = nd(gen);
    const double lambda = 0.5;
    const SmoothTerm ls{[a, b](const DenseVector& x) { return 0.5 * (a * x - b).squaredNorm(); },
                        [a, b](const DenseVector& x) -> DenseVector {
                          return a.transpose() * (a * x - b);
                        }};
    const CompositeObjective obj{ls, ProxTerm::L1(lambda)};
    FistaConfig cfg;
    cfg.max_iter = 20000;
    cfg.tol = 1e-13;
    const DenseVector x = Fista(obj, DenseVector::Zero(5), cfg);
    const DenseVector ref = LassoCoordinateDescent(a, b, lambda);
    EXPECT_LE(obj.Value(x) - obj.Value(ref), 1e-9);
  }
}

TEST(Fista, NeverIncreasesObjective) {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 100; ++trial) {
    DenseVector labels(4), x0(4), c(4);
    for (int i = 0; i < 4; ++i) {
      labels[i] = nd(gen) > 0 ? 1.0 : 0.0;
      x0[i] = 3 * nd(gen);
      c[i] = nd(gen);
    }
    const CompositeObjective obj{maxop::LogisticLoss(labels) + SmoothTerm::Quadratic(c, 0.1),
                                 ProxTerm::L1(0.3)};
    FistaConfig cfg;
    cfg.max_iter = 1 + trial;
    EXPECT_LE(obj.Value(Fista(obj, x0, cfg)), obj.Value(x0));
  }
}

TEST(Fista, NonFiniteIsReported) {
  const SmoothTerm bad{[](const DenseVector&) { return std::nan(""); },
                       [](const DenseVector& x) -> DenseVector { return x; }};
  try {
    Fista({bad, ProxTerm::Zero()}, V({1}));
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteIterate);
  }
}

TEST(Fista, ConfigValidation) {
  EXPECT_THROW((FistaConfig{0, 1e-8, 1.0, 0.5}.Validate()), SolverError);
  EXPECT_THROW((FistaConfig{10, 1e-8, 1.0, 1.0}.Validate()), SolverError);
  EXPECT_THROW((FistaConfig{10, 0.0, 1.0, 0.5}.Validate()), SolverError);
}

TEST(SoftThreshold, MatchesGoldenSection) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-4, 4);
  std::uniform_real_distribution<double> pos(0.05, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const double lambda = pos(gen), step = pos(gen);
    const DenseVector v = V({u(gen), u(gen)});
    const DenseVector p = ProxTerm::L1(lambda).prox(v, step);
    for (Eigen::Index i = 0; i < 2; ++i) {
      const double vi = v[i];
      auto f = [&](double t) { return lambda * std::abs(t) + (t - vi) * (t - vi) / (2 * step); };
      const double oracle = GoldenSectionMin(f, -5, 5, 1e-12);
      EXPECT_LE(f(p[i]), f(oracle) + 1e-14);
      EXPECT_NEAR(p[i], oracle, 1e-6);
    }
  }
}

TEST(CubicRealRoots, Examples) {
  const auto r1 = CubicRealRoots(2, 0, -1, -1);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_NEAR(r1[0], 1.0, 1e-14);

  const auto r2 = CubicRealRoots(1, 0, 0, 0);
  ASSERT_EQ(r2.size(), 1u);
  EXPECT_EQ(r2[0], 0.0);

  const auto r3 = CubicRealRoots(1, -6, 11, -6);
  ASSERT_EQ(r3.size(), 3u);
  EXPECT_NEAR(r3[0], 1.0, 1e-12);
  EXPECT_NEAR(r3[1], 2.0, 1e-12);
  EXPECT_NEAR(r3[2], 3.0, 1e-12);
}

TEST(CubicRealRoots, LowerDegreeFallback) {
  const auto quad = CubicRealRoots(0, 1, -3, 2);
  ASSERT_EQ(quad.size(), 2u);
  EXPECT_NEAR(quad[0], 1.0, 1e-14);
  EXPECT_NEAR(quad[1], 2.0, 1e-14);
  EXPECT_TRUE(CubicRealRoots(0, 1, 0, 1).empty());
  const auto lin = CubicRealRoots(0, 0, 2, -1);
  ASSERT_EQ(lin.size(), 1u);
  EXPECT_DOUBLE_EQ(lin[0], 0.5);
  EXPECT_TRUE(CubicRealRoots(0, 0, 0, 3).empty());
}

TEST(CubicRealRoots, DoubleRoot) {
  // (t - 1)^2 (t + 2) = t^3 - 3t + 2
  const auto r = CubicRealRoots(1, 0, -3, 2);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], -2.0, 1e-12);
  EXPECT_NEAR(r[1], 1.0, 1e-7);
}

TEST(CubicRealRoots, AllZeroIsDegenerate) {
  try {
    CubicRealRoots(0, 0, 0, 0);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateAllZero);
  }
}

TEST(CubicRealRoots, CompletenessOnRandomMonicCubics) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    const double b = u(gen), c = u(gen), d = u(gen);
    auto p = [&](double t) { return ((t + b) * t + c) * t + d; };
    const auto roots = CubicRealRoots(1, b, c, d);
    ASSERT_FALSE(roots.empty());
    ASSERT_TRUE(std::is_sorted(roots.begin(), roots.end()));
    for (double r : roots) {
      const double scale = std::max({1.0, std::abs(r * r * r), std::abs(b * r * r),
                                     std::abs(c * r), std::abs(d)});
      EXPECT_LE(std::abs(p(r)), 1e-9 * scale);
    }
    // All real roots lie within the Cauchy bound 1 + max |coef|.
    const double bound = 1 + std::max({std::abs(b), std::abs(c), std::abs(d)});
    const int steps = 200000;
    double prev_t = -bound, prev_v = p(prev_t);
    for (int i = 1; i <= steps; ++i) {
      const double t = -bound + 2 * bound * i / steps;
      const double v = p(t);
      if ((prev_v < 0) != (v < 0)) {
        const double root = Bisect(p, prev_t, t);
        double nearest = 1e300;
        for (double r : roots) nearest = std::min(nearest, std::abs(r - root));
        EXPECT_LE(nearest, 1e-6) << "b=" << b << " c=" << c << " d=" << d;
      }
      prev_t = t;
      prev_v = v;
    }
  }
}

TEST(GoldenSection, Examples) {
  EXPECT_NEAR(GoldenSectionMin([](double x) { return (x - 2) * (x - 2); }, 0, 5, 1e-8), 2.0, 1e-7);
  EXPECT_NEAR(GoldenSectionMin([](double x) { return x * x * x * x - x; }, 0, 2),
              std::cbrt(0.25), 1e-8);
  EXPECT_NEAR(GoldenSectionMin([](double x) { return std::abs(x); }, -1, 3), 0.0, 1e-9);
}

TEST(GoldenSection, InvalidBracket) {
  try {
    GoldenSectionMin([](double x) { return x; }, 1, 1);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidBracket);
  }
  EXPECT_THROW(GoldenSectionMin([](double x) { return x; }, 2, 1), SolverError);
}

}  // namespace
}  // namespace neadmm
