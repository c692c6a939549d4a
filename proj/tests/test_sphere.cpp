#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "neadmm/sphere.hpp"
#include "neadmm/synthetic.hpp"
#include "oracles.hpp"

namespace neadmm::sphere {
namespace {

DenseVector V(std::initializer_list<double> xs) {
  DenseVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

CompositeObjective Loss(SmoothTerm s, ProxTerm p = ProxTerm::Zero()) {
  return {std::move(s), std::move(p)};
}

double Stationarity(const DenseVector& w, const DenseVector& v, double y1, double rho) {
  return (2.0 * (w - v) + 4.0 * (w.squaredNorm() - 1.0 + y1 / rho) * w).norm();
}

TEST(UpdateX, Examples) {
  const DenseVector zero2 = DenseVector::Zero(2);
  EXPECT_LE((UpdateX(Loss(SmoothTerm::Zero()), V({0.6, 0.8}), zero2, 1.0) - V({0.6, 0.8})).norm(),
            1e-8);
  EXPECT_LE((UpdateX(Loss(SmoothTerm::Zero(), ProxTerm::L1(1.0)), V({3, 0}), zero2, 1.0) -
             V({2, 0}))
                .norm(),
            1e-7);
  EXPECT_LE((UpdateX(Loss(SmoothTerm::Quadratic(V({1, 1}))), zero2, zero2, 1.0) - V({0.5, 0.5}))
                .norm(),
            1e-7);
}

TEST(UpdateW, FeasiblePoint) {
  const DenseVector w = UpdateW(V({1, 0}), 0.0, DenseVector::Zero(2), 1.0);
  EXPECT_LE((w - V({1, 0})).norm(), 1e-12);
  EXPECT_LE(SpherePenaltyObjective(w, V({1, 0}), 0.0, 1.0), 1e-20);
}

TEST(UpdateW, DegenerateDirection) {
  const DenseVector w = UpdateW(V({0, 0}), 0.0, DenseVector::Zero(2), 1.0);
  EXPECT_NEAR(w[0], std::sqrt(0.5), 1e-12);
  EXPECT_EQ(w[1], 0.0);
  EXPECT_NEAR(SpherePenaltyObjective(w, V({0, 0}), 0.0, 1.0), 0.75, 1e-12);
}

TEST(UpdateW, DimensionMismatch) {
  EXPECT_THROW(UpdateW(V({1, 0}), 0.0, V({0}), 1.0), SolverError);
  EXPECT_THROW(UpdateW(V({1, 0}), 0.0, V({0, 0}), 0.0), SolverError);
}

TEST(UpdateW, MatchesGridOracle) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(-2, 2);
  std::uniform_real_distribution<double> logrho(std::log(0.1), std::log(10.0));
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 3;
    DenseVector x(n), y2(n);
    for (int i = 0; i < n; ++i) {
      x[i] = u(gen);
      y2[i] = u(gen);
    }
    const double y1 = u(gen);
    const double rho = trial < 150 ? 1.0 : std::exp(logrho(gen));
    const DenseVector v = x - y2 / rho;
    const DenseVector w = UpdateW(x, y1, y2, rho);
    EXPECT_LE(SpherePenaltyObjective(w, v, y1, rho),
              oracle::SphereStepMinimum(v, y1, rho) + 1e-6);
    EXPECT_LE(Stationarity(w, v, y1, rho), 1e-6 * (1.0 + v.norm()));
  }
}

TEST(SphereSolve, MaximizeFirstCoordinate) {
  SphereProblem p{Loss(SmoothTerm::Linear(V({-1, 0}))), 2, {}};
  SphereState init = ZeroState(p, 1.0);
  init.x = V({0.3, 0.5});
  init.w = init.x;
  const auto res = Solve(p, init, RhoSchedule::Constant(1.0), StopCriteria{1e-9, 1e-9, 2000});
  EXPECT_TRUE(res.converged()) << ToString(res.status);
  EXPECT_NEAR(res.state.x[0], 1.0, 1e-4);
  EXPECT_NEAR(res.state.x[1], 0.0, 1e-4);
  EXPECT_NEAR(res.state.x.norm(), 1.0, 1e-4);
}

TEST(SphereSolve, FixedPointStopsAtOnce) {
  // min c^T x on the sphere: x = w = -c/||c||, y2 = c, y1 = ||c||/2.
  const DenseVector c = V({0.6, -1.2, 0.4});
  SphereProblem p{Loss(SmoothTerm::Linear(c)), 3, {1000, 1e-12, 1.0, 0.5}};
  SphereState init = ZeroState(p, 2.0);
  init.x = -c / c.norm();
  init.w = init.x;
  init.y2 = c;
  init.y1 = c.norm() / 2.0;
  const auto res = Solve(p, init, RhoSchedule::Constant(2.0), StopCriteria{1e-8, 1e-8, 10});
  ASSERT_EQ(res.trace.size(), 1u);
  EXPECT_LE(res.trace[0].r_norm, 1e-8);
  EXPECT_LE(res.trace[0].s_norm, 1e-8);
}

TEST(SphereSolve, ConstraintOnly) {
  SphereProblem p{Loss(SmoothTerm::Zero()), 3, {}};
  SphereState init = ZeroState(p, 1.0);
  init.x = V({2, -1, 0.5});
  init.w = init.x;
  const auto res = Solve(p, init, RhoSchedule::Constant(1.0), StopCriteria{});
  ASSERT_TRUE(res.converged());
  EXPECT_LE(std::abs(res.state.w.squaredNorm() - 1.0), 1e-6);
}

TEST(OneBitUpdateZ, Examples) {
  OneBitCsProblem p;
  p.phi = DenseMatrix::Identity(3, 3);
  p.signs = DenseVector::Ones(3);
  p.lambda = 2.0;
  const DenseVector z = OneBitUpdateZ(p, p.SignedPhi(), V({1, -1, 0}), DenseVector::Zero(3), 2.0);
  EXPECT_EQ(z[0], 1.0);
  EXPECT_DOUBLE_EQ(z[1], -0.5);
  EXPECT_EQ(z[2], 0.0);
}

TEST(OneBitUpdateZ, MatchesGoldenSection) {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> u(-5, 5);
  std::uniform_real_distribution<double> pos(0.1, 100);
  OneBitCsProblem p;
  p.phi = DenseMatrix::Identity(1, 1);
  p.signs = DenseVector::Ones(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = u(gen), rho = pos(gen);
    p.lambda = pos(gen);
    const double z = OneBitUpdateZ(p, p.SignedPhi(), V({a}), V({0}), rho)[0];
    auto f = [&](double t) {
      const double neg = std::min(t, 0.0);
      return 0.5 * p.lambda * neg * neg + 0.5 * rho * (t - a) * (t - a);
    };
    const double ref = GoldenSectionMin(f, -6, 6, 1e-12);
    EXPECT_LE(f(z), f(ref) + 1e-8);
    EXPECT_NEAR(z, ref, 1e-6);
  }
}

TEST(OneBitUpdateW, ScalarExample) {
  OneBitCsProblem p;
  p.phi = DenseMatrix::Identity(1, 1);
  p.signs = DenseVector::Ones(1);
  const DenseVector w = OneBitUpdateW(p, p.SignedPhi(), V({3}), V({3}), V({0}), V({0}), 1.0);
  EXPECT_NEAR(w[0], 2.5, 1e-8);
  const double oracle = GoldenSectionMin(
      [](double t) { return std::abs(t) + 0.5 * (t - 3) * (t - 3) * 2; }, -5, 5, 1e-12);
  EXPECT_NEAR(w[0], oracle, 1e-6);
}

TEST(OneBitUpdateW, ZeroLeastSquaresStaysZero) {
  OneBitCsProblem p;
  p.phi = DenseMatrix::Identity(2, 2);
  p.signs = V({1, -1});
  const DenseVector w = OneBitUpdateW(p, p.SignedPhi(), V({0.2, -0.1}), V({-0.2, 0.1}),
                                      DenseVector::Zero(2), DenseVector::Zero(2), 1.0, V({1, 1}));
  EXPECT_LE(w.norm(), 1e-8);
}

TEST(OneBitUpdateW, MatchesCoordinateDescent) {
  synthetic::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    OneBitCsProblem p;
    p.phi = rng.NormalMatrix(6, 4);
    p.signs = rng.NormalVector(6).unaryExpr([](double v) { return v < 0 ? -1.0 : 1.0; });
    const DenseMatrix a = p.SignedPhi();
    const DenseVector z = rng.NormalVector(6), x = rng.NormalVector(4);
    const DenseVector y2 = rng.NormalVector(6), y3 = rng.NormalVector(4);
    const double rho = 0.5 + rng.Uniform() * 5;
    const DenseVector w = OneBitUpdateW(p, a, z, x, y2, y3, rho);

    // ||w||_1 + (rho/2)||[A; I] w - [z - y2/rho; x - y3/rho]||^2
    DenseMatrix stacked(10, 4);
    stacked << a, DenseMatrix::Identity(4, 4);
    DenseVector target(10);
    target << z - y2 / rho, x - y3 / rho;
    const DenseVector ref = oracle::Lasso(stacked, target, 1.0 / rho);
    auto obj = [&](const DenseVector& u) {
      return u.lpNorm<1>() + 0.5 * rho * (stacked * u - target).squaredNorm();
    };
    EXPECT_LE(obj(w), obj(ref) + 1e-6);
  }
}

TEST(OneBitSolve, SmallSeededRun) {
  const auto data = synthetic::GenerateOneBit(8, 16, 2, 3);
  const auto init = BackProjectionState(data.problem, 1000.0);
  const auto res =
      SolveOneBit(data.problem, init, RhoSchedule::Constant(1000.0), StopCriteria{1e-6, 1e-6, 300});
  ASSERT_FALSE(res.failed()) << res.message;
  EXPECT_LE(std::abs(res.state.x.squaredNorm() - 1.0), 1e-3);
  EXPECT_LT(res.trace.back().objective, OneBitObjective(data.problem, init.w, init.z));
}

TEST(OneBitSolve, FixedPointStopsAtOnce) {
  // x = w = s/sqrt(N), Y chosen so Y Phi w > 0, z = Y Phi w, y2 = 0, y3 = -s,
  // y1 = -sqrt(N)/2.
  const int n = 4, m = 6;
  synthetic::Rng rng(17);
  OneBitCsProblem p;
  p.phi = rng.NormalMatrix(m, n);
  p.fista = {5000, 1e-13, 1.0, 0.5};
  const DenseVector s = V({1, -1, -1, 1});
  const DenseVector w = s / std::sqrt(double(n));
  p.signs = (p.phi * w).unaryExpr([](double v) { return v < 0 ? -1.0 : 1.0; });
  OneBitCsState init;
  init.x = w;
  init.w = w;
  init.z = p.SignedPhi() * w;
  init.y1 = -std::sqrt(double(n)) / 2;
  init.y2 = DenseVector::Zero(m);
  init.y3 = -s;
  const auto res = SolveOneBit(p, init, RhoSchedule::Constant(10.0), StopCriteria{1e-8, 1e-8, 5});
  ASSERT_EQ(res.trace.size(), 1u);
  EXPECT_LE(res.trace[0].r_norm, 1e-8);
  EXPECT_LE(res.trace[0].s_norm, 1e-8);
}

TEST(OneBitSolve, DenseSignalStaysFinite) {
  const auto data = synthetic::GenerateOneBit(6, 10, 6, 9);
  const auto res = SolveOneBit(data.problem, BackProjectionState(data.problem, 1000.0),
                               RhoSchedule::Constant(1000.0), StopCriteria{1e-12, 1e-12, 100});
  EXPECT_EQ(res.status, SolveStatus::kMaxIterations);
  EXPECT_EQ(res.trace.size(), 100u);
}

TEST(OneBitProblem, Validation) {
  OneBitCsProblem p;
  p.phi = DenseMatrix::Identity(2, 2);
  p.signs = V({1, 0});
  EXPECT_THROW(p.Validate(), SolverError);
  p.signs = V({1, -1});
  EXPECT_NO_THROW(p.Validate());
  p.lambda = 0.0;
  EXPECT_THROW(p.Validate(), SolverError);
}

}  // namespace
}  // namespace neadmm::sphere
