#include "neadmm/synthetic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace neadmm::synthetic {

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - Uniform();  // (0, 1], keeps the log finite
  const double u2 = Uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::Below(std::uint64_t n) {
  if (n == 0) throw SolverError(ErrorCode::kInvalidArgument, "empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % n;
}

DenseVector Rng::NormalVector(Eigen::Index n) {
  DenseVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Normal();
  return v;
}

DenseMatrix Rng::NormalMatrix(Eigen::Index rows, Eigen::Index cols) {
  // Row-major fill so the draw order matches reading the matrix line by line.
  DenseMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = Normal();
  }
  return a;
}

DenseVector RandomUnitVector(Eigen::Index n, Rng& rng) {
  DenseVector v = rng.NormalVector(n);
  while (v.norm() == 0.0) v = rng.NormalVector(n);
  return v / v.norm();
}

OneBitData GenerateOneBit(int n, int m, int k, std::uint64_t seed, double lambda) {
  if (n < 1 || m < 1 || k < 1 || k > n) {
    throw SolverError(ErrorCode::kInvalidArgument, "need 1 <= k <= n and m >= 1");
  }
  Rng rng(seed);
  OneBitData out;
  out.problem.phi = rng.NormalMatrix(m, n);

  // Partial Fisher-Yates for the support.
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  out.x_true = DenseVector::Zero(n);
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.Below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  do {
    for (int i = 0; i < k; ++i) out.x_true[idx[static_cast<std::size_t>(i)]] = rng.Normal();
  } while (out.x_true.norm() == 0.0);
  out.x_true /= out.x_true.norm();

  const DenseVector proj = out.problem.phi * out.x_true;
  out.problem.signs = proj.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
  out.problem.lambda = lambda;
  return out;
}

BagData GenerateBags(int bags, int instances, int features, std::uint64_t seed) {
  if (bags < 1 || instances < 1 || features < 1) {
    throw SolverError(ErrorCode::kInvalidArgument, "bag sizes must be positive");
  }
  Rng rng(seed);
  BagData out;
  out.beta_true = rng.NormalVector(features);
  std::vector<DenseMatrix> mats;
  DenseVector labels(bags);
  for (int i = 0; i < bags; ++i) {
    mats.push_back(rng.NormalMatrix(instances, features));
    labels[i] = (mats.back() * out.beta_true).maxCoeff() > 0.0 ? 1.0 : 0.0;
  }
  out.positive_fraction = labels.mean();
  out.data = maxop::BagDataset(mats, labels);
  return out;
}

}  // namespace neadmm::synthetic
