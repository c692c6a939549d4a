#pragma once

#include <cstdint>
#include <random>

#include "neadmm/maxop.hpp"
#include "neadmm/sphere.hpp"

namespace neadmm::synthetic {

/// Seeded generator with platform-independent output. The raw engine sequence is
/// fixed by the standard; the distributions below are written out explicitly
/// because the standard library ones are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double Uniform();
  /// Standard normal via Box-Muller.
  double Normal();
  /// Uniform integer in [0, n), n > 0, by rejection.
  std::uint64_t Below(std::uint64_t n);

  DenseVector NormalVector(Eigen::Index n);
  DenseMatrix NormalMatrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Uniformly distributed point on the unit sphere in R^n.
DenseVector RandomUnitVector(Eigen::Index n, Rng& rng);

struct OneBitData {
  sphere::OneBitCsProblem problem;
  DenseVector x_true;
};

/// Gaussian Phi (m x n), k-sparse unit-norm x_true with normal nonzeros on a
/// uniformly drawn support, signs = sign(Phi x_true) with 0 mapped to +1.
/// Throws kInvalidArgument unless 1 <= k <= n and m >= 1.
OneBitData GenerateOneBit(int n, int m, int k, std::uint64_t seed, double lambda = 10.0);

struct BagData {
  maxop::BagDataset data;
  DenseVector beta_true;
  double positive_fraction = 0.0;
};

/// Normal beta_true and instances; bag label 1 iff max_j X_ij^T beta_true > 0.
BagData GenerateBags(int bags, int instances, int features, std::uint64_t seed);

}  // namespace neadmm::synthetic
