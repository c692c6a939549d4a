#pragma once

#include <functional>

#include "neadmm/types.hpp"

namespace neadmm {

/// Differentiable objective piece: value and gradient.
struct SmoothTerm {
  std::function<double(const DenseVector&)> value;
  std::function<DenseVector(const DenseVector&)> gradient;

  static SmoothTerm Zero();
  /// (weight/2) * ||x - center||^2
  static SmoothTerm Quadratic(DenseVector center, double weight = 1.0);
  /// coeffs^T x
  static SmoothTerm Linear(DenseVector coeffs);
};

SmoothTerm operator+(SmoothTerm a, SmoothTerm b);

/// Objective piece with an exact proximal map:
/// prox(v, step) = argmin_u value(u) + ||u - v||^2 / (2 step).
struct ProxTerm {
  std::function<double(const DenseVector&)> value;
  std::function<DenseVector(const DenseVector&, double)> prox;

  static ProxTerm Zero();
  /// lambda * ||x||_1, prox is componentwise soft thresholding.
  static ProxTerm L1(double lambda);
};

DenseVector SoftThreshold(const DenseVector& v, double threshold);

/// smooth(x) + nonsmooth(x); the objective class handled by Fista().
struct CompositeObjective {
  SmoothTerm smooth = SmoothTerm::Zero();
  ProxTerm nonsmooth = ProxTerm::Zero();

  double Value(const DenseVector& x) const { return smooth.value(x) + nonsmooth.value(x); }
};

/// Nonlinear map f: R^dim_in -> R^dim_out with its Jacobian. Where f is not
/// differentiable, `jacobian` returns one designated element of the Frechet
/// subdifferential; each factory documents its choice.
struct ConstraintTerm {
  Eigen::Index dim_in = 0;
  Eigen::Index dim_out = 0;
  std::function<DenseVector(const DenseVector&)> eval;
  std::function<DenseMatrix(const DenseVector&)> jacobian;

  /// Evaluates with dimension checks on input and output.
  DenseVector Eval(const DenseVector& x) const;
  DenseMatrix Jacobian(const DenseVector& x) const;

  /// f(x) = A x + offset
  static ConstraintTerm Linear(DenseMatrix a, DenseVector offset = DenseVector());
};

}  // namespace neadmm
