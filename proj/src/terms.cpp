#include "neadmm/terms.hpp"

#include <cmath>
#include <utility>

namespace neadmm {

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSubproblemFailure: return "SubproblemFailure";
    case ErrorCode::kNonFiniteIterate: return "NonFiniteIterate";
    case ErrorCode::kDegenerateAllZero: return "DegenerateAllZero";
    case ErrorCode::kNoCandidate: return "NoCandidate";
    case ErrorCode::kInvalidBracket: return "InvalidBracket";
    case ErrorCode::kMissingReference: return "MissingReference";
    case ErrorCode::kEmptyTrace: return "EmptyTrace";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

SmoothTerm SmoothTerm::Zero() {
  return {[](const DenseVector&) { return 0.0; },
          [](const DenseVector& x) { return DenseVector(DenseVector::Zero(x.size())); }};
}

SmoothTerm SmoothTerm::Quadratic(DenseVector center, double weight) {
  return {[center, weight](const DenseVector& x) {
            RequireSameSize(center.size(), x.size(), "quadratic term");
            return 0.5 * weight * (x - center).squaredNorm();
          },
          [center, weight](const DenseVector& x) {
            RequireSameSize(center.size(), x.size(), "quadratic term");
            return DenseVector(weight * (x - center));
          }};
}

SmoothTerm SmoothTerm::Linear(DenseVector coeffs) {
  return {[coeffs](const DenseVector& x) {
            RequireSameSize(coeffs.size(), x.size(), "linear term");
            return coeffs.dot(x);
          },
          [coeffs](const DenseVector& x) {
            RequireSameSize(coeffs.size(), x.size(), "linear term");
            return coeffs;
          }};
}

SmoothTerm operator+(SmoothTerm a, SmoothTerm b) {
  auto va = std::move(a.value), vb = std::move(b.value);
  auto ga = std::move(a.gradient), gb = std::move(b.gradient);
  return {[va, vb](const DenseVector& x) { return va(x) + vb(x); },
          [ga, gb](const DenseVector& x) { return DenseVector(ga(x) + gb(x)); }};
}

ProxTerm ProxTerm::Zero() {
  return {[](const DenseVector&) { return 0.0; },
          [](const DenseVector& v, double) { return v; }};
}

DenseVector SoftThreshold(const DenseVector& v, double threshold) {
  return v.unaryExpr([threshold](double e) {
    const double mag = std::abs(e) - threshold;
    return mag > 0.0 ? std::copysign(mag, e) : 0.0;
  });
}

ProxTerm ProxTerm::L1(double lambda) {
  if (!(lambda >= 0.0)) {
    throw SolverError(ErrorCode::kInvalidArgument, "l1 weight must be nonnegative");
  }
  return {[lambda](const DenseVector& x) { return lambda * x.lpNorm<1>(); },
          [lambda](const DenseVector& v, double step) { return SoftThreshold(v, lambda * step); }};
}

DenseVector ConstraintTerm::Eval(const DenseVector& x) const {
  RequireSameSize(dim_in, x.size(), "constraint input");
  DenseVector out = eval(x);
  RequireSameSize(dim_out, out.size(), "constraint output");
  return out;
}

DenseMatrix ConstraintTerm::Jacobian(const DenseVector& x) const {
  RequireSameSize(dim_in, x.size(), "constraint input");
  DenseMatrix j = jacobian(x);
  RequireSameSize(dim_out, j.rows(), "jacobian rows");
  RequireSameSize(dim_in, j.cols(), "jacobian cols");
  return j;
}

ConstraintTerm ConstraintTerm::Linear(DenseMatrix a, DenseVector offset) {
  if (offset.size() == 0) offset = DenseVector::Zero(a.rows());
  RequireSameSize(a.rows(), offset.size(), "linear constraint offset");
  ConstraintTerm term;
  term.dim_in = a.cols();
  term.dim_out = a.rows();
  term.eval = [a, offset](const DenseVector& x) { return DenseVector(a * x + offset); };
  term.jacobian = [a](const DenseVector&) { return a; };
  return term;
}

}  // namespace neadmm
