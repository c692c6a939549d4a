#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace neadmm {

using DenseVector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

/// Failure categories shared by every solver in the library.
enum class ErrorCode {
  kDimensionMismatch,
  kInvalidArgument,
  kSubproblemFailure,
  kNonFiniteIterate,
  kDegenerateAllZero,
  kNoCandidate,
  kInvalidBracket,
  kMissingReference,
  kEmptyTrace,
  kIo,
};

const char* ToString(ErrorCode code);

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline bool AllFinite(const DenseVector& v) { return v.allFinite(); }

inline void RequireSameSize(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw SolverError(ErrorCode::kDimensionMismatch,
                      std::string(what) + ": expected dimension " + std::to_string(a) +
                          ", got " + std::to_string(b));
  }
}

}  // namespace neadmm
