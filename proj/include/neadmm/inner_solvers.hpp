#pragma once

#include <functional>
#include <vector>

#include "neadmm/terms.hpp"
#include "neadmm/types.hpp"

namespace neadmm {

struct FistaConfig {
  int max_iter = 500;
  double tol = 1e-8;            // on ||x_{k+1} - x_k||_2
  double initial_step = 1.0;
  double backtracking_factor = 0.5;

  void Validate() const;
};

struct FistaReport {
  int iterations = 0;
  int restarts = 0;
  bool converged = false;
  double final_step = 0.0;
};

/// Accelerated proximal gradient on smooth + nonsmooth with backtracking line
/// search and function-value restart: whenever the accelerated step would raise
/// the composite objective, momentum is reset and a plain proximal gradient step
/// is taken instead, so the objective never increases from x0.
DenseVector Fista(const CompositeObjective& objective, const DenseVector& x0,
                  const FistaConfig& config = {}, FistaReport* report = nullptr);

/// Real roots of a t^3 + b t^2 + c t + d, ascending. Lower degree is handled
/// when leading coefficients vanish. Each root gets a Newton polish step.
std::vector<double> CubicRealRoots(double a, double b, double c, double d);

/// Golden-section search on [lo, hi] until the bracket is narrower than tol.
double GoldenSectionMin(const std::function<double(double)>& f, double lo, double hi,
                        double tol = 1e-10);

}  // namespace neadmm
