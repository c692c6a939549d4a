#pragma once

#include <string>
#include <vector>

#include "neadmm/diagnostics.hpp"
#include "neadmm/engine.hpp"

namespace neadmm::examples {

/// Example 1: min x + z s.t. sqrt(x) + sqrt(z) = 1.
/// Example 2: min x + z s.t. x^2 + z^2 = 1.
enum class Which { kExample1, kExample2 };

const char* ToString(Which which);

struct ScalarOptimum {
  double x = 0.0;
  double z = 0.0;
  double p = 0.0;
  double y = 0.0;  // dual optimum
};

ScalarOptimum KnownOptimum(Which which);

/// argmin over x >= 0 of x + (rho/2)(sqrt(x) + c)^2.
double Example1BlockUpdate(double c, double rho);

/// Global argmin over R of x + (rho/2)(x^2 + c)^2. Ties go to the smallest root.
double Example2BlockUpdate(double c, double rho);

/// Engine problem with f1 = g(x), f2 = g(z) - 1 and closed-form block solvers,
/// g = sqrt for Example 1 and g = square for Example 2.
Problem MakeProblem(Which which);

/// x = z = 1, y = 0.
IterateState DefaultStart(Which which, double rho0);

/// Known primal-dual optimum with epsilon computed from x1_star.
diagnostics::OptimumReference Reference(Which which);

/// Runs the engine from DefaultStart with default tolerances.
SolveResult<IterateState> RunExample(Which which, const RhoSchedule& schedule, int max_iter,
                                     std::vector<IterateState>* history = nullptr);

}  // namespace neadmm::examples
