#pragma once

#include <vector>

#include "neadmm/engine.hpp"
#include "neadmm/inner_solvers.hpp"

namespace neadmm::maxop {

/// Bags of instances. Instance rows of every bag are stacked into one matrix;
/// bag i owns rows [offsets[i], offsets[i+1]).
class BagDataset {
 public:
  BagDataset() = default;
  /// Each element of `bags` is an n_i x p matrix of instance features.
  BagDataset(const std::vector<DenseMatrix>& bags, DenseVector labels);

  Eigen::Index num_bags() const { return labels_.size(); }
  Eigen::Index num_features() const { return instances_.cols(); }
  Eigen::Index num_instances() const { return instances_.rows(); }
  Eigen::Index bag_begin(Eigen::Index i) const { return offsets_[i]; }
  Eigen::Index bag_size(Eigen::Index i) const { return offsets_[i + 1] - offsets_[i]; }

  const DenseMatrix& instances() const { return instances_; }
  const DenseVector& labels() const { return labels_; }

  /// Per-bag maximum of a vector laid out like the stacked instances.
  DenseVector BagMax(const DenseVector& per_instance) const;

 private:
  DenseMatrix instances_;
  DenseVector labels_;
  std::vector<Eigen::Index> offsets_;
};

/// sum_i log(1 + exp(q_i)) - Y_i q_i
SmoothTerm LogisticLoss(DenseVector labels);
/// 0.5 * ||q - targets||^2
SmoothTerm SquaredLoss(DenseVector targets);

struct MaxOpState {
  DenseVector q;     // per bag
  DenseVector beta;  // per feature
  DenseVector t;     // per instance, stacked like the dataset
  DenseVector y1;    // dual of q - max t = 0
  DenseVector y2;    // dual of t - X beta = 0
  double rho = 1.0;
  int k = 0;
};

bool AllFinite(const MaxOpState& s);

/// argmin_q loss(q) + (rho/2)||q - max_t + y1/rho||^2 via FISTA.
DenseVector UpdateQ(const SmoothTerm& loss, const DenseVector& max_t, const DenseVector& y1,
                    double rho, const FistaConfig& fista = {},
                    const DenseVector& warm = DenseVector());

/// argmin_beta reg(beta) + (rho/2)||t - X beta + y2/rho||^2 via FISTA.
DenseVector UpdateBeta(const ProxTerm& reg, const DenseMatrix& x, const DenseVector& t,
                       const DenseVector& y2, double rho, const FistaConfig& fista = {},
                       const DenseVector& warm = DenseVector());

/// One bag of the t-subproblem: psi = q_i + y1_i/rho, phi_j = X_ij^T beta - y2_ij/rho.
struct TUpdateInstance {
  double psi = 0.0;
  DenseVector phi;
};

/// h(t) = (psi - max_j t_j)^2 + ||t - phi||^2
double BagObjective(const TUpdateInstance& inst, const DenseVector& t);

/// Exact global minimizer of h in O(n log n).
///
/// Sort phi descending (stable, ties by index) into phi'. With
/// a_c = (phi'_1 + ... + phi'_c + psi) / (c + 1), let c* be the smallest c with
/// a_c > phi'_{c+1} (phi'_{n+1} = -inf). The top c* entries are set to a_{c*}
/// and the rest keep phi.
DenseVector TUpdateBag(const TUpdateInstance& inst);

/// Applies TUpdateBag to every bag.
DenseVector UpdateT(const BagDataset& data, const DenseVector& q, const DenseVector& beta,
                    const DenseVector& y1, const DenseVector& y2, double rho);

struct MaxOpProblem {
  BagDataset data;
  SmoothTerm loss;  // over the bag vector q
  ProxTerm reg;     // over beta
  FistaConfig q_fista{1000, 1e-10, 1.0, 0.5};
  FistaConfig beta_fista{5000, 1e-12, 1.0, 0.5};

  /// loss(q) + reg(beta)
  double Objective(const DenseVector& q, const DenseVector& beta) const {
    return loss.value(q) + reg.value(beta);
  }
};

/// All variables zero.
MaxOpState ZeroState(const BagDataset& data, double rho0);

/// Updates q, beta, t, then both duals. Residuals:
/// r1 = q - max t, r2 = t - X beta, s1 = rho(max t_old - max t_new),
/// s2 = t_new - t_old; r = sqrt(||r1||^2 + ||r2||^2), s likewise.
SolveResult<MaxOpState> Solve(const MaxOpProblem& problem, MaxOpState init,
                              const RhoSchedule& schedule, const StopCriteria& stop);

}  // namespace neadmm::maxop
