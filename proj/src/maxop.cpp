#include "neadmm/maxop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace neadmm::maxop {

BagDataset::BagDataset(const std::vector<DenseMatrix>& bags, DenseVector labels)
    : labels_(std::move(labels)) {
  if (bags.empty()) throw SolverError(ErrorCode::kInvalidArgument, "dataset has no bags");
  RequireSameSize(static_cast<Eigen::Index>(bags.size()), labels_.size(), "bag labels");
  const Eigen::Index p = bags.front().cols();
  if (p < 1) throw SolverError(ErrorCode::kInvalidArgument, "instances need features");
  offsets_.reserve(bags.size() + 1);
  offsets_.push_back(0);
  for (const auto& bag : bags) {
    if (bag.rows() < 1) throw SolverError(ErrorCode::kInvalidArgument, "empty bag");
    RequireSameSize(p, bag.cols(), "bag feature dimension");
    offsets_.push_back(offsets_.back() + bag.rows());
  }
  instances_.resize(offsets_.back(), p);
  for (std::size_t i = 0; i < bags.size(); ++i) {
    instances_.middleRows(offsets_[i], bags[i].rows()) = bags[i];
  }
}

DenseVector BagDataset::BagMax(const DenseVector& per_instance) const {
  RequireSameSize(num_instances(), per_instance.size(), "per-instance vector");
  DenseVector out(num_bags());
  for (Eigen::Index i = 0; i < num_bags(); ++i) {
    out(i) = per_instance.segment(bag_begin(i), bag_size(i)).maxCoeff();
  }
  return out;
}

SmoothTerm LogisticLoss(DenseVector labels) {
  // log(1 + e^q) evaluated without overflow
  auto softplus = [](double q) { return q > 0 ? q + std::log1p(std::exp(-q)) : std::log1p(std::exp(q)); };
  auto sigmoid = [](double q) {
    return q >= 0 ? 1.0 / (1.0 + std::exp(-q)) : std::exp(q) / (1.0 + std::exp(q));
  };
  return {[labels, softplus](const DenseVector& q) {
            RequireSameSize(labels.size(), q.size(), "logistic loss");
            double v = 0.0;
            for (Eigen::Index i = 0; i < q.size(); ++i) v += softplus(q(i)) - labels(i) * q(i);
            return v;
          },
          [labels, sigmoid](const DenseVector& q) {
            RequireSameSize(labels.size(), q.size(), "logistic loss");
            return DenseVector(q.unaryExpr(sigmoid) - labels);
          }};
}

SmoothTerm SquaredLoss(DenseVector targets) { return SmoothTerm::Quadratic(std::move(targets)); }

bool AllFinite(const MaxOpState& s) {
  return s.q.allFinite() && s.beta.allFinite() && s.t.allFinite() && s.y1.allFinite() &&
         s.y2.allFinite();
}

DenseVector UpdateQ(const SmoothTerm& loss, const DenseVector& max_t, const DenseVector& y1,
                    double rho, const FistaConfig& fista, const DenseVector& warm) {
  if (!(rho > 0.0)) throw SolverError(ErrorCode::kInvalidArgument, "rho must be positive");
  RequireSameSize(max_t.size(), y1.size(), "y1");
  CompositeObjective sub;
  sub.smooth = loss + SmoothTerm::Quadratic(max_t - y1 / rho, rho);
  const DenseVector start = warm.size() == max_t.size() ? warm : DenseVector(max_t - y1 / rho);
  return Fista(sub, start, fista);
}

DenseVector UpdateBeta(const ProxTerm& reg, const DenseMatrix& x, const DenseVector& t,
                       const DenseVector& y2, double rho, const FistaConfig& fista,
                       const DenseVector& warm) {
  if (!(rho > 0.0)) throw SolverError(ErrorCode::kInvalidArgument, "rho must be positive");
  RequireSameSize(x.rows(), t.size(), "t");
  RequireSameSize(x.rows(), y2.size(), "y2");
  const DenseVector target = t + y2 / rho;
  CompositeObjective sub;
  sub.smooth.value = [&x, &target, rho](const DenseVector& b) {
    return 0.5 * rho * (x * b - target).squaredNorm();
  };
  sub.smooth.gradient = [&x, &target, rho](const DenseVector& b) {
    return DenseVector(rho * (x.transpose() * (x * b - target)));
  };
  sub.nonsmooth = reg;
  const DenseVector start = warm.size() == x.cols() ? warm : DenseVector(DenseVector::Zero(x.cols()));
  return Fista(sub, start, fista);
}

double BagObjective(const TUpdateInstance& inst, const DenseVector& t) {
  RequireSameSize(inst.phi.size(), t.size(), "bag");
  const double gap = inst.psi - t.maxCoeff();
  return gap * gap + (t - inst.phi).squaredNorm();
}

DenseVector TUpdateBag(const TUpdateInstance& inst) {
  const Eigen::Index n = inst.phi.size();
  if (n < 1) throw SolverError(ErrorCode::kInvalidArgument, "bag must be nonempty");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return inst.phi(a) > inst.phi(b); });

  double prefix = 0.0;
  double level = 0.0;
  Eigen::Index clipped = n;
  for (Eigen::Index c = 1; c <= n; ++c) {
    prefix += inst.phi(order[c - 1]);
    level = (prefix + inst.psi) / static_cast<double>(c + 1);
    const double next =
        c < n ? inst.phi(order[c]) : -std::numeric_limits<double>::infinity();
    if (level > next) {
      clipped = c;
      break;
    }
  }
  DenseVector t = inst.phi;
  for (Eigen::Index j = 0; j < clipped; ++j) t(order[j]) = level;
  return t;
}

DenseVector UpdateT(const BagDataset& data, const DenseVector& q, const DenseVector& beta,
                    const DenseVector& y1, const DenseVector& y2, double rho) {
  RequireSameSize(data.num_bags(), q.size(), "q");
  RequireSameSize(data.num_bags(), y1.size(), "y1");
  const DenseVector phi_all = data.instances() * beta - y2 / rho;
  DenseVector t(data.num_instances());
  for (Eigen::Index i = 0; i < data.num_bags(); ++i) {
    TUpdateInstance inst{q(i) + y1(i) / rho, phi_all.segment(data.bag_begin(i), data.bag_size(i))};
    t.segment(data.bag_begin(i), data.bag_size(i)) = TUpdateBag(inst);
  }
  return t;
}

MaxOpState ZeroState(const BagDataset& data, double rho0) {
  MaxOpState s;
  s.q = DenseVector::Zero(data.num_bags());
  s.beta = DenseVector::Zero(data.num_features());
  s.t = DenseVector::Zero(data.num_instances());
  s.y1 = DenseVector::Zero(data.num_bags());
  s.y2 = DenseVector::Zero(data.num_instances());
  s.rho = rho0;
  return s;
}

SolveResult<MaxOpState> Solve(const MaxOpProblem& problem, MaxOpState init,
                              const RhoSchedule& schedule, const StopCriteria& stop) {
  const BagDataset& data = problem.data;
  RequireSameSize(data.num_bags(), init.q.size(), "q");
  RequireSameSize(data.num_features(), init.beta.size(), "beta");
  RequireSameSize(data.num_instances(), init.t.size(), "t");
  RequireSameSize(data.num_bags(), init.y1.size(), "y1");
  RequireSameSize(data.num_instances(), init.y2.size(), "y2");

  auto step = [&problem, &data](MaxOpState& s, double rho, int k) {
    const DenseVector max_t_old = data.BagMax(s.t);
    s.q = UpdateQ(problem.loss, max_t_old, s.y1, rho, problem.q_fista, s.q);
    s.beta = UpdateBeta(problem.reg, data.instances(), s.t, s.y2, rho, problem.beta_fista, s.beta);
    const DenseVector t_old = s.t;
    s.t = UpdateT(data, s.q, s.beta, s.y1, s.y2, rho);
    const DenseVector max_t = data.BagMax(s.t);

    const DenseVector r1 = s.q - max_t;
    const DenseVector r2 = s.t - data.instances() * s.beta;
    const DenseVector s1 = rho * (max_t_old - max_t);
    const DenseVector s2 = s.t - t_old;
    s.y1 += rho * r1;
    s.y2 += rho * r2;
    s.rho = rho;
    s.k = k + 1;

    TraceRow row;
    row.objective = problem.Objective(s.q, s.beta);
    row.r_norm = std::sqrt(r1.squaredNorm() + r2.squaredNorm());
    row.s_norm = std::sqrt(s1.squaredNorm() + s2.squaredNorm());
    return row;
  };
  return RunIterations(std::move(init), schedule, stop, step);
}

}  // namespace neadmm::maxop
