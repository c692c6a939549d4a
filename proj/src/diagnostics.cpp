#include "neadmm/diagnostics.hpp"

#include <cmath>
#include <limits>

namespace neadmm::diagnostics {

void OptimumReference::Validate(const Problem& problem) const {
  const DenseVector c = problem.f1.Eval(x1_star) + problem.f2.Eval(x2_star);
  RequireSameSize(c.size(), y_star.size(), "y_star");
  if (c.lpNorm<Eigen::Infinity>() > 1e-8) {
    throw SolverError(ErrorCode::kInvalidArgument, "reference optimum is not feasible");
  }
}

double ErrorBoundValue(double rho, double eps, double df2_l1, double y_dot_r) {
  return rho * eps * df2_l1 - y_dot_r;
}

ErrorBound ComputeErrorBound(const Problem& problem, const IterateState& state,
                             const DenseVector& prev_f2, const OptimumReference* ref) {
  if (ref == nullptr) throw SolverError(ErrorCode::kMissingReference, "no optimum reference");
  const DenseVector f1x1 = problem.f1.Eval(state.x1);
  const DenseVector f2x2 = problem.f2.Eval(state.x2);
  RequireSameSize(f2x2.size(), prev_f2.size(), "previous f2");
  const DenseVector r = f1x1 + f2x2;
  const double eps = ref->epsilon
                         ? ref->epsilon(state.k)
                         : (f1x1 - problem.f1.Eval(ref->x1_star)).lpNorm<Eigen::Infinity>();
  ErrorBound out;
  out.bound = ErrorBoundValue(state.rho, eps, (f2x2 - prev_f2).lpNorm<1>(), state.y.dot(r));
  out.gap = problem.Objective(state.x1, state.x2) - ref->p_star;
  return out;
}

double Lyapunov(const IterateState& state, const OptimumReference* ref,
                const ConstraintTerm& f2) {
  if (ref == nullptr) throw SolverError(ErrorCode::kMissingReference, "no optimum reference");
  RequireSameSize(ref->y_star.size(), state.y.size(), "y");
  const double df2 = (f2.Eval(state.x2) - f2.Eval(ref->x2_star)).squaredNorm();
  return state.rho * df2 + (state.y - ref->y_star).squaredNorm() / state.rho;
}

ViMatrices BuildViMatrices(int d, double rho) {
  if (d < 1) throw SolverError(ErrorCode::kInvalidArgument, "block size must be positive");
  if (!(rho > 0.0)) throw SolverError(ErrorCode::kInvalidArgument, "rho must be positive");
  const Eigen::Index n = d;
  const DenseMatrix id = DenseMatrix::Identity(n, n);

  DenseMatrix a = DenseMatrix::Zero(2 * n, 2 * n);  // [[0, 0], [0, I]]
  a.bottomRightCorner(n, n) = id;
  DenseMatrix b = DenseMatrix::Zero(n, 2 * n);      // [0, I]
  b.rightCols(n) = id;

  ViMatrices m;
  m.d = d;
  m.rho = rho;
  m.C = DenseMatrix::Zero(3 * n, 3 * n);
  m.C.topLeftCorner(2 * n, 2 * n) = rho * a;
  m.C.bottomLeftCorner(n, 2 * n) = b;
  m.C.bottomRightCorner(n, n) = id / rho;

  m.D = DenseMatrix::Zero(3 * n, 3 * n);
  m.D.topLeftCorner(2 * n, 2 * n) = rho * a;
  m.D.bottomRightCorner(n, n) = id / rho;

  m.E = DenseMatrix::Identity(3 * n, 3 * n);
  m.E.bottomLeftCorner(n, 2 * n) = rho * b;

  m.G = m.C + m.C.transpose() - m.E.transpose() * m.D * m.E;

  DenseMatrix closed = DenseMatrix::Zero(3 * n, 3 * n);
  closed.bottomRightCorner(n, n) = id / rho;
  m.c_minus_de = (m.C - m.D * m.E).cwiseAbs().maxCoeff();
  m.g_minus_closed = (m.G - closed).cwiseAbs().maxCoeff();
  return m;
}

std::vector<ViSnapshot> ViSnapshots(const Problem& problem,
                                    const std::vector<IterateState>& history) {
  std::vector<ViSnapshot> out;
  if (history.size() < 2) return out;
  const double rho = history[1].rho;
  const Eigen::Index d = problem.f1.dim_out;
  for (std::size_t k = 0; k + 1 < history.size(); ++k) {
    const IterateState& cur = history[k];
    const IterateState& next = history[k + 1];
    if (next.rho != rho) {
      throw SolverError(ErrorCode::kInvalidArgument,
                        "variational-inequality checks need a constant rho");
    }
    const DenseVector f1_next = problem.f1.Eval(next.x1);
    const DenseVector f2_cur = problem.f2.Eval(cur.x2);
    ViSnapshot snap;
    snap.w.resize(3 * d);
    snap.w << problem.f1.Eval(cur.x1), f2_cur, cur.y;
    snap.w_tilde.resize(3 * d);
    snap.w_tilde << f1_next, problem.f2.Eval(next.x2), cur.y + rho * (f1_next + f2_cur);
    out.push_back(std::move(snap));
  }
  return out;
}

double ViReport::max_identity_residual() const {
  double m = 0.0;
  for (double r : identity_residuals) m = std::max(m, r);
  return m;
}

ViReport ViSequenceCheck(const std::vector<ViSnapshot>& snapshots, const ViMatrices& mats) {
  if (snapshots.empty()) throw SolverError(ErrorCode::kEmptyTrace, "no snapshots");
  ViReport report;
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    RequireSameSize(mats.E.rows(), snapshots[k].w.size(), "snapshot w");
    RequireSameSize(mats.E.rows(), snapshots[k].w_tilde.size(), "snapshot w_tilde");
    const DenseVector e = mats.E * (snapshots[k].w - snapshots[k].w_tilde);
    const double norm = e.dot(mats.D * e);
    report.norms.push_back(norm);
    report.rate_ratios.push_back(norm * static_cast<double>(k + 1));
    report.rate_constant = std::max(report.rate_constant, report.rate_ratios.back());
    if (k > 0 && norm > report.norms[k - 1] + 1e-10) report.increases.push_back(k);
    if (k + 1 < snapshots.size()) {
      report.identity_residuals.push_back((snapshots[k + 1].w - snapshots[k].w + e).norm());
    }
  }
  return report;
}

std::vector<DiagnosticsRow> Diagnose(const Problem& problem,
                                     const std::vector<IterateState>& history,
                                     const OptimumReference& ref) {
  std::vector<DiagnosticsRow> rows;
  if (history.size() < 2) return rows;

  bool constant_rho = true;
  for (std::size_t k = 2; k < history.size(); ++k) {
    constant_rho = constant_rho && history[k].rho == history[1].rho;
  }
  std::vector<double> vi_norms(history.size() - 1, std::numeric_limits<double>::quiet_NaN());
  if (constant_rho) {
    const ViMatrices mats =
        BuildViMatrices(static_cast<int>(problem.f1.dim_out), history[1].rho);
    vi_norms = ViSequenceCheck(ViSnapshots(problem, history), mats).norms;
  }

  double prev_v = Lyapunov(history[0], &ref, problem.f2);
  for (std::size_t k = 1; k < history.size(); ++k) {
    DiagnosticsRow row;
    row.k = static_cast<int>(k);
    const ErrorBound eb =
        ComputeErrorBound(problem, history[k], problem.f2.Eval(history[k - 1].x2), &ref);
    row.bound = eb.bound;
    row.gap = eb.gap;
    row.lyapunov = Lyapunov(history[k], &ref, problem.f2);
    row.vi_norm = vi_norms[k - 1];

    auto flag = [&row](const char* name) {
      if (!row.flags.empty()) row.flags += '|';
      row.flags += name;
    };
    if (row.gap > row.bound + 1e-8) flag("bound_violation");
    if (row.lyapunov > prev_v + 1e-8) flag("lyapunov_increase");
    if (k > 1 && row.vi_norm > vi_norms[k - 2] + 1e-10) flag("vi_increase");
    prev_v = row.lyapunov;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace neadmm::diagnostics
