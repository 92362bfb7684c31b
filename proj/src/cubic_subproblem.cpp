#include "sarc/cubic_subproblem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sarc {

namespace {

constexpr double kZeroGradientFloor = 1e-300;

void validate_model(const CubicModel& model) {
  if (!model.g.allFinite() || !model.H.allFinite() || !std::isfinite(model.sigma)) {
    throw std::invalid_argument("cubic model has non-finite entries");
  }
  if (model.H.rows() != model.H.cols() || model.H.rows() != model.g.size()) {
    throw std::invalid_argument("cubic model dimensions disagree");
  }
  if (!(model.sigma > 0.0)) throw std::invalid_argument("cubic model needs sigma > 0");
  const double skew = (model.H - model.H.transpose()).cwiseAbs().maxCoeff();
  if (skew > 1e-12 * std::max(1.0, model.H.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("cubic model Hessian is not symmetric");
  }
}

// ||s(l)|| for (H + l I) s(l) = -g in the eigenbasis.
double step_norm_at(const Eigen::VectorXd& ghat, const Eigen::VectorXd& evals, double l) {
  double sum = 0.0;
  for (int i = 0; i < ghat.size(); ++i) {
    const double r = ghat(i) / (evals(i) + l);
    sum += r * r;
  }
  return std::sqrt(sum);
}

// d||s(l)||/dl = -sum ghat_i^2/(eval_i+l)^3 / ||s(l)||.
double step_norm_derivative(const Eigen::VectorXd& ghat, const Eigen::VectorXd& evals,
                            double l, double norm) {
  double sum = 0.0;
  for (int i = 0; i < ghat.size(); ++i) {
    const double d = evals(i) + l;
    sum += ghat(i) * ghat(i) / (d * d * d);
  }
  return -sum / norm;
}

SubproblemResult finish(const CubicModel& model, Eigen::VectorXd s,
                        SubproblemStatus status) {
  SubproblemResult result;
  result.s = std::move(s);
  result.status = status;
  const double norm = result.s.norm();
  result.lambda_mult = model.sigma * norm;
  result.grad_norm = model_gradient(model, result.s).norm();
  const double sHs = result.s.dot(model.H * result.s);
  const double cubic = model.sigma * norm * norm * norm;
  result.scalc_residual = std::fabs(result.s.dot(model.g) + sHs + cubic);
  result.curvature_slack = sHs + cubic;
  return result;
}

}  // namespace

SubproblemResult solve(const CubicModel& model, double eta) {
  validate_model(model);
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("solve: eta must lie in (0,1)");

  const int n = static_cast<int>(model.g.size());
  const Eigen::MatrixXd h_sym = 0.5 * (model.H + model.H.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h_sym);
  if (eig.info() != Eigen::Success) throw std::runtime_error("solve: eigendecomposition failed");
  const Eigen::VectorXd evals = eig.eigenvalues();  // ascending
  const Eigen::MatrixXd q = eig.eigenvectors();
  const double lambda_min = evals(0);

  const double gnorm = model.g.norm();
  if (gnorm <= kZeroGradientFloor) {
    // The minimizer is 0 when H is positive semidefinite; otherwise the pure
    // eigenstep of length -lambda_min / sigma along the minimal eigenvector.
    if (lambda_min >= 0.0) {
      return finish(model, Eigen::VectorXd::Zero(n), SubproblemStatus::zero_gradient);
    }
    const double t = -lambda_min / model.sigma;
    return finish(model, t * q.col(0), SubproblemStatus::zero_gradient);
  }

  const Eigen::VectorXd ghat = q.transpose() * model.g;
  const double lambda_lb = std::max(0.0, -lambda_min);

  // Components of g on the minimal eigenspace; when they vanish and the
  // secular bracket is empty we are in the hard case.
  const double cluster_width = 1e-12 * std::max(1.0, std::fabs(lambda_min));
  double g_min_space_sq = 0.0;
  int cluster_end = 0;
  while (cluster_end < n && evals(cluster_end) <= lambda_min + cluster_width) {
    g_min_space_sq += ghat(cluster_end) * ghat(cluster_end);
    ++cluster_end;
  }

  if (lambda_min < 0.0 && std::sqrt(g_min_space_sq) <= 1e-12 * gnorm) {
    double perp_norm_sq = 0.0;
    for (int i = cluster_end; i < n; ++i) {
      const double r = ghat(i) / (evals(i) + lambda_lb);
      perp_norm_sq += r * r;
    }
    const double target = lambda_lb / model.sigma;
    if (perp_norm_sq < target * target) {
      // Hard case: fix l = -lambda_min and extend along the minimal
      // eigenvector until ||s|| = l / sigma.
      Eigen::VectorXd shat = Eigen::VectorXd::Zero(n);
      for (int i = cluster_end; i < n; ++i) shat(i) = -ghat(i) / (evals(i) + lambda_lb);
      const double t = std::sqrt(target * target - perp_norm_sq);
      shat(0) += t;
      return finish(model, q * shat, SubproblemStatus::hard_case);
    }
  }

  // Secular root-find: psi(l) = l/sigma - ||s(l)|| is strictly increasing on
  // (lambda_lb, inf), negative near the left end, positive for large l.
  // hi = lambda_lb + sqrt(sigma ||g||) guarantees psi(hi) >= 0 because
  // ||s(l)|| <= ||g|| / (l + lambda_min).
  double lo = lambda_lb;
  double hi = lambda_lb + std::sqrt(model.sigma * gnorm);
  while (hi / model.sigma < step_norm_at(ghat, evals, hi)) hi *= 2.0;

  double l = hi;
  double psi = hi / model.sigma - step_norm_at(ghat, evals, hi);
  for (int iter = 0; iter < 200; ++iter) {
    if (std::fabs(psi) <= 1e-13 * std::max(1.0, l / model.sigma)) break;
    if (psi > 0.0) {
      hi = l;
    } else {
      lo = l;
    }
    const double norm = step_norm_at(ghat, evals, l);
    const double dpsi = 1.0 / model.sigma - step_norm_derivative(ghat, evals, l, norm);
    double next = l - psi / dpsi;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == l) break;
    l = next;
    psi = l / model.sigma - step_norm_at(ghat, evals, l);
  }

  Eigen::VectorXd shat(n);
  for (int i = 0; i < n; ++i) shat(i) = -ghat(i) / (evals(i) + l);
  return finish(model, q * shat, SubproblemStatus::converged);
}

double model_decrease(const CubicModel& model, const Eigen::VectorXd& s) {
  if (!s.allFinite() || !model.g.allFinite() || !model.H.allFinite()) {
    throw std::invalid_argument("model_decrease: non-finite inputs");
  }
  const double norm = s.norm();
  return -(s.dot(model.g) + 0.5 * s.dot(model.H * s) +
           model.sigma / 3.0 * norm * norm * norm);
}

Eigen::VectorXd model_gradient(const CubicModel& model, const Eigen::VectorXd& s) {
  if (!s.allFinite() || !model.g.allFinite() || !model.H.allFinite()) {
    throw std::invalid_argument("model_gradient: non-finite inputs");
  }
  return model.g + model.H * s + model.sigma * s.norm() * s;
}

GridMinimum brute_force_min(const CubicModel& model, double radius,
                            int grid_points_per_axis) {
  const int n = static_cast<int>(model.g.size());
  if (n > 3) throw std::invalid_argument("brute_force_min supports n <= 3 only");
  if (!(radius > 0.0) || grid_points_per_axis < 2) {
    throw std::invalid_argument("brute_force_min: bad radius or grid size");
  }

  const int gp = grid_points_per_axis;
  const double spacing = 2.0 * radius / (gp - 1);
  Eigen::VectorXd s(n);
  std::vector<int> idx(n, 0);
  GridMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  while (true) {
    for (int d = 0; d < n; ++d) s(d) = -radius + spacing * idx[d];
    const double v = -model_decrease(model, s);
    if (v < best.value) {
      best.value = v;
      best.s = s;
    }
    int d = 0;
    while (d < n && ++idx[d] == gp) idx[d++] = 0;
    if (d == n) break;
  }
  return best;
}

}  // namespace sarc
