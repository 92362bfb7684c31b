#pragma once

#include <Eigen/Dense>

namespace sarc {

// Local model m(s) = g^T s + s^T H s / 2 + (sigma/3) ||s||^3 (the constant
// term of the objective is never carried around).
struct CubicModel {
  Eigen::VectorXd g;
  Eigen::MatrixXd H;  // symmetric
  double sigma = 1.0;
};

enum class SubproblemStatus { converged, hard_case, zero_gradient };

struct SubproblemResult {
  Eigen::VectorXd s;
  double lambda_mult = 0.0;     // sigma * ||s||
  double grad_norm = 0.0;       // ||g + H s + sigma ||s|| s||
  double scalc_residual = 0.0;  // |s^T g + s^T H s + sigma ||s||^3|
  double curvature_slack = 0.0; // s^T H s + sigma ||s||^3
  SubproblemStatus status = SubproblemStatus::converged;
};

// Computes a trial step of the regularized model: the step satisfies the
// stationarity identity s^T g + s^T H s + sigma ||s||^3 = 0, nonnegative
// regularized curvature, and a model-gradient residual below
// eta * min(1, ||s||) * ||g||. The dense path eigendecomposes H and solves
// the secular equation sigma ||s(l)|| = l for (H + l I) s(l) = -g via the
// increasing reformulation psi(l) = l/sigma - ||s(l)||, with safeguarded
// Newton/bisection. The hard case (gradient orthogonal to the minimal
// eigenspace with an empty secular bracket) adds an explicit eigenvector
// component; a vanishing gradient returns the analytic minimizer directly.
SubproblemResult solve(const CubicModel& model, double eta);

// -(s^T g + s^T H s / 2 + (sigma/3)||s||^3): model value drop for step s.
double model_decrease(const CubicModel& model, const Eigen::VectorXd& s);

// g + H s + sigma ||s|| s.
Eigen::VectorXd model_gradient(const CubicModel& model, const Eigen::VectorXd& s);

struct GridMinimum {
  Eigen::VectorXd s;
  double value = 0.0;
};

// Exhaustive grid search of the model over [-radius, radius]^n, n <= 3.
// Test oracle for certifying near-global optimality of solve().
GridMinimum brute_force_min(const CubicModel& model, double radius,
                            int grid_points_per_axis);

}  // namespace sarc
