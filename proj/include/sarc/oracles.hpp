#pragma once

#include <Eigen/Dense>
#include <functional>

#include "sarc/problems.hpp"
#include "sarc/rng.hpp"

namespace sarc {

// Stochastic zeroth-order oracle: sample(x) estimates phi(x) with
// sub-exponential error; E|error| <= eps_f and
// P(|error| >= t) <= exp(lambda * (a - t)) for all t > 0.
struct ZerothOracle {
  double eps_f = 0.0;
  double lambda = 0.0;
  double a = 0.0;
  std::function<double(const Eigen::VectorXd&, RngStream&)> sample;
};

// Stochastic first-order oracle: P(||sample - grad phi(x)|| <= kappa_g * mu1)
// >= 1 - delta1 for caller-chosen mu1 > 0, delta1 in [0, 1/2).
struct FirstOracle {
  double kappa_g = 0.0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double mu1, double delta1,
                                RngStream&)>
      sample;
};

// Stochastic second-order oracle: operator-norm error within kappa_H * mu2
// with probability at least 1 - delta2; output symmetric.
struct SecondOracle {
  double kappa_H = 0.0;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&, double mu2, double delta2,
                                RngStream&)>
      sample;
};

struct OracleSuite {
  ZerothOracle zeroth;
  FirstOracle first;
  SecondOracle second;
  bool exact = false;  // true when every sample is deterministic ground truth
};

// Degenerate oracles returning ground truth; all contracts hold surely.
OracleSuite exact_suite(ProblemPtr p);

// phi(x) + Laplace(0, b) noise: declared (eps_f, lambda, a) = (b, 1/b, 0).
ZerothOracle laplace_zeroth(ProblemPtr p, double b);

// grad phi(x) + spherical Gaussian calibrated through the chi-square quantile
// so the norm bound is violated with probability exactly delta1.
FirstOracle gaussian_first(ProblemPtr p, double kappa_g);

// hess phi(x) + scaled symmetrized Gaussian matrix; the scale is calibrated
// conservatively through the Frobenius norm (chi-square with n(n+1)/2
// degrees of freedom), which dominates the operator norm.
SecondOracle gaussian_second(ProblemPtr p, double kappa_H);

// Convenience bundle of the three noisy oracles above.
OracleSuite laplace_gaussian_suite(ProblemPtr p, double b, double kappa_g,
                                   double kappa_H);

// Batch-size used by the subsampled first/second oracles for error target mu
// and failure probability delta: min(m, ceil(2 (G/mu)^2 (ln(1/delta) + ln 2n))).
int bernstein_batch_size(double g_max, double mu, double delta, int n, int m);

// Without-replacement subsampling oracles for finite-sum problems. The
// zeroth-order batch is fixed at ceil(m/4); its (eps_f, lambda, a) are fitted
// from calibration samples drawn at construction with a fixed internal seed.
OracleSuite subsampled_suite(ProblemPtr p, double kappa_g, double kappa_H);

}  // namespace sarc
