#include "sarc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sarc/stats.hpp"

namespace sarc {

namespace {

// Draw `batch` distinct indices from [0, m) by partial Fisher-Yates.
std::vector<int> sample_without_replacement(int m, int batch, RngStream& rng) {
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < batch; ++i) {
    const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m - i)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(batch);
  return idx;
}

}  // namespace

OracleSuite exact_suite(ProblemPtr p) {
  OracleSuite suite;
  suite.exact = true;
  suite.zeroth.eps_f = 0.0;
  suite.zeroth.lambda = 1e300;  // K = C / lambda vanishes; p -> 1 - d1 - d2
  suite.zeroth.a = 0.0;
  suite.zeroth.sample = [p](const Eigen::VectorXd& x, RngStream&) { return p->value(x); };
  suite.first.kappa_g = 1.0;
  suite.first.sample = [p](const Eigen::VectorXd& x, double, double, RngStream&) {
    return p->gradient(x);
  };
  suite.second.kappa_H = 1.0;
  suite.second.sample = [p](const Eigen::VectorXd& x, double, double, RngStream&) {
    return p->hessian(x);
  };
  return suite;
}

ZerothOracle laplace_zeroth(ProblemPtr p, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("laplace_zeroth: b must be > 0");
  ZerothOracle oracle;
  oracle.eps_f = b;       // E|Laplace(0,b)| = b
  oracle.lambda = 1.0 / b;  // P(|e| >= t) = exp(-t/b)
  oracle.a = 0.0;
  oracle.sample = [p, b](const Eigen::VectorXd& x, RngStream& rng) {
    return p->value(x) + rng.next_laplace(b);
  };
  return oracle;
}

FirstOracle gaussian_first(ProblemPtr p, double kappa_g) {
  if (!(kappa_g > 0.0)) throw std::invalid_argument("gaussian_first: kappa_g must be > 0");
  FirstOracle oracle;
  oracle.kappa_g = kappa_g;
  oracle.sample = [p, kappa_g](const Eigen::VectorXd& x, double mu1, double delta1,
                               RngStream& rng) {
    if (!(mu1 > 0.0)) throw std::invalid_argument("gaussian_first: mu1 must be > 0");
    if (delta1 <= 0.0) {
      throw std::invalid_argument(
          "gaussian_first: delta1 = 0 is unsatisfiable for a noisy oracle");
    }
    const int n = static_cast<int>(x.size());
    // P(||z|| > kappa_g mu1) = delta1 exactly when each coordinate has
    // standard deviation kappa_g mu1 / sqrt(chi2_quantile(n, 1 - delta1)).
    const double tau = kappa_g * mu1 / std::sqrt(chi_square_quantile(n, 1.0 - delta1));
    Eigen::VectorXd g = p->gradient(x);
    for (int i = 0; i < n; ++i) g(i) += tau * rng.next_gaussian();
    return g;
  };
  return oracle;
}

SecondOracle gaussian_second(ProblemPtr p, double kappa_H) {
  if (!(kappa_H > 0.0)) throw std::invalid_argument("gaussian_second: kappa_H must be > 0");
  SecondOracle oracle;
  oracle.kappa_H = kappa_H;
  oracle.sample = [p, kappa_H](const Eigen::VectorXd& x, double mu2, double delta2,
                               RngStream& rng) {
    if (!(mu2 > 0.0)) throw std::invalid_argument("gaussian_second: mu2 must be > 0");
    if (delta2 <= 0.0) {
      throw std::invalid_argument(
          "gaussian_second: delta2 = 0 is unsatisfiable for a noisy oracle");
    }
    const int n = static_cast<int>(x.size());
    // ||c (W + W^T)/2||_F^2 = c^2 * chi2 with n(n+1)/2 degrees of freedom, so
    // this c makes the Frobenius bound hold with probability exactly
    // 1 - delta2; the operator norm never exceeds the Frobenius norm.
    const int dof = n * (n + 1) / 2;
    const double c = kappa_H * mu2 / std::sqrt(chi_square_quantile(dof, 1.0 - delta2));
    Eigen::MatrixXd e(n, n);
    for (int i = 0; i < n; ++i) {
      e(i, i) = c * rng.next_gaussian();
      for (int j = i + 1; j < n; ++j) {
        const double w1 = rng.next_gaussian();
        const double w2 = rng.next_gaussian();
        e(i, j) = c * 0.5 * (w1 + w2);
        e(j, i) = e(i, j);
      }
    }
    return Eigen::MatrixXd(p->hessian(x) + e);
  };
  return oracle;
}

OracleSuite laplace_gaussian_suite(ProblemPtr p, double b, double kappa_g,
                                   double kappa_H) {
  OracleSuite suite;
  suite.exact = false;
  suite.zeroth = laplace_zeroth(p, b);
  suite.first = gaussian_first(p, kappa_g);
  suite.second = gaussian_second(p, kappa_H);
  return suite;
}

int bernstein_batch_size(double g_max, double mu, double delta, int n, int m) {
  if (!(mu > 0.0)) return m;
  if (delta <= 0.0) return m;
  const double raw =
      2.0 * (g_max / mu) * (g_max / mu) * (std::log(1.0 / delta) + std::log(2.0 * n));
  if (!(raw < static_cast<double>(m))) return m;
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

OracleSuite subsampled_suite(ProblemPtr p, double kappa_g, double kappa_H) {
  const int m = p->component_count();
  if (m < 2) throw std::invalid_argument("subsampled_suite needs a finite-sum problem with m >= 2");
  if (!(kappa_g > 0.0) || !(kappa_H > 0.0)) {
    throw std::invalid_argument("subsampled_suite: kappa_g and kappa_H must be > 0");
  }
  const int n = p->dimension();
  const double g_max = p->component_bound();
  const int batch0 = (m + 3) / 4;

  const auto value_batch = [p, m](const Eigen::VectorXd& x, int batch, RngStream& rng) {
    const auto idx = sample_without_replacement(m, batch, rng);
    double v = 0.0;
    for (int i : idx) v += p->component_value(i, x);
    return v / batch;
  };

  // Calibrate the zeroth-order declaration: empirical mean error for eps_f,
  // then the smallest tail offset a such that exp(lambda (a - t)) dominates
  // the held-out error frequencies on a grid of thresholds.
  std::vector<double> fit_errors, holdout_errors;
  {
    RngStream calib(0x5ca1ab1e5a2cULL);
    const int points = 8, draws = 400;
    double max_mean = 0.0;
    for (int j = 0; j < points; ++j) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) {
        const double u = calib.next_double();
        x(i) = p->box_lower()(i) + u * (p->box_upper()(i) - p->box_lower()(i));
      }
      const double truth = p->value(x);
      double mean = 0.0;
      for (int k = 0; k < draws; ++k) {
        const double err = std::fabs(value_batch(x, batch0, calib) - truth);
        mean += err;
        (k % 2 == 0 ? fit_errors : holdout_errors).push_back(err);
      }
      max_mean = std::max(max_mean, mean / draws);
    }
    if (max_mean <= 0.0) max_mean = 1e-12;  // exact subsamples (constant components)

    OracleSuite suite;
    suite.exact = false;
    suite.zeroth.eps_f = 1.5 * max_mean;
    suite.zeroth.lambda = 1.0 / suite.zeroth.eps_f;

    std::sort(fit_errors.begin(), fit_errors.end());
    double a_fit = 0.0;
    const int nf = static_cast<int>(fit_errors.size());
    for (int r = 0; r < nf; ++r) {
      // frequency of errors >= fit_errors[r] is (nf - r) / nf
      const double freq = static_cast<double>(nf - r) / nf;
      a_fit = std::max(a_fit, fit_errors[r] + std::log(freq) / suite.zeroth.lambda);
    }
    double a = 1.05 * a_fit + 0.01 * suite.zeroth.eps_f;
    // Widen until the bound dominates the held-out tail as well.
    std::sort(holdout_errors.begin(), holdout_errors.end());
    const int nh = static_cast<int>(holdout_errors.size());
    for (int r = 0; r < nh; ++r) {
      const double freq = static_cast<double>(nh - r) / nh;
      a = std::max(a, holdout_errors[r] + std::log(freq) / suite.zeroth.lambda);
    }
    suite.zeroth.a = a;
    suite.zeroth.sample = [value_batch, batch0](const Eigen::VectorXd& x, RngStream& rng) {
      return value_batch(x, batch0, rng);
    };

    suite.first.kappa_g = kappa_g;
    suite.first.sample = [p, m, n, g_max, kappa_g](const Eigen::VectorXd& x, double mu1,
                                                   double delta1, RngStream& rng) {
      const int batch = bernstein_batch_size(g_max, kappa_g * mu1, delta1, n, m);
      const auto idx = sample_without_replacement(m, batch, rng);
      Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
      for (int i : idx) g += p->component_gradient(i, x);
      return Eigen::VectorXd(g / batch);
    };

    suite.second.kappa_H = kappa_H;
    suite.second.sample = [p, m, n, g_max, kappa_H](const Eigen::VectorXd& x, double mu2,
                                                    double delta2, RngStream& rng) {
      const int batch = bernstein_batch_size(g_max, kappa_H * mu2, delta2, n, m);
      const auto idx = sample_without_replacement(m, batch, rng);
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
      for (int i : idx) h += p->component_hessian(i, x);
      return Eigen::MatrixXd(h / batch);
    };
    return suite;
  }
}

}  // namespace sarc
