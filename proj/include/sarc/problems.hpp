#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>

namespace sarc {

// Benchmark objective with analytic derivatives and certified constants.
// Lipschitz constants L (gradient) and L_H (Hessian) are upper bounds valid
// on the declared test box; lower_bound() is a global lower bound on the
// objective. Instances are immutable after construction.
class Problem {
 public:
  virtual ~Problem() = default;

  const std::string& name() const { return name_; }
  int dimension() const { return n_; }

  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const = 0;

  double lipschitz_gradient() const { return lip_grad_; }
  double lipschitz_hessian() const { return lip_hess_; }
  double lower_bound() const { return phi_star_; }

  const Eigen::VectorXd& box_lower() const { return box_lo_; }
  const Eigen::VectorXd& box_upper() const { return box_hi_; }
  bool in_box(const Eigen::VectorXd& x) const {
    return (x.array() >= box_lo_.array()).all() &&
           (x.array() <= box_hi_.array()).all();
  }
  const Eigen::VectorXd& default_start() const { return start_; }

  // Finite-sum structure: phi(x) = (1/m) sum_i phi_i(x). Zero components
  // means the problem has no finite-sum decomposition.
  virtual int component_count() const { return 0; }
  virtual double component_value(int i, const Eigen::VectorXd& x) const;
  virtual Eigen::VectorXd component_gradient(int i, const Eigen::VectorXd& x) const;
  virtual Eigen::MatrixXd component_hessian(int i, const Eigen::VectorXd& x) const;
  // Bound on component gradient norms and component Hessian operator norms
  // over the test box; used by subsampling batch-size rules.
  virtual double component_bound() const { return 0.0; }

 protected:
  Problem(std::string name, int n) : name_(std::move(name)), n_(n) {}

  std::string name_;
  int n_ = 0;
  double lip_grad_ = 0.0;
  double lip_hess_ = 0.0;
  double phi_star_ = 0.0;
  Eigen::VectorXd box_lo_, box_hi_, start_;
};

using ProblemPtr = std::shared_ptr<const Problem>;

// Families: quadratic, rosenbrock (n >= 2), nonconvex_sum_sin,
// logistic_finite_sum (n <= 10, m = 64 embedded samples).
ProblemPtr make_problem(const std::string& name, int n);

struct DerivativeReport {
  double max_gradient_error = 0.0;  // relative, scaled by max(1, |analytic|)
  double max_hessian_error = 0.0;
};

// Central-difference check of the analytic gradient and Hessian at x.
DerivativeReport check_derivatives(const Problem& p, const Eigen::VectorXd& x,
                                   double step);

}  // namespace sarc
