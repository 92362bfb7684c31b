#include "sarc/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace sarc {

namespace {

// ---------------------------------------------------------------------------
// quadratic: phi(x) = ||x||^2 / 2. Globally L = 1, L_H = 0, phi* = 0.
// ---------------------------------------------------------------------------
class QuadraticProblem final : public Problem {
 public:
  explicit QuadraticProblem(int n) : Problem("quadratic", n) {
    lip_grad_ = 1.0;
    lip_hess_ = 0.0;
    phi_star_ = 0.0;
    box_lo_ = Eigen::VectorXd::Constant(n, -10.0);
    box_hi_ = Eigen::VectorXd::Constant(n, 10.0);
    start_ = Eigen::VectorXd::Zero(n);
    start_(0) = 1.0;
  }

  double value(const Eigen::VectorXd& x) const override { return 0.5 * x.squaredNorm(); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override { return x; }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    return Eigen::MatrixXd::Identity(x.size(), x.size());
  }
};

// ---------------------------------------------------------------------------
// rosenbrock: sum of 100(x_{i+1}-x_i^2)^2 + (1-x_i)^2, n >= 2. phi* = 0.
// Constants certified on the box [-3,3]^n via row-sum bounds of the
// (tridiagonal) Hessian and of Hessian differences.
// ---------------------------------------------------------------------------
class RosenbrockProblem final : public Problem {
 public:
  explicit RosenbrockProblem(int n) : Problem("rosenbrock", n) {
    lip_grad_ = 15000.0;
    lip_hess_ = 8500.0;
    phi_star_ = 0.0;
    box_lo_ = Eigen::VectorXd::Constant(n, -3.0);
    box_hi_ = Eigen::VectorXd::Constant(n, 3.0);
    start_ = Eigen::VectorXd::Ones(n);
    for (int i = 0; i < n; i += 2) start_(i) = -1.2;
  }

  double value(const Eigen::VectorXd& x) const override {
    double v = 0.0;
    for (int i = 0; i + 1 < n_; ++i) {
      const double a = x(i + 1) - x(i) * x(i);
      const double b = 1.0 - x(i);
      v += 100.0 * a * a + b * b;
    }
    return v;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i + 1 < n_; ++i) {
      const double a = x(i + 1) - x(i) * x(i);
      g(i) += -400.0 * x(i) * a - 2.0 * (1.0 - x(i));
      g(i + 1) += 200.0 * a;
    }
    return g;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i + 1 < n_; ++i) {
      h(i, i) += 1200.0 * x(i) * x(i) - 400.0 * x(i + 1) + 2.0;
      h(i + 1, i + 1) += 200.0;
      h(i, i + 1) += -400.0 * x(i);
      h(i + 1, i) += -400.0 * x(i);
    }
    return h;
  }
};

// ---------------------------------------------------------------------------
// nonconvex_sum_sin: phi(x) = ||x||^2/2 + sum_i sin(x_i).
// Globally L = 2, L_H = 1; phi* = n * min_t (t^2/2 + sin t).
// ---------------------------------------------------------------------------
class SumSinProblem final : public Problem {
 public:
  explicit SumSinProblem(int n) : Problem("nonconvex_sum_sin", n) {
    lip_grad_ = 2.0;
    lip_hess_ = 1.0;
    // min of t^2/2 + sin(t), attained at the root of t + cos(t).
    phi_star_ = n * -0.40048861211337894;
    box_lo_ = Eigen::VectorXd::Constant(n, -6.0);
    box_hi_ = Eigen::VectorXd::Constant(n, 6.0);
    start_ = Eigen::VectorXd::Constant(n, 2.0);
  }

  double value(const Eigen::VectorXd& x) const override {
    return 0.5 * x.squaredNorm() + x.array().sin().sum();
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    return x + x.array().cos().matrix();
  }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) h(i, i) = 1.0 - std::sin(x(i));
    return h;
  }
};

// ---------------------------------------------------------------------------
// logistic_finite_sum: phi(x) = (1/m) sum_i log(1 + exp(-y_i a_i^T x)),
// m = 64 fixed samples with up to 10 features embedded below. phi* = 0.
// L and L_H follow from |s'| <= 1/4 and |s''| <= 1/(6 sqrt 3) for the
// sigmoid s, so they hold globally, not just on the box.
// ---------------------------------------------------------------------------
constexpr int kLogisticSamples = 64;
constexpr int kLogisticFeatures = 10;

const double kLogisticData[kLogisticSamples][kLogisticFeatures] = {
    {0.387186, -0.042954, 0.373429, 0.161820, -0.550916, -1.182228, 0.954056, -0.119129, -1.292619, -0.967462},
    {0.119574, 0.463384, -0.241699, 1.489679, -0.089538, -0.987438, 0.185762, -0.901542, 0.187472, 1.052457},
    {0.101220, 0.952396, -0.300271, 0.727889, -0.323886, 1.301617, 0.665605, -0.201215, -0.312979, 0.356592},
    {0.713022, -0.939753, -0.081980, -0.982474, -0.384724, 1.043498, 0.273554, 0.711351, -0.512014, -0.421505},
    {1.133773, -0.472189, 0.464861, 0.968157, -0.716518, 0.912442, 1.599289, 0.499670, 1.084128, -0.763042},
    {0.285151, 0.685415, 0.067578, -0.215707, 0.033712, 0.013189, -0.124901, 0.447066, 0.779728, -0.825107},
    {1.157274, -0.888060, -0.192112, 0.532687, 0.324969, 0.901033, 1.072327, 0.518171, -0.263307, 2.168144},
    {-0.025464, 0.974674, 0.255824, 0.598647, -0.940318, -0.190016, 1.231381, -0.541676, -0.311616, 0.939255},
    {-0.050434, 0.043783, -0.090945, 0.668250, 0.618141, 0.814055, 0.415086, 0.104898, -0.196674, -0.187721},
    {1.199856, -0.285358, 0.188094, -0.390123, -0.509814, -0.194537, -0.590372, 0.918491, -0.335760, 0.888803},
    {0.004302, 0.581472, 0.282250, -0.729908, 0.259332, -1.732985, -0.688798, -0.366480, 0.362415, -0.154087},
    {1.149182, 0.489500, 1.389616, 0.574813, -0.264138, 0.761092, -1.443702, -0.844762, -0.877440, 0.683612},
    {0.965148, 0.261339, 1.647971, -0.645250, -1.555563, -0.399567, 1.063653, 2.408878, -0.396171, -0.071932},
    {0.152676, 0.667102, 0.375813, 1.087501, -0.171035, 0.323382, 1.845282, 0.031283, -0.566432, 0.591163},
    {-1.024994, 0.463515, 0.455774, 0.662791, 1.611115, 0.949611, -0.911831, -0.681218, -0.625291, 0.213006},
    {-0.449252, 0.139222, 0.917152, -0.046714, -0.420226, 0.294840, 1.428415, 0.929137, -1.268243, -1.240327},
    {-1.015617, -1.074433, -0.527910, -0.411352, 0.432357, -0.146797, 1.393261, -0.409706, 0.136296, -1.832191},
    {-0.962043, 1.614409, 0.678699, -0.426445, 0.141423, -0.782144, -0.941118, -0.776227, -0.111744, 0.843581},
    {-0.876237, -0.061329, -0.854276, 0.248104, 0.972168, -1.615867, 0.355687, -0.377842, -1.349193, -1.230623},
    {0.533074, 1.591025, -1.147039, -1.396917, -0.249891, 0.131449, -0.979593, 0.395922, -1.069699, -0.040401},
    {-0.043726, -1.225242, 0.561539, -0.232862, 0.743260, 0.378609, 0.134568, -0.958794, 0.486637, -0.217539},
    {-0.124050, -0.167749, 1.129845, 1.705163, 1.067464, 0.316839, 0.316981, 1.131322, -1.222115, -1.810587},
    {0.176037, 0.050714, -1.084382, 0.454657, 0.384708, -0.591580, -0.588951, -2.820548, -0.302020, 2.232179},
    {-0.847327, 0.874783, -0.879190, 1.336566, 0.953505, -0.542493, -0.307671, 0.302540, -0.512761, -0.698109},
    {0.092053, 1.248224, 0.295900, 0.546593, 0.198050, 0.165890, -0.412233, -0.459282, -0.843286, -1.178911},
    {0.570416, -1.292347, -0.836625, 0.647006, 1.611593, 1.406147, 0.095533, -0.117063, -0.041883, 0.025161},
    {-0.383490, -0.690624, 0.496594, 0.437907, 1.004667, -0.287777, -0.518196, -0.494398, 0.671016, 0.570026},
    {1.029139, 0.637911, 0.509716, 1.025712, -0.093477, -0.745093, 0.291224, -0.258436, -0.226291, -1.037049},
    {1.330610, 1.189916, -0.419122, 0.181169, 0.774722, 0.588098, 1.181969, -0.174173, -0.630189, 0.105490},
    {0.724566, -1.148618, 0.004201, 0.713927, -1.181881, -0.723450, 0.400527, 0.208709, -0.867011, 0.102298},
    {0.413196, -0.370293, -1.046495, -0.718951, 0.347612, -0.807151, -1.306967, -1.626920, -0.788169, 1.817009},
    {-0.930471, 0.093618, -0.288835, 1.104978, 0.598375, -0.069151, 0.266553, 0.346932, 0.373808, 0.224409},
    {-0.328004, -0.550930, -0.167495, -0.543472, -0.202198, 0.063315, -0.586068, 1.340546, 0.310341, -1.143298},
    {-0.912756, 0.740020, 1.419559, 0.389943, 0.424056, 0.575474, 0.525088, -0.104698, 0.279358, -0.685562},
    {-0.455400, -0.900206, -0.028384, -0.013737, 0.465994, 0.175023, -0.084739, 0.943732, 0.140738, -1.459346},
    {-0.367244, -0.212951, -0.133695, -0.240998, 0.766205, -1.012300, -0.282672, 0.807917, 1.686396, 1.068230},
    {-0.159349, -0.462236, 0.786794, -1.524179, 0.215382, 0.608159, 0.539013, 0.158772, -1.500130, -1.068375},
    {-0.094135, -0.314587, 0.261649, 1.484672, 0.868873, -0.991218, 0.317396, -0.376371, -0.108062, 0.692256},
    {0.600775, -0.072587, 1.467283, -0.404840, 0.265380, 0.480961, 1.197859, -0.441923, -1.251325, -0.173708},
    {0.336643, 0.340553, -1.097941, -0.398598, -0.853902, -1.042457, -1.273712, -0.449358, 0.660226, 1.057912},
    {-1.785662, -0.717623, 0.285875, 0.256171, 2.098978, -0.260628, -0.145362, -1.191201, 1.020247, -0.623266},
    {0.141928, -0.463513, -0.470765, -1.220445, 0.465713, 0.991922, 0.997798, 0.701892, -0.442707, -0.345162},
    {-0.170213, 0.026167, 0.083064, -0.816485, 0.034479, 0.073229, -1.472109, 0.151093, 0.637079, 0.252013},
    {0.047272, 1.370600, -0.504140, -1.449503, -0.840675, -1.107679, -0.254292, -0.550044, 0.219083, 0.745158},
    {-0.722251, 0.008335, -0.159475, 0.317281, 0.035459, -1.109319, 0.557003, -0.201509, 0.237018, 0.111919},
    {0.599627, 0.964988, 0.432116, 0.579535, 0.787484, -0.268278, -0.519963, 1.106351, -1.047339, -1.568657},
    {-0.715886, 0.863985, -0.167360, 0.955312, -0.816169, 0.568794, -1.149534, -0.466034, 0.617341, -0.465400},
    {1.193855, 1.079000, 0.167617, 0.587161, 0.653390, -0.462896, -0.963326, -0.522484, 0.890782, -0.341857},
    {-0.287832, 0.310620, 0.606151, -1.115644, -0.569825, -1.086326, -0.300915, -0.767456, 1.269650, 0.719106},
    {0.996443, 0.100687, 1.159698, -0.100360, -0.797284, 0.463111, -0.874993, -0.119161, -1.160177, -0.252251},
    {0.973376, -0.404917, 1.063115, -0.720196, -0.126542, -1.014928, -0.739800, -0.718283, -0.528747, 0.232949},
    {0.736881, -1.097211, -0.974891, 1.021381, 0.667495, -0.254978, -1.220663, 0.582149, 0.546075, -0.707814},
    {-0.932476, -0.515642, -0.782536, -0.685810, -0.130823, 0.325455, -0.990371, 0.182432, 0.839690, -0.087225},
    {0.666017, 0.501830, -0.236238, -0.978564, 0.616197, -0.980054, -0.248977, 0.010548, -0.573245, 0.967077},
    {-0.124217, -0.628997, -1.142385, 0.723424, 0.500973, 0.695161, -0.555719, 0.136351, -0.853064, 0.779771},
    {-1.318715, 0.048581, -1.594928, 0.243728, -0.040357, 0.810307, -0.608960, -0.236986, -0.690718, 1.382810},
    {-0.956212, 0.934296, 0.306537, -0.537481, 1.913418, -0.254976, 0.137460, 0.162651, -0.944039, 0.881591},
    {-0.329776, -2.111748, 1.154906, 1.038475, 0.533997, 0.252122, 0.262822, -0.789327, 1.850069, -1.855001},
    {0.644269, 1.032578, 0.926439, 0.738402, -0.400758, -0.299509, -1.582182, -0.044292, 0.605133, -0.424454},
    {0.845256, 0.804309, -1.181412, -0.206562, -0.060466, 0.165087, -1.671322, 1.188795, 0.255467, -0.746584},
    {-0.690303, -0.209133, 0.591075, -1.259877, -0.265148, -1.110339, -0.679010, 0.220599, -0.455802, -0.117146},
    {0.397250, 0.731097, -0.328519, -0.186773, 0.241628, -0.363606, -0.559317, -0.575381, 0.656210, -0.016745},
    {0.831376, 1.892465, 0.511209, 0.872902, -0.339516, 1.039922, 0.147184, -0.159607, -0.158696, -0.228781},
    {-0.456581, 1.192648, 1.514913, 0.752820, -0.724966, -1.820741, -1.146137, 0.653374, -1.667311, 0.715775},
};

const int kLogisticLabels[kLogisticSamples] = {
    1, 1, 1, -1, -1, -1, -1, 1, 1, -1, 1, 1, -1, 1, -1, 1, 1, 1, 1, 1, 1, -1,
    1, 1, 1, -1, -1, 1, 1, 1, 1, -1, -1, -1, -1, -1, 1, 1, 1, 1, -1, -1, -1,
    1, 1, -1, -1, -1, -1, 1, -1, -1, -1, 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, 1};

// log(1 + exp(t)), overflow-safe.
double log1pexp(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

class LogisticProblem final : public Problem {
 public:
  explicit LogisticProblem(int n) : Problem("logistic_finite_sum", n) {
    rows_.resize(kLogisticSamples, Eigen::VectorXd(n));
    double sum_sq = 0.0, sum_cube = 0.0, g_max = 0.0;
    for (int i = 0; i < kLogisticSamples; ++i) {
      for (int j = 0; j < n; ++j) rows_[i](j) = kLogisticData[i][j];
      const double norm = rows_[i].norm();
      sum_sq += norm * norm;
      sum_cube += norm * norm * norm;
      g_max = std::max(g_max, std::max(norm, 0.25 * norm * norm));
    }
    lip_grad_ = 0.25 * sum_sq / kLogisticSamples;
    lip_hess_ = sum_cube / kLogisticSamples / (6.0 * std::sqrt(3.0));
    phi_star_ = 0.0;
    component_bound_ = g_max;
    box_lo_ = Eigen::VectorXd::Constant(n, -2.0);
    box_hi_ = Eigen::VectorXd::Constant(n, 2.0);
    start_ = Eigen::VectorXd::Zero(n);
  }

  double value(const Eigen::VectorXd& x) const override {
    double v = 0.0;
    for (int i = 0; i < kLogisticSamples; ++i) v += component_value(i, x);
    return v / kLogisticSamples;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < kLogisticSamples; ++i) g += component_gradient(i, x);
    return g / kLogisticSamples;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < kLogisticSamples; ++i) h += component_hessian(i, x);
    return h / kLogisticSamples;
  }

  int component_count() const override { return kLogisticSamples; }

  double component_value(int i, const Eigen::VectorXd& x) const override {
    return log1pexp(-kLogisticLabels[i] * rows_[i].dot(x));
  }

  Eigen::VectorXd component_gradient(int i, const Eigen::VectorXd& x) const override {
    const double y = kLogisticLabels[i];
    const double s = sigmoid(-y * rows_[i].dot(x));
    return (-y * s) * rows_[i];
  }

  Eigen::MatrixXd component_hessian(int i, const Eigen::VectorXd& x) const override {
    const double s = sigmoid(-kLogisticLabels[i] * rows_[i].dot(x));
    return (s * (1.0 - s)) * (rows_[i] * rows_[i].transpose());
  }

  double component_bound() const override { return component_bound_; }

 private:
  std::vector<Eigen::VectorXd> rows_;
  double component_bound_ = 0.0;
};

}  // namespace

double Problem::component_value(int, const Eigen::VectorXd&) const {
  throw std::logic_error(name_ + " has no finite-sum structure");
}
Eigen::VectorXd Problem::component_gradient(int, const Eigen::VectorXd&) const {
  throw std::logic_error(name_ + " has no finite-sum structure");
}
Eigen::MatrixXd Problem::component_hessian(int, const Eigen::VectorXd&) const {
  throw std::logic_error(name_ + " has no finite-sum structure");
}

ProblemPtr make_problem(const std::string& name, int n) {
  if (n < 1) throw std::invalid_argument("make_problem: dimension must be positive");
  if (name == "quadratic") return std::make_shared<QuadraticProblem>(n);
  if (name == "rosenbrock") {
    if (n < 2) throw std::invalid_argument("rosenbrock requires n >= 2");
    return std::make_shared<RosenbrockProblem>(n);
  }
  if (name == "nonconvex_sum_sin") return std::make_shared<SumSinProblem>(n);
  if (name == "logistic_finite_sum") {
    if (n > kLogisticFeatures) {
      throw std::invalid_argument("logistic_finite_sum supports n <= 10");
    }
    return std::make_shared<LogisticProblem>(n);
  }
  throw std::invalid_argument("unknown problem family: " + name);
}

DerivativeReport check_derivatives(const Problem& p, const Eigen::VectorXd& x,
                                   double step) {
  if (!(step > 0.0)) throw std::invalid_argument("check_derivatives: step must be > 0");
  const int n = p.dimension();
  const Eigen::VectorXd g = p.gradient(x);
  const Eigen::MatrixXd h = p.hessian(x);

  DerivativeReport report;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp(j) += step;
    xm(j) -= step;
    const double vp = p.value(xp);
    const double vm = p.value(xm);
    if (!std::isfinite(vp) || !std::isfinite(vm)) {
      throw std::runtime_error("check_derivatives: non-finite value at probe point");
    }
    const double fd = (vp - vm) / (2.0 * step);
    const double err = std::fabs(fd - g(j)) / std::max(1.0, std::fabs(g(j)));
    report.max_gradient_error = std::max(report.max_gradient_error, err);

    const Eigen::VectorXd col = (p.gradient(xp) - p.gradient(xm)) / (2.0 * step);
    for (int i = 0; i < n; ++i) {
      const double herr = std::fabs(col(i) - h(i, j)) / std::max(1.0, std::fabs(h(i, j)));
      report.max_hessian_error = std::max(report.max_hessian_error, herr);
    }
  }
  return report;
}

}  // namespace sarc
