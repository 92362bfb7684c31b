#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sarc/oracles.hpp"
#include "sarc/problems.hpp"

namespace sarc {

enum class StopMode { omniscient, budget_only };

struct SarcConfig {
  double gamma = 0.5;        // regularization decrease/increase factor, (0,1)
  double theta = 0.1;        // acceptance threshold on rho, (0,1)
  double delta1 = 0.05;      // gradient oracle failure probability, [0, 1/2)
  double delta2 = 0.05;      // Hessian oracle failure probability, [0, 1/2)
  double sigma_min = 1e-3;   // floor on the regularization parameter, > 0
  double eta = 0.1;          // subproblem termination tolerance, (0,1)
  double mu = 0.0;           // oracle accuracy knob, >= 0
  double eps_f_prime = 1e-8; // error-correction term in rho, > 0
  double sigma0 = 1.0;       // initial regularization, >= sigma_min
  double epsilon = 1e-4;     // target stationarity, > 0
  int max_iterations = 1000;
  std::uint64_t master_seed = 0;
  StopMode stop_mode = StopMode::omniscient;

  void validate() const;  // throws std::invalid_argument on any range breach
};

// Full telemetry of one iteration. Scalar fields are always populated; the
// iterate, oracle gradient/Hessian and step vectors are retained only for the
// first and last record of a trace to keep traces compact.
struct IterationRecord {
  int k = 0;
  double sigma = 0.0;
  std::optional<double> rho;  // empty when the decrease ratio is undefined
  bool successful = false;    // Theta_k
  double step_norm = 0.0;
  double model_dec = 0.0;
  double f_x = 0.0;       // zeroth-oracle value at x_k
  double f_xplus = 0.0;   // zeroth-oracle value at the trial point
  // Ground-truth telemetry; never consulted by the algorithm itself.
  bool true_iter = false;  // I_k
  bool model_flag = false; // J_k
  double e_k = 0.0;
  double e_kplus = 0.0;
  double grad_norm_xplus = 0.0;  // ||grad phi(x_k^+)||
  double z = 0.0;                // Z_k = phi(x_k) - phi*
  double phi_x = 0.0;
  double phi_xplus = 0.0;
  double grad_err_norm = 0.0;       // ||grad phi(x_k) - g_k||
  double hess_err_step_norm = 0.0;  // ||(hess phi(x_k) - H_k) s_k||
  bool in_box = true;  // x_k and x_k^+ inside the problem's certified box
  std::optional<Eigen::VectorXd> x, g, s;
  std::optional<Eigen::MatrixXd> H;
};

struct Trace {
  std::vector<IterationRecord> records;
  std::optional<int> t_eps;  // min{k : ||grad phi(x_k^+)|| <= eps} + 1
  Eigen::VectorXd final_iterate;
};

struct SarcState {
  Eigen::VectorXd x;
  double sigma = 0.0;
  int k = 0;
};

// One iteration of the method: oracle draws at the prescribed accuracy
// inputs (mu/sigma_k, delta1) and (sqrt(mu/sigma_k), delta2), trial step,
// corrected sufficient-decrease test, and the iterate/regularization update.
std::pair<SarcState, IterationRecord> sarc_step(const SarcState& state,
                                                const Problem& problem,
                                                const OracleSuite& oracles,
                                                const SarcConfig& cfg);

// Iterates sarc_step from (x0, sigma0, 0). In omniscient mode the loop stops
// at the first trial point with true gradient norm below cfg.epsilon; in
// budget_only mode it runs out the iteration budget and the stopping time is
// recovered from telemetry afterwards.
Trace run(const Problem& problem, const OracleSuite& oracles, const SarcConfig& cfg);
Trace run(const Problem& problem, const OracleSuite& oracles, const SarcConfig& cfg,
          const Eigen::VectorXd& x0);

// Recomputes (I_k, J_k) from the stored ground-truth error norms.
std::pair<bool, bool> classify_iteration(const IterationRecord& rec,
                                         const SarcConfig& cfg, double kappa_g,
                                         double kappa_H);

struct LemmaViolation {
  int k = 0;
  char check = '?';  // 'a'..'e'
};

// Per-iteration runtime assertions of the method's guaranteed behavior:
//  (a) model decrease at least sigma ||s||^3 / 6;
//  (b) true iterations with sigma >= sigma_bar succeed or take a tiny step;
//  (c) true iterations bound the step from below by the trial gradient norm;
//  (d) true successful iterations make the guaranteed progress;
//  (e) the per-iteration damage is bounded by the value-oracle errors.
// Checks requiring Lipschitz constants are skipped when an iterate leaves the
// problem's certified box. Returns the violating (k, check) pairs.
std::vector<LemmaViolation> assert_lemmas(const Trace& trace, const Problem& problem,
                                          const SarcConfig& cfg, double sigma_bar);

// CSV serialization: one row per iteration, floats at 17 significant digits.
void write_trace_csv(const Trace& trace, std::ostream& out);
std::string trace_csv_header();
Trace read_trace_csv(std::istream& in);

}  // namespace sarc
