#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsopt/cost.hpp"
#include "nsopt/feedback.hpp"
#include "nsopt/generators.hpp"
#include "nsopt/policies.hpp"
#include "nsopt/rng.hpp"

namespace nsopt {

struct OracleResult {
    std::vector<std::pair<Eigen::VectorXd, double>> per_epoch_min;
    double total = 0.0;
};

// Per-epoch exact constrained minimizers and their summed cost.
OracleResult dynamic_oracle(const FunctionSequence& seq);

// Best single action in hindsight over epochs [first, last] (0-based,
// inclusive). Closed form for equal-curvature quadratics; golden-section
// search (argument tolerance 1e-10) otherwise; d = 1 for the search path.
std::pair<Eigen::VectorXd, double> static_oracle(const FunctionSequence& seq, int first, int last);
std::pair<Eigen::VectorXd, double> static_oracle(const FunctionSequence& seq);

// Per-batch regret split for restart-wrapped policies:
//   j1 = (cost incurred in batch) − (best fixed action's cost over the batch)
//   j2 = (best fixed action's cost) − (dynamic oracle's cost over the batch)
struct BatchDiagnostics {
    int first = 0, last = 0;  // epoch range, 0-based inclusive
    double j1 = 0.0, j2 = 0.0;
    double batch_variation = 0.0;  // full-mode variation inside the batch
};

struct TrajectoryRecord {
    std::vector<Eigen::VectorXd> actions;
    std::vector<double> expected_costs;      // noiseless f_t(X_t)
    std::vector<double> cumulative_regret;
    double final_regret = 0.0;
    double oracle_total = 0.0;
    bool fault = false;
    std::vector<BatchDiagnostics> batches;   // filled for restart wrappers
};

struct TrajectoryOptions {
    bool record_path = true;   // keep per-epoch actions/costs/regret
    bool diagnostics = false;  // compute the per-batch split
};

TrajectoryRecord run_trajectory(Policy& policy, const FunctionSequence& seq,
                                const NoiseModel& noise, RandomStream& noise_rng,
                                RandomStream& policy_rng,
                                const TrajectoryOptions& opts = {});

// Regret as a percentage of the dynamic oracle's total cost.
double relative_loss(double final_regret, double oracle_total);

struct RateFit {
    double alpha = 0.0;
    double c = 0.0;
    double r_squared = 0.0;
};

// Least squares of ln(regret) on ln(T); needs >= 3 distinct positive points.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

struct ExperimentConfig {
    std::string pattern = "shock";  // shock|decay|linear|adv-convex|adv-strong|
                                    // ogd-failure|oracle-gap
    std::string policy = "restarted-ogd";
    std::string feedback = "grad";  // cost|grad
    double sigma = 0.1;
    std::vector<int> horizons;
    int replications = 200;
    std::uint64_t base_seed = 1;
    double budget = 1.0;            // true V for the adversarial generators
    double tuning_budget = 0.0;     // V-hat given to the policy; 0 = use budget
    double noise_constant = 0.0;    // C-tilde override; 0 = 1/(2 sigma^2)
    double decay_rate = 10.0;
    double step_constant = 1.0;     // C for ogd-failure
    std::string ogd_failure_variant = "decaying_step";
    double nu = 0.0;                // 0 = derive from the sequence
    bool egs_fresh_psi = false;
    bool strong_batching = false;
    bool ogd_batch_constant = false;
    std::string out_path;           // empty = stdout
};

struct CellResult {
    int horizon = 0;
    double mean_regret = 0.0;
    double stderr_regret = 0.0;
    double mean_loss_pct = 0.0;
    int faults = 0;
};

struct ExperimentResult {
    std::vector<CellResult> cells;
    std::optional<RateFit> fit;  // present for multi-horizon sweeps
};

// Builds the environment for one replication from its env stream.
FunctionSequence generate_sequence(const ExperimentConfig& cfg, int horizon, RandomStream& env_rng);

// Runs the replication grid; fit is computed when the config has >= 3 horizons.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// CSV with the fixed column order
// pattern,policy,feedback,sigma,T,replications,mean_regret,stderr_regret,
// mean_loss_pct,alpha,c,r2 — fit columns are empty except on the fit row.
std::string to_csv(const ExperimentConfig& cfg, const ExperimentResult& result);

} // namespace nsopt
