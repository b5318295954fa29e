#ifndef TREEISING_EXPERIMENT_HPP
#define TREEISING_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "treeising/model.hpp"

namespace treeising {

enum class Topology { kChain, kStar, kFile };

std::string topology_name(Topology t);

/// One sweep: per (budget m, trial) a fresh model is drawn (weights
/// uniform in [w_min, w_max], constant bias, per-node flip probability
/// uniform in [0, q_max]), sampled, corrupted, and handed to each
/// algorithm; success means the learned tree lies in the truth's
/// equivalence class. Everything derives from `seed`.
struct ExperimentConfig {
  Topology topology = Topology::kChain;
  std::string tree_file;  // used when topology == kFile
  int n = 15;
  double w_min = 0.7;
  double w_max = 1.2;
  double bias = 0.0;
  double q_max = 0.15;
  std::vector<int> budgets;
  int trials = 50;
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms = {"ours", "chowliu"};
  int threads = 0;  // 0 = hardware concurrency

  // Assumption bounds for the learner: either explicit rho bounds, or the
  // epsilon fallback rho_min = eps, rho_max = 1 - eps. mu_max may be fixed
  // or estimated from a large clean pre-sample of one model draw.
  std::optional<double> rho_min;
  std::optional<double> rho_max;
  std::optional<double> epsilon;
  double mu_max = 0.0;
  bool mu_max_empirical = false;
};

/// Aggregated result line; the CSV schema is
/// algorithm,topology,n,m,trials,successes,success_fraction,mean_wall_ms,seed
struct CsvRow {
  std::string algorithm;
  std::string topology;
  int n = 0;
  int m = 0;
  int trials = 0;
  int successes = 0;
  double success_fraction = 0.0;
  double mean_wall_ms = 0.0;
  std::uint64_t seed = 0;
};

struct ExperimentResult {
  std::vector<CsvRow> rows;
  AssumptionParams params;  // the bounds the learner actually used
};

/// rho_min = epsilon, rho_max = 1 - epsilon; for running without knowledge
/// of the correlation bounds.
AssumptionParams epsilon_fallback(double q_max, double mu_max, double epsilon);

/// Key=value config text (one pair per line, '#' comments).
ExperimentConfig read_config(std::istream& is);
ExperimentConfig read_config_file(const std::string& path);

/// Runs the sweep. Rows come out ordered by (budget, algorithm order in
/// config) regardless of thread scheduling. zero_walltime replaces the
/// measured mean_wall_ms with 0 so two runs are byte-identical.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                bool zero_walltime = false);

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows);

/// The model and noise used by trial `trial` of budget index `budget_index`
/// (exposed so tests can reproduce a trial exactly).
std::pair<IsingModel, NoiseSpec> draw_trial_model(const ExperimentConfig& config,
                                                  int budget_index, int trial);

/// The assumption bounds the sweep hands to the learner (resolving the
/// epsilon fallback and the empirical mu_max pre-sample).
AssumptionParams resolve_params(const ExperimentConfig& config);

}  // namespace treeising

#endif  // TREEISING_EXPERIMENT_HPP
