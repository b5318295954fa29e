#include "treeising/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "treeising/chow_liu.hpp"
#include "treeising/equivalence.hpp"
#include "treeising/errors.hpp"
#include "treeising/io.hpp"
#include "treeising/learner.hpp"
#include "treeising/moments.hpp"
#include "treeising/sampling.hpp"

namespace treeising {

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::kChain:
      return "chain";
    case Topology::kStar:
      return "star";
    case Topology::kFile:
      return "file";
  }
  return "?";
}

AssumptionParams epsilon_fallback(double q_max, double mu_max,
                                  double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw structure_error("epsilon must lie in (0, 0.5)");
  return AssumptionParams(mu_max, epsilon, 1.0 - epsilon, q_max);
}

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<std::string> parse_string_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

TreeGraph make_tree(const ExperimentConfig& config) {
  switch (config.topology) {
    case Topology::kChain: {
      std::vector<std::pair<int, int>> edges;
      for (int v = 0; v + 1 < config.n; ++v) edges.emplace_back(v, v + 1);
      return TreeGraph(config.n, std::move(edges));
    }
    case Topology::kStar: {
      std::vector<std::pair<int, int>> edges;
      for (int v = 1; v < config.n; ++v) edges.emplace_back(0, v);
      return TreeGraph(config.n, std::move(edges));
    }
    case Topology::kFile:
      return read_model_file(config.tree_file).model.tree();
  }
  throw structure_error("unknown topology");
}

// Seed streams, all derived from the master seed.
constexpr std::uint64_t kMuMaxStream = 0x6d75;    // pre-sample model draw
constexpr std::uint64_t kTrialStride = 1000003;   // budgets x trials grid

}  // namespace

std::pair<IsingModel, NoiseSpec> draw_trial_model(
    const ExperimentConfig& config, int budget_index, int trial) {
  const TreeGraph tree = make_tree(config);
  const std::uint64_t trial_seed = derive_seed(
      config.seed, kTrialStride * std::uint64_t(budget_index + 1) + trial);
  std::mt19937_64 rng(derive_seed(trial_seed, 0));
  std::uniform_real_distribution<double> wdist(config.w_min, config.w_max);
  std::uniform_real_distribution<double> qdist(0.0, config.q_max);
  std::vector<double> weights;
  weights.reserve(tree.edges().size());
  for (std::size_t k = 0; k < tree.edges().size(); ++k)
    weights.push_back(wdist(rng));
  std::vector<double> biases(tree.n(), config.bias);
  std::vector<double> q(tree.n());
  for (int v = 0; v < tree.n(); ++v) q[v] = qdist(rng);
  return {IsingModel(tree, std::move(weights), std::move(biases)),
          NoiseSpec(std::move(q))};
}

AssumptionParams resolve_params(const ExperimentConfig& config) {
  double mu = config.mu_max;
  if (config.mu_max_empirical) {
    // One model draw, one large clean pre-sample; bound the means with a
    // small allowance for sampling error.
    const int pre_m = 100000;
    auto [model, noise] = draw_trial_model(config, 0, 0);
    (void)noise;
    SampleBatch pre =
        sample_clean(model, pre_m, derive_seed(config.seed, kMuMaxStream));
    MomentEstimate mom =
        empirical_moments(pre, MomentSource::kEmpiricalClean);
    double max_abs = 0.0;
    for (int v = 0; v < mom.n(); ++v)
      max_abs = std::max(max_abs, std::abs(mom.mean(v)));
    mu = std::min(0.99, max_abs + 0.01);
  }
  if (config.epsilon) return epsilon_fallback(config.q_max, mu, *config.epsilon);
  if (!config.rho_min || !config.rho_max)
    throw structure_error("config needs rho_min and rho_max, or epsilon");
  return AssumptionParams(mu, *config.rho_min, *config.rho_max, config.q_max);
}

ExperimentConfig read_config(std::istream& is) {
  ExperimentConfig c;
  c.budgets.clear();
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) continue;

    if (key == "topology") {
      if (value == "chain")
        c.topology = Topology::kChain;
      else if (value == "star")
        c.topology = Topology::kStar;
      else if (value == "file")
        c.topology = Topology::kFile;
      else
        throw parse_error("unknown topology " + value);
    } else if (key == "tree_file") {
      c.tree_file = value;
    } else if (key == "n") {
      c.n = std::stoi(value);
    } else if (key == "w_min") {
      c.w_min = std::stod(value);
    } else if (key == "w_max") {
      c.w_max = std::stod(value);
    } else if (key == "bias") {
      c.bias = std::stod(value);
    } else if (key == "q_max") {
      c.q_max = std::stod(value);
    } else if (key == "budgets") {
      c.budgets = parse_int_list(value);
    } else if (key == "trials") {
      c.trials = std::stoi(value);
    } else if (key == "seed") {
      c.seed = std::stoull(value);
    } else if (key == "algorithms") {
      c.algorithms = parse_string_list(value);
    } else if (key == "threads") {
      c.threads = std::stoi(value);
    } else if (key == "rho_min") {
      c.rho_min = std::stod(value);
    } else if (key == "rho_max") {
      c.rho_max = std::stod(value);
    } else if (key == "epsilon") {
      c.epsilon = std::stod(value);
    } else if (key == "mu_max") {
      if (value == "empirical")
        c.mu_max_empirical = true;
      else
        c.mu_max = std::stod(value);
    } else {
      throw parse_error("unknown config key " + key);
    }
  }
  if (c.budgets.empty()) throw parse_error("config needs budgets");
  if (!std::is_sorted(c.budgets.begin(), c.budgets.end()))
    throw parse_error("budgets must be ascending");
  if (c.trials < 1) throw parse_error("trials must be >= 1");
  if (c.n < 2) throw parse_error("n must be >= 2");
  return c;
}

ExperimentConfig read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw parse_error("cannot open " + path);
  return read_config(f);
}

namespace {

struct TrialOutcome {
  std::vector<char> success;     // per algorithm
  std::vector<double> wall_ms;   // per algorithm
};

TrialOutcome run_trial(const ExperimentConfig& config,
                       const AssumptionParams& params, int budget_index,
                       int trial) {
  const int m = config.budgets[budget_index];
  auto [model, noise] = draw_trial_model(config, budget_index, trial);
  const std::uint64_t trial_seed = derive_seed(
      config.seed, kTrialStride * std::uint64_t(budget_index + 1) + trial);
  SampleBatch clean = sample_clean(model, m, derive_seed(trial_seed, 1));
  SampleBatch noisy = apply_noise(clean, noise, derive_seed(trial_seed, 2));

  TrialOutcome out;
  out.success.assign(config.algorithms.size(), 0);
  out.wall_ms.assign(config.algorithms.size(), 0.0);
  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    const std::string& alg = config.algorithms[a];
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      if (alg == "ours") {
        MomentEstimate mom = empirical_moments(noisy);
        LearnedEdges learned = find_tree(mom, params);
        TreeGraph candidate(model.n(), learned.edges);
        ok = is_member(candidate, model.tree());
      } else if (alg == "chowliu") {
        TreeGraph candidate = chow_liu(noisy);
        ok = is_member(candidate, model.tree());
      } else {
        throw structure_error("unknown algorithm " + alg);
      }
    } catch (const learner_failure&) {
      ok = false;
    } catch (const degenerate_column_error&) {
      ok = false;
    }
    auto t1 = std::chrono::steady_clock::now();
    out.success[a] = ok ? 1 : 0;
    out.wall_ms[a] =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                bool zero_walltime) {
  const AssumptionParams params = resolve_params(config);
  const int budgets = static_cast<int>(config.budgets.size());
  const int trials = config.trials;
  const int total = budgets * trials;
  std::vector<TrialOutcome> outcomes(total);

  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, total));

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int idx = next.fetch_add(1);
      if (idx >= total) return;
      outcomes[idx] = run_trial(config, params, idx / trials, idx % trials);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ExperimentResult result{{}, params};
  for (int b = 0; b < budgets; ++b) {
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      CsvRow row;
      row.algorithm = config.algorithms[a];
      row.topology = topology_name(config.topology);
      row.n = config.n;
      row.m = config.budgets[b];
      row.trials = trials;
      double ms = 0.0;
      for (int t = 0; t < trials; ++t) {
        const TrialOutcome& o = outcomes[b * trials + t];
        row.successes += o.success[a];
        ms += o.wall_ms[a];
      }
      row.success_fraction = double(row.successes) / trials;
      row.mean_wall_ms = zero_walltime ? 0.0 : ms / trials;
      row.seed = config.seed;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
  os << "algorithm,topology,n,m,trials,successes,success_fraction,"
        "mean_wall_ms,seed\n";
  for (const auto& r : rows) {
    os << r.algorithm << ',' << r.topology << ',' << r.n << ',' << r.m << ','
       << r.trials << ',' << r.successes << ','
       << format_double(r.success_fraction) << ','
       << format_double(r.mean_wall_ms) << ',' << r.seed << '\n';
  }
}

}  // namespace treeising
