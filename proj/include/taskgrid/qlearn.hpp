#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "taskgrid/layout.hpp"
#include "taskgrid/product.hpp"

namespace taskgrid {

struct QLearnConfig {
  int episodes = 20000;
  double alpha = 0.2;
  double gamma = 0.99;
  /// Exploration decays linearly from start to end over the episodes.
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  /// Learn from the potential-shaped per-agent reward, or the raw team
  /// reward when false.
  bool shaped = true;
  uint64_t seed = 0;
};

/// Throws Error(invalid_config) on out-of-range fields.
void validate(const QLearnConfig& cfg);

/// Decentralized tabular action values: one table per agent, keyed by that
/// agent's own view plus the whole team's current task codes. Rows the
/// learner never visited read as small seeded pseudo-random values, the
/// same values a later run would see, without being materialized.
class QTable {
 public:
  QTable(int num_agents, uint64_t init_seed);

  int num_agents() const { return static_cast<int>(tables_.size()); }
  uint64_t init_seed() const { return init_seed_; }

  /// Value row for updates; inserts the seeded initial row when absent.
  std::array<double, kNumActions>& row(int agent, const std::string& key);
  /// Value row for action selection; never mutates.
  std::array<double, kNumActions> read(int agent, const std::string& key) const;
  bool contains(int agent, const std::string& key) const;
  size_t rows(int agent) const;

  const std::unordered_map<std::string, std::array<double, kNumActions>>&
  table(int agent) const {
    return tables_[static_cast<size_t>(agent)];
  }

 private:
  std::array<double, kNumActions> initial_row(int agent,
                                              const std::string& key) const;

  std::vector<std::unordered_map<std::string, std::array<double, kNumActions>>>
      tables_;
  uint64_t init_seed_ = 0;
};

/// What one agent conditions on: its ego view and the ordered task digests
/// of every agent. Stable across runs and platforms.
std::string observation_key(const Layout& layout, const ProductState& ps,
                            int agent_index);

/// Highest-valued action, lowest index on ties.
int greedy_action(const std::array<double, kNumActions>& values);

/// Independent epsilon-greedy learners sharing one environment stream.
QTable q_learn(const Layout& layout, const DfaVector& tasks,
               const QLearnConfig& cfg);

struct EvalResult {
  double success_rate = 0.0;
  double standard_error = 0.0;
  int episodes = 0;
};

/// Monte Carlo success of the greedy joint policy. Episode seeds derive
/// from `seed` by index, so the estimate is one number regardless of the
/// TASKGRID_WORKERS thread count.
EvalResult estimate_success(const Layout& layout, const DfaVector& tasks,
                            const QTable& table, int episodes, uint64_t seed);

/// Provenance pinned to a saved table; loading checks it against the
/// layout and tasks it is asked to act in.
struct QTableManifest {
  std::string layout_hash;
  std::vector<std::string> task_codes;  // canonical hex per agent
  double gamma = 0.0;
  bool shaped = true;
  int episodes = 0;
  uint64_t train_seed = 0;
};

void save_qtable(const QTable& table, const QTableManifest& manifest,
                 const std::filesystem::path& path);
QTable load_qtable(const std::filesystem::path& path,
                   QTableManifest* manifest_out = nullptr);

/// Throws Error(manifest_mismatch) unless the manifest was trained on this
/// exact map and task vector.
void require_manifest_match(const QTableManifest& manifest,
                            const Layout& layout, const DfaVector& tasks);

}  // namespace taskgrid
