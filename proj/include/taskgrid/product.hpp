#pragma once

#include <functional>
#include <vector>

#include "taskgrid/dfa.hpp"
#include "taskgrid/layout.hpp"
#include "taskgrid/rng.hpp"
#include "taskgrid/token_env.hpp"

namespace taskgrid {

/// Joint state of the cascade: grid configuration plus the current
/// (minimized) task automaton of every agent.
struct ProductState {
  GridState grid;
  DfaVector tasks;
  bool operator==(const ProductState&) const = default;
};

/// Terminal iff the grid timed out or every task entry is trivially
/// accepting or trivially rejecting.
bool is_terminal(const ProductState& ps);

/// Completion potential of agent i: 1 iff its entry is trivially accepting.
double potential(const DfaVector& tasks, int agent_index);

struct StepOutcome {
  ProductState next;
  /// 1 exactly when this step made every entry trivially accepting.
  double team_reward = 0.0;
  /// team_reward + gamma * potential(next) - potential(previous), per agent.
  std::vector<double> shaped_rewards;
  bool done = false;
};

/// Validates the task vector against the map (entry count = agents,
/// alphabets equal), minimizes the entries, spawns the grid. The spawn
/// state's own labels are not consumed; progression begins with the first
/// step's resulting state.
ProductState product_reset(const Layout& layout, const DfaVector& tasks,
                           SplitMix64& rng);
ProductState product_reset(const Layout& layout, const DfaVector& tasks,
                           uint64_t seed);

/// One joint step: move the grid, label the resulting state, progress the
/// tasks element-wise on those labels, then score. Throws
/// Error(episode_over) on terminal input and Error(invalid_config) on a
/// gamma outside [0, 1).
StepOutcome product_step(const Layout& layout, const ProductState& ps,
                         const JointAction& joint_action, double gamma);

/// Decides the joint action for a product state. The generator is for
/// stochastic policies and stays untouched by deterministic ones.
using JointPolicy = std::function<JointAction(const ProductState&, SplitMix64&)>;

struct RolloutResult {
  ProductState initial;
  std::vector<JointAction> actions;
  std::vector<StepOutcome> steps;
  double team_return = 0.0;               // sum of gamma^t * team_reward
  std::vector<double> shaped_returns;     // per-agent discounted shaped sums
  bool success = false;                   // episode ended with all tasks accepting
  int episode_length = 0;
};

/// Runs one full episode. Reset and policy draws consume one generator
/// stream seeded from `seed`, so (layout, tasks, policy, gamma, seed)
/// determines the episode completely for deterministic policies.
RolloutResult rollout(const Layout& layout, const DfaVector& tasks,
                      const JointPolicy& policy, double gamma, uint64_t seed);

}  // namespace taskgrid
