#include "taskgrid/product.hpp"

#include <utility>

#include "taskgrid/errors.hpp"

namespace taskgrid {

bool is_terminal(const ProductState& ps) {
  return ps.grid.terminated || ps.tasks.all_terminal();
}

double potential(const DfaVector& tasks, int agent_index) {
  return is_trivial_accepting(tasks[agent_index]) ? 1.0 : 0.0;
}

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::invalid_config,
                "gamma must lie in [0, 1), got " + std::to_string(gamma));
  }
}

}  // namespace

ProductState product_reset(const Layout& layout, const DfaVector& tasks,
                           SplitMix64& rng) {
  if (tasks.size() != layout.num_agents()) {
    throw Error(ErrorCode::invalid_config,
                "task vector has " + std::to_string(tasks.size()) +
                    " entries for " + std::to_string(layout.num_agents()) +
                    " agents");
  }
  if (tasks.alphabet_size() != layout.alphabet_size()) {
    throw Error(ErrorCode::alphabet_mismatch,
                "task alphabet " + std::to_string(tasks.alphabet_size()) +
                    " does not match map alphabet " +
                    std::to_string(layout.alphabet_size()));
  }
  return ProductState{reset(layout, rng), tasks.minimized()};
}

ProductState product_reset(const Layout& layout, const DfaVector& tasks,
                           uint64_t seed) {
  SplitMix64 rng(seed);
  return product_reset(layout, tasks, rng);
}

StepOutcome product_step(const Layout& layout, const ProductState& ps,
                         const JointAction& joint_action, double gamma) {
  check_gamma(gamma);
  if (is_terminal(ps)) {
    throw Error(ErrorCode::episode_over, "step on a terminal product state");
  }

  GridState next_grid = step(layout, ps.grid, joint_action);
  DfaVector next_tasks = progress_vector(ps.tasks, labels(layout, next_grid));

  StepOutcome out;
  out.team_reward = next_tasks.all_accepting() ? 1.0 : 0.0;
  const int n = layout.num_agents();
  out.shaped_rewards.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.shaped_rewards.push_back(out.team_reward +
                                 gamma * potential(next_tasks, i) -
                                 potential(ps.tasks, i));
  }
  out.next = ProductState{std::move(next_grid), std::move(next_tasks)};
  out.done = is_terminal(out.next);
  return out;
}

RolloutResult rollout(const Layout& layout, const DfaVector& tasks,
                      const JointPolicy& policy, double gamma, uint64_t seed) {
  check_gamma(gamma);
  SplitMix64 rng(seed);

  RolloutResult result;
  result.initial = product_reset(layout, tasks, rng);
  result.shaped_returns.assign(static_cast<size_t>(layout.num_agents()), 0.0);

  ProductState current = result.initial;
  double discount = 1.0;
  while (!is_terminal(current)) {
    const JointAction action = policy(current, rng);
    StepOutcome outcome = product_step(layout, current, action, gamma);
    result.team_return += discount * outcome.team_reward;
    for (size_t i = 0; i < outcome.shaped_rewards.size(); ++i) {
      result.shaped_returns[i] += discount * outcome.shaped_rewards[i];
    }
    discount *= gamma;
    current = outcome.next;
    result.actions.push_back(action);
    result.steps.push_back(std::move(outcome));
  }
  result.episode_length = static_cast<int>(result.steps.size());
  result.success = current.tasks.all_accepting();
  return result;
}

}  // namespace taskgrid
