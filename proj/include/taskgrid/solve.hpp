#pragma once

#include <vector>

#include "taskgrid/enumerate.hpp"

namespace taskgrid {

/// Optimal state values for the discounted team objective, with the greedy
/// joint action per state (-1 on terminal states). Ties in the argmax fall
/// to the lowest joint-action index, so results are reproducible.
struct SolveResult {
  std::vector<double> values;
  std::vector<int> greedy;
  int sweeps = 0;
};

/// Synchronous two-buffer value iteration to sup-norm residual < tolerance.
/// Throws Error(invalid_config) for gamma outside [0, 1).
SolveResult value_iteration(const EnumeratedGame& game, double gamma,
                            double tolerance = 1e-10);

/// Optimal action values over joint actions. q[s] is empty on terminal
/// states.
struct QSolveResult {
  std::vector<std::vector<double>> q;
  std::vector<int> greedy;
  int sweeps = 0;
};

/// Q-iteration under the plain team reward.
QSolveResult q_iteration_team(const EnumeratedGame& game, double gamma,
                              double tolerance = 1e-10);

/// Q-iteration under one agent's potential-shaped reward
///   r + gamma * potential(next, agent) - potential(state, agent).
/// Shaping never changes which actions are optimal, which makes this worth
/// computing separately only to check exactly that.
QSolveResult q_iteration_shaped(const EnumeratedGame& game, int agent_index,
                                double gamma, double tolerance = 1e-10);

/// Walks a state-indexed deterministic policy from an enumerated initial
/// state under the map's real step cap. True iff every task entry is
/// trivially accepting at or before the cap.
bool greedy_success(const EnumeratedGame& game, const std::vector<int>& policy,
                    int initial_state);

/// Discounted team value of a fixed deterministic policy (iterative policy
/// evaluation, same tolerance contract as value_iteration).
std::vector<double> evaluate_policy(const EnumeratedGame& game,
                                    const std::vector<int>& policy,
                                    double gamma, double tolerance = 1e-10);

}  // namespace taskgrid
