#include "taskgrid/solve.hpp"

#include <cmath>

#include "taskgrid/errors.hpp"

namespace taskgrid {

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::invalid_config,
                "gamma must lie in [0, 1), got " + std::to_string(gamma));
  }
}

/// One-step lookahead value of (s, a) given state values v.
double backup(const EnumeratedGame& game, const std::vector<double>& v,
              int s, int a, double gamma) {
  const int next = game.next_state[static_cast<size_t>(s)][static_cast<size_t>(a)];
  const double cont =
      game.terminal[static_cast<size_t>(next)] ? 0.0 : v[static_cast<size_t>(next)];
  return game.team_reward(s, a) + gamma * cont;
}

}  // namespace

SolveResult value_iteration(const EnumeratedGame& game, double gamma,
                            double tolerance) {
  check_gamma(gamma);
  const size_t n = game.states.size();
  SolveResult result;
  result.values.assign(n, 0.0);
  result.greedy.assign(n, -1);
  std::vector<double> next_values(n, 0.0);

  double residual = tolerance + 1.0;
  while (residual >= tolerance) {
    residual = 0.0;
    for (size_t s = 0; s < n; ++s) {
      if (game.terminal[s]) {
        next_values[s] = 0.0;
        continue;
      }
      double best = -1.0;
      for (int a = 0; a < game.num_joint_actions; ++a) {
        const double q = backup(game, result.values, static_cast<int>(s), a, gamma);
        if (q > best) best = q;
      }
      next_values[s] = best;
      const double delta = std::fabs(best - result.values[s]);
      if (delta > residual) residual = delta;
    }
    result.values.swap(next_values);
    ++result.sweeps;
  }

  for (size_t s = 0; s < n; ++s) {
    if (game.terminal[s]) continue;
    int best_action = 0;
    double best = backup(game, result.values, static_cast<int>(s), 0, gamma);
    for (int a = 1; a < game.num_joint_actions; ++a) {
      const double q = backup(game, result.values, static_cast<int>(s), a, gamma);
      if (q > best) {
        best = q;
        best_action = a;
      }
    }
    result.greedy[s] = best_action;
  }
  return result;
}

namespace {

QSolveResult q_iteration_impl(const EnumeratedGame& game, double gamma,
                              double tolerance, int shaped_agent) {
  check_gamma(gamma);
  const size_t n = game.states.size();
  QSolveResult result;
  result.q.resize(n);
  result.greedy.assign(n, -1);
  for (size_t s = 0; s < n; ++s) {
    if (!game.terminal[s]) {
      result.q[s].assign(static_cast<size_t>(game.num_joint_actions), 0.0);
    }
  }
  std::vector<std::vector<double>> next_q = result.q;

  auto reward = [&](int s, int a, int next) {
    double r = game.team_reward(s, a);
    if (shaped_agent >= 0) {
      r += gamma * game.potential_of(next, shaped_agent) -
           game.potential_of(s, shaped_agent);
    }
    return r;
  };
  auto max_q = [&](const std::vector<double>& row) {
    double best = row[0];
    for (const double q : row) {
      if (q > best) best = q;
    }
    return best;
  };

  double residual = tolerance + 1.0;
  while (residual >= tolerance) {
    residual = 0.0;
    for (size_t s = 0; s < n; ++s) {
      if (game.terminal[s]) continue;
      for (int a = 0; a < game.num_joint_actions; ++a) {
        const int next = game.next_state[s][static_cast<size_t>(a)];
        const double cont = game.terminal[static_cast<size_t>(next)]
                                ? 0.0
                                : max_q(result.q[static_cast<size_t>(next)]);
        const double q = reward(static_cast<int>(s), a, next) + gamma * cont;
        next_q[s][static_cast<size_t>(a)] = q;
        const double delta = std::fabs(q - result.q[s][static_cast<size_t>(a)]);
        if (delta > residual) residual = delta;
      }
    }
    result.q.swap(next_q);
    ++result.sweeps;
  }

  for (size_t s = 0; s < n; ++s) {
    if (game.terminal[s]) continue;
    int best_action = 0;
    for (int a = 1; a < game.num_joint_actions; ++a) {
      if (result.q[s][static_cast<size_t>(a)] >
          result.q[s][static_cast<size_t>(best_action)]) {
        best_action = a;
      }
    }
    result.greedy[s] = best_action;
  }
  return result;
}

}  // namespace

QSolveResult q_iteration_team(const EnumeratedGame& game, double gamma,
                              double tolerance) {
  return q_iteration_impl(game, gamma, tolerance, -1);
}

QSolveResult q_iteration_shaped(const EnumeratedGame& game, int agent_index,
                                double gamma, double tolerance) {
  if (agent_index < 0 || agent_index >= game.num_agents) {
    throw Error(ErrorCode::invalid_config, "agent index out of range");
  }
  return q_iteration_impl(game, gamma, tolerance, agent_index);
}

bool greedy_success(const EnumeratedGame& game, const std::vector<int>& policy,
                    int initial_state) {
  int current = initial_state;
  if (game.all_accepting(current)) return true;
  for (int t = 0; t < game.layout.max_steps(); ++t) {
    if (game.terminal[static_cast<size_t>(current)]) return false;
    const int action = policy[static_cast<size_t>(current)];
    current = game.next_state[static_cast<size_t>(current)][static_cast<size_t>(action)];
    if (game.all_accepting(current)) return true;
  }
  return false;
}

std::vector<double> evaluate_policy(const EnumeratedGame& game,
                                    const std::vector<int>& policy,
                                    double gamma, double tolerance) {
  check_gamma(gamma);
  const size_t n = game.states.size();
  std::vector<double> values(n, 0.0);
  std::vector<double> next_values(n, 0.0);
  double residual = tolerance + 1.0;
  while (residual >= tolerance) {
    residual = 0.0;
    for (size_t s = 0; s < n; ++s) {
      if (game.terminal[s]) {
        next_values[s] = 0.0;
        continue;
      }
      const int a = policy[s];
      next_values[s] = backup(game, values, static_cast<int>(s), a, gamma);
      const double delta = std::fabs(next_values[s] - values[s]);
      if (delta > residual) residual = delta;
    }
    values.swap(next_values);
  }
  return values;
}

}  // namespace taskgrid
