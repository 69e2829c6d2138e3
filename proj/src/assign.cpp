#include "taskgrid/assign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "taskgrid/encoder.hpp"
#include "taskgrid/enumerate.hpp"
#include "taskgrid/errors.hpp"
#include "taskgrid/product.hpp"
#include "taskgrid/solve.hpp"

namespace taskgrid {

namespace {

DfaVector permuted_tasks(const DfaVector& tasks,
                         const std::vector<int>& permutation) {
  std::vector<Dfa> entries;
  entries.reserve(permutation.size());
  for (const int idx : permutation) entries.push_back(tasks[idx]);
  return DfaVector(std::move(entries));
}

void check_permutation(const DfaVector& tasks,
                       const std::vector<int>& permutation) {
  if (static_cast<int>(permutation.size()) != tasks.size()) {
    throw Error(ErrorCode::invalid_config,
                "permutation length differs from the task count");
  }
  std::vector<bool> seen(permutation.size(), false);
  for (const int idx : permutation) {
    if (idx < 0 || idx >= tasks.size() || seen[static_cast<size_t>(idx)]) {
      throw Error(ErrorCode::invalid_config, "not a permutation");
    }
    seen[static_cast<size_t>(idx)] = true;
  }
}

int assign_worker_count() {
  if (const char* env = std::getenv("TASKGRID_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

}  // namespace

ValueFn exact_values(double gamma, size_t max_states) {
  return [gamma, max_states](const Layout& layout, const DfaVector& assigned,
                             uint64_t) {
    const EnumeratedGame game = enumerate_product(layout, assigned, max_states);
    const SolveResult solved = value_iteration(game, gamma);
    double value_sum = 0.0;
    for (const int s : game.initial_states) {
      value_sum += solved.values[static_cast<size_t>(s)];
    }
    const double mean = value_sum / static_cast<double>(game.initial_states.size());
    return std::vector<double>(static_cast<size_t>(layout.num_agents()), mean);
  };
}

ValueFn qtable_values(const QTable& table, int samples) {
  if (samples <= 0) {
    throw Error(ErrorCode::invalid_config, "samples must be positive");
  }
  return [&table, samples](const Layout& layout, const DfaVector& assigned,
                           uint64_t seed) {
    const int n = layout.num_agents();
    const int draws = layout.fixed_spawns() ? 1 : samples;
    std::vector<double> values(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < draws; ++k) {
      const ProductState start =
          product_reset(layout, assigned, SplitMix64::derive_seed(seed, k));
      for (int i = 0; i < n; ++i) {
        const auto row = table.read(i, observation_key(layout, start, i));
        values[static_cast<size_t>(i)] +=
            row[static_cast<size_t>(greedy_action(row))];
      }
    }
    for (double& v : values) v /= draws;
    return values;
  };
}

AssignmentSearch assign_optimal(const Layout& layout, const DfaVector& tasks,
                                const ValueFn& value_fn, uint64_t seed,
                                double tie_epsilon, int agent_cap) {
  const int n = tasks.size();
  if (n > agent_cap) {
    throw Error(ErrorCode::invalid_budget,
                "assignment search enumerates all permutations of " +
                    std::to_string(n) + " tasks; the cap is " +
                    std::to_string(agent_cap));
  }

  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);

  // Equal codes mean equal languages, so two permutations handing every
  // agent the same language are the same assignment; the lexicographically
  // first permutation reaches each assignment first and represents it.
  std::vector<std::vector<int>> distinct;
  std::set<std::vector<std::string>> seen;
  do {
    const DfaVector assigned = permuted_tasks(tasks, perm);
    std::vector<std::string> signature;
    signature.reserve(static_cast<size_t>(n));
    for (const TaskCode& code : encode_vector(assigned)) {
      signature.push_back(code.hex());
    }
    if (seen.insert(std::move(signature)).second) distinct.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  AssignmentSearch result;
  result.all.resize(distinct.size());
  const int workers = std::min<int>(assign_worker_count(),
                                    static_cast<int>(distinct.size()));
  std::atomic<size_t> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      size_t index;
      while ((index = cursor.fetch_add(1)) < distinct.size()) {
        Assignment& entry = result.all[index];
        entry.permutation = distinct[index];
        entry.per_agent_values =
            value_fn(layout, permuted_tasks(tasks, entry.permutation), seed);
        entry.proxy_value = std::accumulate(entry.per_agent_values.begin(),
                                            entry.per_agent_values.end(), 0.0);
      }
    });
  }
  for (std::thread& t : pool) t.join();

  double top = result.all.front().proxy_value;
  for (const Assignment& candidate : result.all) {
    top = std::max(top, candidate.proxy_value);
  }
  // Everything within the tolerance of the top is a tie class; the
  // lexicographically smallest member wins, so the identity permutation
  // is preferred whenever the estimates cannot separate it from the top.
  const Assignment* winner = nullptr;
  int within = 0;
  for (const Assignment& candidate : result.all) {
    if (top - candidate.proxy_value <= tie_epsilon) {
      ++within;
      if (winner == nullptr) winner = &candidate;
    }
  }
  result.best = *winner;
  result.best.tied = within > 1;
  return result;
}

ExactAssignment exact_assignment(const Layout& layout, const DfaVector& tasks,
                                 const std::vector<int>& permutation,
                                 double gamma, size_t max_states) {
  check_permutation(tasks, permutation);
  const EnumeratedGame game = enumerate_product(
      layout, permuted_tasks(tasks, permutation), max_states);
  const SolveResult solved = value_iteration(game, gamma);

  ExactAssignment outcome;
  int wins = 0;
  double value_sum = 0.0;
  for (const int s : game.initial_states) {
    if (greedy_success(game, solved.greedy, s)) ++wins;
    value_sum += solved.values[static_cast<size_t>(s)];
  }
  const double count = static_cast<double>(game.initial_states.size());
  outcome.success = wins / count;
  outcome.value = value_sum / count;
  return outcome;
}

EvalResult evaluate_assignment(const Layout& layout, const DfaVector& tasks,
                               const std::vector<int>& permutation,
                               const QTable& table, int episodes,
                               uint64_t seed) {
  check_permutation(tasks, permutation);
  return estimate_success(layout, permuted_tasks(tasks, permutation), table,
                          episodes, seed);
}

}  // namespace taskgrid
