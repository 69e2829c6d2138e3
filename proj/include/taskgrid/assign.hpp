#pragma once

#include <functional>
#include <vector>

#include "taskgrid/dfa.hpp"
#include "taskgrid/layout.hpp"
#include "taskgrid/qlearn.hpp"

namespace taskgrid {

/// One evaluated assignment: agent i pursues tasks[permutation[i]].
struct Assignment {
  std::vector<int> permutation;
  /// Sum of the per-agent value estimates at the episode start.
  double proxy_value = 0.0;
  std::vector<double> per_agent_values;
  /// True when another distinct assignment is within the tie tolerance.
  bool tied = false;
};

struct AssignmentSearch {
  Assignment best;
  /// Every distinct assignment, one representative permutation each (the
  /// lexicographically smallest), in that order. Permutations that hand
  /// every agent a language-identical task collapse into one entry.
  std::vector<Assignment> all;
};

/// Per-agent start-state values for one assigned task vector. The seed
/// feeds Monte Carlo estimators; exact backends ignore it. Every
/// assignment sees the same seed, so estimates share random numbers.
using ValueFn = std::function<std::vector<double>(
    const Layout&, const DfaVector& assigned, uint64_t seed)>;

/// Exact per-agent values from full enumeration and value iteration. All
/// agents share the team objective, so each agent's entry is the mean
/// optimal value over spawn arrangements.
ValueFn exact_values(double gamma = 0.999, size_t max_states = 2'000'000);

/// Per-agent values read from a learned table: each agent's greedy value
/// at the start of the episode, averaged over `samples` spawns (one
/// evaluation when spawns are fixed). The table must outlive the function.
ValueFn qtable_values(const QTable& table, int samples = 32);

/// Evaluates every distinct permutation of the task vector and returns
/// the highest proxy value. Candidates within tie_epsilon of the top are
/// tied: the lexicographically smallest permutation among them wins and
/// the result is flagged. Throws Error(invalid_budget) beyond agent_cap;
/// the search is factorial. Assignment evaluations run in parallel
/// (TASKGRID_WORKERS), which never changes the result.
AssignmentSearch assign_optimal(const Layout& layout, const DfaVector& tasks,
                                const ValueFn& value_fn, uint64_t seed = 0,
                                double tie_epsilon = 1e-9, int agent_cap = 8);

/// Exact optimal play for one fixed assignment: success probability within
/// the step cap and mean optimal value, both averaged over spawn
/// arrangements. This is the ground truth the proxy search is judged
/// against. Throws Error(invalid_config) unless `permutation` is a
/// permutation of 0..tasks.size()-1.
struct ExactAssignment {
  double success = 0.0;
  double value = 0.0;
};
ExactAssignment exact_assignment(const Layout& layout, const DfaVector& tasks,
                                 const std::vector<int>& permutation,
                                 double gamma = 0.999,
                                 size_t max_states = 2'000'000);

/// Monte Carlo success of the table's greedy policy when agent i pursues
/// tasks[permutation[i]]. Comparable against a random permutation under
/// the same seed.
EvalResult evaluate_assignment(const Layout& layout, const DfaVector& tasks,
                               const std::vector<int>& permutation,
                               const QTable& table, int episodes,
                               uint64_t seed);

}  // namespace taskgrid
