#include "taskgrid/exhaustive.hpp"

#include <string>
#include <unordered_set>

#include "taskgrid/token_env.hpp"

namespace taskgrid {

namespace {

/// Per automaton state: every reachable state accepting (residual language
/// is everything) or no reachable state accepting (residual is empty).
struct ResidualClasses {
  std::vector<bool> universal;
  std::vector<bool> doomed;
};

ResidualClasses classify(const Dfa& a) {
  ResidualClasses out;
  out.universal.assign(static_cast<size_t>(a.num_states()), false);
  out.doomed.assign(static_cast<size_t>(a.num_states()), false);
  for (int q = 0; q < a.num_states(); ++q) {
    std::vector<bool> seen(static_cast<size_t>(a.num_states()), false);
    std::vector<int> stack{q};
    seen[static_cast<size_t>(q)] = true;
    bool all_accept = true;
    bool none_accept = true;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      if (a.is_accepting(cur)) {
        none_accept = false;
      } else {
        all_accept = false;
      }
      for (int sym = 0; sym < a.alphabet_size(); ++sym) {
        const int next = a.transition(cur, sym);
        if (!seen[static_cast<size_t>(next)]) {
          seen[static_cast<size_t>(next)] = true;
          stack.push_back(next);
        }
      }
    }
    out.universal[static_cast<size_t>(q)] = all_accept;
    out.doomed[static_cast<size_t>(q)] = none_accept;
  }
  return out;
}

struct Search {
  const Layout& layout;
  const std::vector<Dfa>& tasks;
  std::vector<ResidualClasses> classes;
  int num_joint_actions = 1;
  std::unordered_set<std::string> failed;

  bool all_universal(const std::vector<int>& qs) const {
    for (size_t i = 0; i < qs.size(); ++i) {
      if (!classes[i].universal[static_cast<size_t>(qs[i])]) return false;
    }
    return true;
  }
  bool any_doomed(const std::vector<int>& qs) const {
    for (size_t i = 0; i < qs.size(); ++i) {
      if (classes[i].doomed[static_cast<size_t>(qs[i])]) return true;
    }
    return false;
  }

  static std::string key(const std::vector<Cell>& positions,
                         const std::vector<int>& qs, int step) {
    std::string out = std::to_string(step);
    for (const Cell c : positions) {
      out += ',' + std::to_string(c.x) + ',' + std::to_string(c.y);
    }
    for (const int q : qs) out += ';' + std::to_string(q);
    return out;
  }

  /// Precondition: qs is not all-universal and nothing is doomed.
  bool dfs(const std::vector<Cell>& positions, const std::vector<int>& qs,
           int step) {
    if (step >= layout.max_steps()) return false;
    const std::string k = key(positions, qs, step);
    if (!failed.insert(k).second) return false;

    GridState grid;
    grid.positions = positions;
    grid.step_count = step;
    for (int joint = 0; joint < num_joint_actions; ++joint) {
      JointAction actions(positions.size());
      int rest = joint;
      for (size_t i = 0; i < actions.size(); ++i) {
        actions[i] = static_cast<Action>(rest % kNumActions);
        rest /= kNumActions;
      }
      const GridState next = taskgrid::step(layout, grid, actions);
      std::vector<int> next_qs = qs;
      for (size_t i = 0; i < next_qs.size(); ++i) {
        const auto sym = label(layout, next, static_cast<int>(i));
        if (sym) {
          next_qs[i] = tasks[i].transition(qs[i], *sym);
        }
      }
      if (all_universal(next_qs)) return true;
      if (any_doomed(next_qs)) continue;
      if (dfs(next.positions, next_qs, step + 1)) return true;
    }
    return false;
  }
};

}  // namespace

bool exhaustive_plan_success(const Layout& layout, const std::vector<Dfa>& tasks,
                        const std::vector<Cell>& spawn) {
  Search search{layout, tasks, {}, 1, {}};
  for (const Dfa& a : tasks) search.classes.push_back(classify(a));
  for (size_t i = 0; i < spawn.size(); ++i) {
    search.num_joint_actions *= kNumActions;
  }

  std::vector<int> qs;
  qs.reserve(tasks.size());
  for (const Dfa& a : tasks) qs.push_back(a.initial());
  if (search.all_universal(qs)) return true;
  if (search.any_doomed(qs)) return false;
  return search.dfs(spawn, qs, 0);
}

}  // namespace taskgrid
