#include "taskgrid/tasks.hpp"

#include <algorithm>

#include "taskgrid/errors.hpp"

namespace taskgrid {

namespace {

void check_symbol(Symbol s, int alphabet_size) {
  if (s < 0 || s >= alphabet_size) {
    throw Error(ErrorCode::invalid_symbol,
                "task symbol " + std::to_string(s) +
                    " out of range for alphabet of size " +
                    std::to_string(alphabet_size));
  }
}

}  // namespace

Dfa reach_dfa(Symbol goal, int alphabet_size) {
  return reach_sequence_dfa({goal}, alphabet_size);
}

Dfa reach_sequence_dfa(const std::vector<Symbol>& goals, int alphabet_size) {
  if (alphabet_size <= 0) {
    throw Error(ErrorCode::invalid_dfa, "alphabet must be positive");
  }
  for (const Symbol g : goals) check_symbol(g, alphabet_size);
  if (goals.empty()) return Dfa::trivial_accepting(alphabet_size);

  // state i waits for goals[i]; state n is the accepting sink
  const int n = static_cast<int>(goals.size());
  std::vector<int> table(static_cast<size_t>(n + 1) * alphabet_size);
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < alphabet_size; ++s) {
      table[static_cast<size_t>(i) * alphabet_size + s] =
          (s == goals[static_cast<size_t>(i)]) ? i + 1 : i;
    }
  }
  for (int s = 0; s < alphabet_size; ++s) {
    table[static_cast<size_t>(n) * alphabet_size + s] = n;
  }
  std::vector<bool> accepting(static_cast<size_t>(n + 1), false);
  accepting[static_cast<size_t>(n)] = true;
  return minimize(Dfa(n + 1, alphabet_size, 0, table, accepting));
}

Dfa reach_avoid_dfa(Symbol goal, const std::vector<Symbol>& avoid,
                    int alphabet_size) {
  if (alphabet_size <= 0) {
    throw Error(ErrorCode::invalid_dfa, "alphabet must be positive");
  }
  check_symbol(goal, alphabet_size);
  for (const Symbol s : avoid) check_symbol(s, alphabet_size);

  // 0 active, 1 accept sink, 2 reject sink; avoid wins over goal
  std::vector<int> table(static_cast<size_t>(3) * alphabet_size);
  for (int s = 0; s < alphabet_size; ++s) {
    const bool avoided = std::find(avoid.begin(), avoid.end(), s) != avoid.end();
    table[static_cast<size_t>(s)] = avoided ? 2 : (s == goal ? 1 : 0);
    table[static_cast<size_t>(alphabet_size) + s] = 1;
    table[static_cast<size_t>(2) * alphabet_size + s] = 2;
  }
  return minimize(Dfa(3, alphabet_size, 0, table, {false, true, false}));
}

}  // namespace taskgrid
