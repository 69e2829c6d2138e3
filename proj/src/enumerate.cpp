#include "taskgrid/enumerate.hpp"

#include <deque>

#include "taskgrid/errors.hpp"

namespace taskgrid {

namespace {

void append_u32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

/// Positions plus the canonical bytes of every entry. Valid as an identity
/// because entries are kept canonical, so byte equality is language
/// equality.
std::string state_key(const ProductState& ps) {
  std::string key;
  for (const Cell c : ps.grid.positions) {
    append_u32(key, static_cast<uint32_t>(c.x));
    append_u32(key, static_cast<uint32_t>(c.y));
  }
  for (const Dfa& entry : ps.tasks.entries()) {
    const std::vector<uint8_t> bytes = canonical(entry).bytes;
    append_u32(key, static_cast<uint32_t>(bytes.size()));
    key.append(bytes.begin(), bytes.end());
  }
  return key;
}

DfaVector canonical_entries(const DfaVector& tasks) {
  std::vector<Dfa> out;
  out.reserve(static_cast<size_t>(tasks.size()));
  for (const Dfa& entry : tasks.entries()) {
    out.push_back(canonical(minimize(entry)).dfa);
  }
  return DfaVector(std::move(out));
}

ProductState normalized(ProductState ps) {
  ps.grid.step_count = 0;
  ps.grid.terminated = false;
  ps.tasks = canonical_entries(ps.tasks);
  return ps;
}

/// All ordered arrangements of distinct spawn cells, lexicographic in the
/// chosen cell indices so enumeration order is reproducible.
void spawn_arrangements(const Layout& layout, std::vector<Cell>& current,
                        std::vector<bool>& used,
                        std::vector<std::vector<Cell>>& out) {
  if (static_cast<int>(current.size()) == layout.num_agents()) {
    out.push_back(current);
    return;
  }
  const auto& cells = layout.spawn_cells();
  for (size_t i = 0; i < cells.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    current.push_back(cells[i]);
    spawn_arrangements(layout, current, used, out);
    current.pop_back();
    used[i] = false;
  }
}

}  // namespace

JointAction joint_action_from_index(int index, int num_agents) {
  JointAction joint(static_cast<size_t>(num_agents));
  for (int i = 0; i < num_agents; ++i) {
    joint[static_cast<size_t>(i)] = static_cast<Action>(index % kNumActions);
    index /= kNumActions;
  }
  return joint;
}

int joint_action_index(const JointAction& joint) {
  int index = 0;
  for (size_t i = joint.size(); i-- > 0;) {
    index = index * kNumActions + static_cast<int>(joint[i]);
  }
  return index;
}

int EnumeratedGame::find_state(const ProductState& ps) const {
  ProductState probe = ps;
  probe.grid.step_count = 0;
  probe.grid.terminated = false;
  probe.tasks = canonical_entries(probe.tasks);
  const auto it = index.find(state_key(probe));
  return it == index.end() ? -1 : it->second;
}

EnumeratedGame enumerate_product(const Layout& layout, const DfaVector& tasks,
                                 size_t max_states) {
  if (tasks.size() != layout.num_agents()) {
    throw Error(ErrorCode::invalid_config,
                "task vector has " + std::to_string(tasks.size()) +
                    " entries for " + std::to_string(layout.num_agents()) +
                    " agents");
  }
  if (tasks.size() > 0 && tasks.alphabet_size() != layout.alphabet_size()) {
    throw Error(ErrorCode::alphabet_mismatch,
                "tasks use alphabet " + std::to_string(tasks.alphabet_size()) +
                    " but the map implies " +
                    std::to_string(layout.alphabet_size()));
  }

  EnumeratedGame game(layout);
  game.num_agents = layout.num_agents();
  game.num_joint_actions = 1;
  for (int i = 0; i < game.num_agents; ++i) {
    game.num_joint_actions *= kNumActions;
  }

  const DfaVector base = canonical_entries(tasks);

  auto intern = [&](const ProductState& ps) {
    const std::string key = state_key(ps);
    const auto it = game.index.find(key);
    if (it != game.index.end()) return it->second;
    if (game.states.size() >= max_states) {
      throw Error(ErrorCode::enumeration_cap_exceeded,
                  "product game exceeds " + std::to_string(max_states) +
                      " states");
    }
    const int id = static_cast<int>(game.states.size());
    game.index.emplace(key, id);
    game.states.push_back(ps);
    uint32_t mask = 0;
    for (int i = 0; i < game.num_agents; ++i) {
      if (is_trivial_accepting(ps.tasks[i])) mask |= 1u << i;
    }
    game.accepting_mask.push_back(mask);
    game.terminal.push_back(ps.tasks.all_terminal() ? 1 : 0);
    game.next_state.emplace_back();
    return id;
  };

  // fixed spawns are assigned in reading order, never permuted; a spawn
  // region supports every ordered arrangement of distinct cells
  std::vector<std::vector<Cell>> arrangements;
  if (layout.fixed_spawns()) {
    arrangements.push_back(layout.spawn_cells());
  } else {
    std::vector<Cell> current;
    std::vector<bool> used(layout.spawn_cells().size(), false);
    spawn_arrangements(layout, current, used, arrangements);
  }

  std::deque<int> frontier;
  for (const auto& positions : arrangements) {
    ProductState start;
    start.grid.positions = positions;
    start.tasks = base;
    const int id = intern(normalized(start));
    if (game.initial_states.empty() || game.initial_states.back() != id) {
      game.initial_states.push_back(id);
    }
    frontier.push_back(id);
  }

  std::vector<bool> expanded(game.states.size(), false);
  while (!frontier.empty()) {
    const int id = frontier.front();
    frontier.pop_front();
    if (static_cast<size_t>(id) < expanded.size() && expanded[static_cast<size_t>(id)]) {
      continue;
    }
    if (static_cast<size_t>(id) >= expanded.size()) {
      expanded.resize(game.states.size(), false);
    }
    expanded[static_cast<size_t>(id)] = true;
    if (game.terminal[static_cast<size_t>(id)]) continue;

    // intern() may reallocate the state tables, so build the row locally
    const ProductState state = game.states[static_cast<size_t>(id)];
    std::vector<int> row(static_cast<size_t>(game.num_joint_actions));
    for (int a = 0; a < game.num_joint_actions; ++a) {
      const JointAction joint = joint_action_from_index(a, game.num_agents);
      const StepOutcome outcome = product_step(layout, state, joint, 0.5);
      const int next_id = intern(normalized(outcome.next));
      row[static_cast<size_t>(a)] = next_id;
      if (static_cast<size_t>(next_id) >= expanded.size() ||
          !expanded[static_cast<size_t>(next_id)]) {
        frontier.push_back(next_id);
      }
    }
    game.next_state[static_cast<size_t>(id)] = std::move(row);
  }
  return game;
}

}  // namespace taskgrid
