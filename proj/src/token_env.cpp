#include "taskgrid/token_env.hpp"

#include <algorithm>
#include <array>

#include "taskgrid/errors.hpp"

namespace taskgrid {

const char* action_name(Action a) {
  switch (a) {
    case Action::up: return "up";
    case Action::down: return "down";
    case Action::left: return "left";
    case Action::right: return "right";
    case Action::noop: return "noop";
  }
  return "?";
}

namespace {

Cell destination(Cell from, Action a) {
  switch (a) {
    case Action::up: return {from.x, from.y - 1};
    case Action::down: return {from.x, from.y + 1};
    case Action::left: return {from.x - 1, from.y};
    case Action::right: return {from.x + 1, from.y};
    case Action::noop: return from;
  }
  return from;
}

}  // namespace

GridState reset(const Layout& layout, SplitMix64& rng) {
  const int n = layout.num_agents();
  GridState state;
  if (layout.fixed_spawns()) {
    state.positions = layout.spawn_cells();
    return state;
  }
  // distinct cells, uniform without replacement: partial Fisher-Yates
  std::vector<Cell> pool = layout.spawn_cells();
  for (int i = 0; i < n; ++i) {
    const size_t j = static_cast<size_t>(i) +
                     rng.next_below(pool.size() - static_cast<size_t>(i));
    std::swap(pool[static_cast<size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<size_t>(n));
  state.positions = std::move(pool);
  return state;
}

GridState reset(const Layout& layout, uint64_t seed) {
  SplitMix64 rng(seed);
  return reset(layout, rng);
}

GridState step(const Layout& layout, const GridState& state,
               const JointAction& joint_action) {
  if (state.terminated) {
    throw Error(ErrorCode::episode_over, "step on a terminated episode");
  }
  const int n = layout.num_agents();
  if (static_cast<int>(state.positions.size()) != n) {
    throw Error(ErrorCode::invalid_config, "state/agent count mismatch");
  }
  if (static_cast<int>(joint_action.size()) != n) {
    throw Error(ErrorCode::invalid_config,
                "joint action needs " + std::to_string(n) + " entries, got " +
                    std::to_string(joint_action.size()));
  }

  // door openness is decided once, from start-of-step button occupancy
  std::array<bool, 4> open{};
  for (const Cell pos : state.positions) {
    if (const auto color = layout.button_color_at(pos)) {
      open[static_cast<size_t>(*color)] = true;
    }
  }

  GridState next;
  next.positions.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Cell from = state.positions[static_cast<size_t>(i)];
    const Cell to = destination(from, joint_action[static_cast<size_t>(i)]);
    bool allowed = layout.is_passable(to);
    if (allowed && to != from) {
      if (const auto color = layout.door_color_at(to)) {
        allowed = open[static_cast<size_t>(*color)];
      }
    }
    next.positions.push_back(allowed ? to : from);
  }
  next.step_count = state.step_count + 1;
  next.terminated = next.step_count >= layout.max_steps();
  return next;
}

std::optional<Symbol> label(const Layout& layout, const GridState& state,
                            int agent_index) {
  return layout.token_at(state.positions[static_cast<size_t>(agent_index)]);
}

std::vector<std::optional<Symbol>> labels(const Layout& layout,
                                          const GridState& state) {
  std::vector<std::optional<Symbol>> out;
  out.reserve(state.positions.size());
  for (int i = 0; i < static_cast<int>(state.positions.size()); ++i) {
    out.push_back(label(layout, state, i));
  }
  return out;
}

EgoView ego_view(const Layout& layout, const GridState& state, int agent_index) {
  const Cell me = state.positions[static_cast<size_t>(agent_index)];
  EgoView view;
  for (int y = 0; y < layout.height(); ++y) {
    for (int x = 0; x < layout.width(); ++x) {
      const Cell c{x, y};
      const Offset off{c.x - me.x, c.y - me.y};
      if (layout.is_wall(c)) view.walls.push_back(off);
      if (const auto t = layout.token_at(c)) view.tokens.push_back({off, *t});
      if (const auto b = layout.button_color_at(c)) view.buttons.push_back({off, *b});
      if (const auto d = layout.door_color_at(c)) view.doors.push_back({off, *d});
    }
  }
  for (int j = 0; j < static_cast<int>(state.positions.size()); ++j) {
    if (j == agent_index) continue;
    const Cell other = state.positions[static_cast<size_t>(j)];
    view.other_agents.push_back({other.x - me.x, other.y - me.y});
  }
  std::sort(view.walls.begin(), view.walls.end());
  std::sort(view.tokens.begin(), view.tokens.end());
  std::sort(view.buttons.begin(), view.buttons.end());
  std::sort(view.doors.begin(), view.doors.end());
  std::sort(view.other_agents.begin(), view.other_agents.end());
  return view;
}

}  // namespace taskgrid
