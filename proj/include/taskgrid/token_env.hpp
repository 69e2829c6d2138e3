#pragma once

#include <compare>
#include <optional>
#include <utility>
#include <vector>

#include "taskgrid/layout.hpp"
#include "taskgrid/rng.hpp"

namespace taskgrid {

enum class Action { up, down, left, right, noop };
inline constexpr int kNumActions = 5;
using JointAction = std::vector<Action>;

const char* action_name(Action a);

/// Dynamic part of an episode. Everything else lives in the Layout.
struct GridState {
  std::vector<Cell> positions;
  int step_count = 0;
  bool terminated = false;
  bool operator==(const GridState&) const = default;
};

/// Spawn the agents. Fixed spawn cells are assigned in reading order with
/// no generator draws; a larger spawn region places agents on distinct
/// cells drawn uniformly without replacement.
GridState reset(const Layout& layout, SplitMix64& rng);
GridState reset(const Layout& layout, uint64_t seed);

/// Synchronous move of all agents. A move into a wall, out of bounds, or
/// into a door whose color has no agent on a same-colored button at the
/// START of the step resolves to staying put; occupied cells do not block.
/// Only entry through doors is gated: an agent already standing on a door
/// cell stays there freely. Throws Error(episode_over) on terminated input.
GridState step(const Layout& layout, const GridState& state,
               const JointAction& joint_action);

/// Token under the agent, if any. Tokens are never consumed.
std::optional<Symbol> label(const Layout& layout, const GridState& state,
                            int agent_index);

/// All per-agent labels for one state.
std::vector<std::optional<Symbol>> labels(const Layout& layout,
                                          const GridState& state);

/// Offset of an entity relative to the viewing agent.
struct Offset {
  int dx = 0;
  int dy = 0;
  auto operator<=>(const Offset&) const = default;
};

/// Agent-centered view: every entity keyed by its offset from the agent,
/// each list sorted. Other agents are anonymous (their offsets form a
/// multiset), so permuting agent indices permutes views consistently.
/// Together with the viewing agent's absolute cell this reconstructs the
/// full state.
struct EgoView {
  std::vector<Offset> walls;
  std::vector<std::pair<Offset, Symbol>> tokens;
  std::vector<std::pair<Offset, int>> buttons;
  std::vector<std::pair<Offset, int>> doors;
  std::vector<Offset> other_agents;
  bool operator==(const EgoView&) const = default;
};

EgoView ego_view(const Layout& layout, const GridState& state, int agent_index);

}  // namespace taskgrid
