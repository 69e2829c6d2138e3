#pragma once

#include <string>
#include <vector>

#include "taskgrid/dfa.hpp"
#include "taskgrid/layout.hpp"

namespace taskgrid {

/// Hand-sized scenario with a known optimal outcome, small enough for the
/// exact solver and the exhaustive checks to finish instantly. Every map
/// fits in a 4x4 grid with at most two agents, three tokens, and a step
/// cap of eight. Spawn cells never carry tokens, so the first consumed
/// label always comes from a move.
struct Fixture {
  std::string name;
  Layout layout;
  DfaVector tasks;
  /// Success probability of an optimal controller under the step cap,
  /// averaged uniformly over the spawn arrangements (0 or 1 when spawns
  /// are fixed).
  double optimal_success = 0.0;
};

/// The built-in micro scenarios: straight reach, ordered reach, a detour
/// forced by an avoid token, a door that needs a teammate on its button,
/// a symmetric pairing corridor, a sealed-room impossibility, and a spawn
/// region where only some draws leave enough time.
const std::vector<Fixture>& micro_fixtures();

/// Lookup by name; throws Error(invalid_config) for an unknown name.
const Fixture& fixture_by_name(const std::string& name);

}  // namespace taskgrid
