#include "taskgrid/fixtures.hpp"

#include "taskgrid/errors.hpp"
#include "taskgrid/tasks.hpp"

namespace taskgrid {

namespace {

Fixture make_corridor_single() {
  return Fixture{
      "corridor_single",
      Layout::parse(
          "max_steps: 4\n"
          "@.1\n"),
      DfaVector({reach_dfa(1, 2)}),
      1.0,
  };
}

Fixture make_reach_then() {
  // token 0 first, then back across the corridor to token 1
  return Fixture{
      "reach_then",
      Layout::parse(
          "max_steps: 8\n"
          "1.@0\n"),
      DfaVector({reach_sequence_dfa({0, 1}, 2)}),
      1.0,
  };
}

Fixture make_avoid_detour() {
  // the straight run crosses token 2, which poisons the task for good
  return Fixture{
      "avoid_detour",
      Layout::parse(
          "max_steps: 8\n"
          "@2.1\n"
          "....\n"),
      DfaVector({reach_avoid_dfa(1, {2}, 3)}),
      1.0,
  };
}

Fixture make_buttons_pair() {
  // the second agent owns the goal behind the door and the wall stops the
  // walk-around; a helper on the button shortens the route, though the
  // worker could detour over the button itself
  return Fixture{
      "buttons_pair",
      Layout::parse(
          "max_steps: 8\n"
          "@.a#\n"
          "@.A1\n"),
      DfaVector({Dfa::trivial_accepting(2), reach_dfa(1, 2)}),
      1.0,
  };
}

Fixture make_buttons_split() {
  // both agents carry real goals: the first crosses its token on the way
  // to the button, the second goes through the opened door; the first
  // goal falls early, the team reward only at the very end
  return Fixture{
      "buttons_split",
      Layout::parse(
          "max_steps: 8\n"
          "@0a#\n"
          "@.A1\n"),
      DfaVector({reach_dfa(0, 2), reach_dfa(1, 2)}),
      1.0,
  };
}

Fixture make_pairing_corridor() {
  // matched to the near tokens; swapping the two tasks still wins, just a
  // step later, so only the values tell the assignments apart
  return Fixture{
      "pairing_corridor",
      Layout::parse(
          "max_steps: 4\n"
          "0@@1\n"),
      DfaVector({reach_dfa(0, 2), reach_dfa(1, 2)}),
      1.0,
  };
}

Fixture make_sealed_rooms() {
  // tasks are crossed into the wrong rooms, so the team can never win;
  // swapping the assignment would make both goals two steps away
  return Fixture{
      "sealed_rooms",
      Layout::parse(
          "max_steps: 6\n"
          "@.0.\n"
          "####\n"
          "@.1.\n"),
      DfaVector({reach_dfa(1, 2), reach_dfa(0, 2)}),
      0.0,
  };
}

Fixture make_region_tight() {
  // three spawn cells for two agents; the far corner leaves the reaching
  // agent four moves from the token with only three on the clock, so four
  // of the six arrangements can win
  return Fixture{
      "region_tight",
      Layout::parse(
          "max_steps: 3\n"
          "agents: 2\n"
          "@@.1\n"
          "@...\n"),
      DfaVector({reach_dfa(1, 2), Dfa::trivial_accepting(2)}),
      4.0 / 6.0,
  };
}

}  // namespace

const std::vector<Fixture>& micro_fixtures() {
  static const std::vector<Fixture> fixtures = {
      make_corridor_single(), make_reach_then(),       make_avoid_detour(),
      make_buttons_pair(),    make_buttons_split(),    make_pairing_corridor(),
      make_sealed_rooms(),    make_region_tight(),
  };
  return fixtures;
}

const Fixture& fixture_by_name(const std::string& name) {
  for (const Fixture& f : micro_fixtures()) {
    if (f.name == name) return f;
  }
  throw Error(ErrorCode::invalid_config, "unknown fixture '" + name + "'");
}

}  // namespace taskgrid
