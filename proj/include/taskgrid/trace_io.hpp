#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "taskgrid/layout.hpp"
#include "taskgrid/product.hpp"

namespace taskgrid {

/// Episode traces are line-delimited JSON: one header record, one record
/// per step (actions, positions, labels, per-task digests, rewards), one
/// summary record. Serialization is deterministic, and doubles round-trip
/// exactly, so a re-simulated episode can be compared bit for bit.

struct TraceStep {
  JointAction actions;
  std::vector<Cell> positions;
  std::vector<std::optional<Symbol>> labels;
  std::vector<std::string> task_codes;  // digest hex per agent
  double team_reward = 0.0;
  std::vector<double> shaped_rewards;
  bool done = false;
};

struct Trace {
  int agents = 0;
  double gamma = 0.0;
  uint64_t seed = 0;
  std::string layout_hash;
  std::vector<Dfa> initial_tasks;  // full automata, canonical form
  std::vector<Cell> initial_positions;
  std::vector<TraceStep> steps;
  int length = 0;
  bool success = false;
  double team_return = 0.0;
  std::vector<double> shaped_returns;
};

std::string trace_to_jsonl(const Layout& layout, const RolloutResult& episode,
                           double gamma, uint64_t seed);

/// Throws Error(io_error) on malformed input.
Trace parse_trace(const std::string& jsonl);

/// Re-simulates the recorded actions through the cascade and compares every
/// recorded field exactly (double fields bitwise). On mismatch returns
/// false and, when `why` is given, names the first disagreeing field.
bool replay_matches(const Layout& layout, const Trace& trace,
                    std::string* why = nullptr);

}  // namespace taskgrid
