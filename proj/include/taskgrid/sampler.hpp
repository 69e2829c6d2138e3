#pragma once

#include <cstdint>
#include <string>

#include "taskgrid/dfa.hpp"
#include "taskgrid/rng.hpp"

namespace taskgrid {

enum class StateCountLaw { uniform, geometric };

enum class TaskDistribution { reach, reach_avoid, rad };

const char* task_distribution_name(TaskDistribution d);
TaskDistribution parse_task_distribution(const std::string& name);

/// Knobs shared by all task samplers. Samplers are pure functions of this
/// struct: identical configs (seed included) give byte-identical outputs.
struct SamplerConfig {
  /// Upper bound for the state-count draw, inclusive. The drawn count is the
  /// number of chain states plus the accepting sink; the rejecting sink of a
  /// reach-avoid chain sits outside it, while rad chains pay for theirs from
  /// the same budget.
  int max_states = 5;
  StateCountLaw state_count_law = StateCountLaw::uniform;
  /// Success probability of the geometric law (truncated at max_states).
  double geometric_p = 0.5;
  int alphabet_size = 0;
  /// Chance that a stuttering (state-preserving) symbol is promoted into an
  /// advancing or avoiding edge after the chain is laid out.
  double stutter_promotion_prob = 0.1;
  /// Mutation budget for sample_rad: the mutation count is drawn uniformly
  /// from {0..max_mutations}; -1 substitutes the chain's state count.
  int max_mutations = -1;
  uint64_t rng_seed = 0;
};

/// Throws Error(invalid_config) on out-of-range fields.
void validate(const SamplerConfig& cfg);

/// Chain construction building blocks. Exposed so tests can replay the
/// exact construction a sampler performed from the same generator state.
///
/// Draw order, fixed for replayability: all per-step draws first (goal,
/// then avoid where applicable, in chain order), then one promotion draw
/// per stuttering (state, symbol) pair in row-major order.
int draw_state_count(SplitMix64& rng, const SamplerConfig& cfg);
Dfa build_reach_chain(SplitMix64& rng, int num_states, int alphabet_size,
                      double promote_prob);
Dfa build_reach_avoid_chain(SplitMix64& rng, int num_states, int alphabet_size,
                            double promote_prob);
Dfa build_rad_chain(SplitMix64& rng, int state_budget, int alphabet_size,
                    double promote_prob);

/// Chain of one-step reach goals. Output has exactly the drawn number of
/// states (the chain plus an accepting sink).
Dfa sample_reach(const SamplerConfig& cfg);

/// Chain of one-step reach-avoid goals: each step carries one avoid symbol
/// routed to a shared rejecting sink. Output has drawn + 1 states. Requires
/// alphabet_size >= 2.
Dfa sample_reach_avoid(const SamplerConfig& cfg);

/// Mixed chain (fair coin per step for a hard constraint, paid for out of
/// the state budget), then a uniformly drawn number of transition mutations;
/// each mutation re-sinks accepting states, re-minimizes, and is discarded
/// if it would make the DFA trivial. Output has 2..max_states states.
Dfa sample_rad(const SamplerConfig& cfg);

Dfa sample_task(TaskDistribution dist, const SamplerConfig& cfg);

/// Task vector for a team: n_trivial ~ Uniform{0..n_agents-1} trivially
/// accepting entries, the rest drawn from `inner` with derived seeds, then
/// uniformly shuffled. At least one entry is always non-trivial.
DfaVector sample_multi_agent(const SamplerConfig& cfg, int n_agents,
                             TaskDistribution inner);

}  // namespace taskgrid
