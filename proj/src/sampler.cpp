#include "taskgrid/sampler.hpp"

#include <utility>
#include <vector>

#include "taskgrid/errors.hpp"

namespace taskgrid {

const char* task_distribution_name(TaskDistribution d) {
  switch (d) {
    case TaskDistribution::reach: return "reach";
    case TaskDistribution::reach_avoid: return "reachavoid";
    case TaskDistribution::rad: return "rad";
  }
  return "?";
}

TaskDistribution parse_task_distribution(const std::string& name) {
  if (name == "reach") return TaskDistribution::reach;
  if (name == "reachavoid") return TaskDistribution::reach_avoid;
  if (name == "rad") return TaskDistribution::rad;
  throw Error(ErrorCode::invalid_config,
              "unknown task distribution '" + name +
                  "' (expected reach, reachavoid, or rad)");
}

void validate(const SamplerConfig& cfg) {
  if (cfg.max_states < 2) {
    throw Error(ErrorCode::invalid_config, "max_states must be >= 2");
  }
  if (cfg.alphabet_size < 1) {
    throw Error(ErrorCode::invalid_config, "alphabet_size must be >= 1");
  }
  if (cfg.stutter_promotion_prob < 0.0 || cfg.stutter_promotion_prob > 1.0) {
    throw Error(ErrorCode::invalid_config,
                "stutter_promotion_prob must lie in [0, 1]");
  }
  if (cfg.state_count_law == StateCountLaw::geometric &&
      (cfg.geometric_p <= 0.0 || cfg.geometric_p > 1.0)) {
    throw Error(ErrorCode::invalid_config, "geometric_p must lie in (0, 1]");
  }
  if (cfg.max_mutations < -1) {
    throw Error(ErrorCode::invalid_config, "max_mutations must be >= -1");
  }
}

int draw_state_count(SplitMix64& rng, const SamplerConfig& cfg) {
  if (cfg.state_count_law == StateCountLaw::uniform) {
    return rng.next_range(2, cfg.max_states);
  }
  // truncated geometric: 2 + number of failures before the first success,
  // clamped by stopping the flips once the cap is reached
  int n = 2;
  while (n < cfg.max_states && !rng.next_bernoulli(cfg.geometric_p)) ++n;
  return n;
}

namespace {

/// Uniform draw over {0..num_states-1} \ {exclude}.
int draw_other_state(SplitMix64& rng, int num_states, int exclude) {
  int r = rng.next_range(0, num_states - 2);
  return (r >= exclude) ? r + 1 : r;
}

struct ChainStep {
  Symbol goal;
  Symbol avoid;  // -1 when the step has no hard constraint
};

/// Lays out chain states 0..steps-1, accepting sink `steps`, and, when any
/// step carries an avoid symbol, a rejecting sink `steps + 1`. Promotions
/// turn leftover stutterers into advancing edges (or avoiding ones, when a
/// rejecting sink exists, with equal odds).
Dfa assemble_chain(SplitMix64& rng, const std::vector<ChainStep>& steps,
                   int alphabet_size, double promote_prob) {
  const int chain = static_cast<int>(steps.size());
  bool has_reject = false;
  for (const ChainStep& st : steps) has_reject |= st.avoid >= 0;
  const int accept = chain;
  const int reject = chain + 1;
  const int total = chain + (has_reject ? 2 : 1);

  std::vector<int> table(static_cast<size_t>(total) * alphabet_size);
  for (int i = 0; i < chain; ++i) {
    for (int s = 0; s < alphabet_size; ++s) {
      int to = i;
      if (s == steps[static_cast<size_t>(i)].goal) to = i + 1;
      if (s == steps[static_cast<size_t>(i)].avoid) to = reject;
      table[static_cast<size_t>(i) * alphabet_size + s] = to;
    }
  }
  for (int s = 0; s < alphabet_size; ++s) {
    table[static_cast<size_t>(accept) * alphabet_size + s] = accept;
    if (has_reject) {
      table[static_cast<size_t>(reject) * alphabet_size + s] = reject;
    }
  }

  for (int i = 0; i < chain; ++i) {
    for (int s = 0; s < alphabet_size; ++s) {
      auto& cell = table[static_cast<size_t>(i) * alphabet_size + s];
      if (cell != i) continue;  // not a stutterer
      if (promote_prob <= 0.0 || !rng.next_bernoulli(promote_prob)) continue;
      if (has_reject && rng.next_bernoulli(0.5)) {
        cell = reject;
      } else {
        cell = i + 1;
      }
    }
  }

  std::vector<bool> accepting(static_cast<size_t>(total), false);
  accepting[static_cast<size_t>(accept)] = true;
  return minimize(Dfa(total, alphabet_size, 0, std::move(table), accepting));
}

bool is_trivial(const Dfa& a) {
  return is_trivial_accepting(a) || is_trivial_rejecting(a);
}

}  // namespace

Dfa build_reach_chain(SplitMix64& rng, int num_states, int alphabet_size,
                      double promote_prob) {
  std::vector<ChainStep> steps(static_cast<size_t>(num_states - 1));
  for (auto& st : steps) {
    st.goal = rng.next_range(0, alphabet_size - 1);
    st.avoid = -1;
  }
  return assemble_chain(rng, steps, alphabet_size, promote_prob);
}

Dfa build_reach_avoid_chain(SplitMix64& rng, int num_states, int alphabet_size,
                            double promote_prob) {
  std::vector<ChainStep> steps(static_cast<size_t>(num_states - 1));
  for (auto& st : steps) {
    st.goal = rng.next_range(0, alphabet_size - 1);
    st.avoid = draw_other_state(rng, alphabet_size, st.goal);
  }
  return assemble_chain(rng, steps, alphabet_size, promote_prob);
}

Dfa build_rad_chain(SplitMix64& rng, int state_budget, int alphabet_size,
                    double promote_prob) {
  // the budget covers chain states, the accepting sink, and the rejecting
  // sink if any step wins the hard-constraint coin; the coin is only
  // flipped while the sink is still affordable
  std::vector<ChainStep> steps;
  int used = 1;  // accepting sink
  bool has_sink = false;
  while (used + 1 <= state_budget) {
    ++used;
    ChainStep st;
    st.goal = rng.next_range(0, alphabet_size - 1);
    st.avoid = -1;
    const bool sink_affordable = has_sink || used + 1 <= state_budget;
    if (alphabet_size >= 2 && sink_affordable && rng.next_bernoulli(0.5)) {
      st.avoid = draw_other_state(rng, alphabet_size, st.goal);
      if (!has_sink) {
        has_sink = true;
        ++used;
      }
    }
    steps.push_back(st);
  }
  return assemble_chain(rng, steps, alphabet_size, promote_prob);
}

Dfa sample_reach(const SamplerConfig& cfg) {
  validate(cfg);
  SplitMix64 rng(cfg.rng_seed);
  const int n = draw_state_count(rng, cfg);
  return build_reach_chain(rng, n, cfg.alphabet_size, cfg.stutter_promotion_prob);
}

Dfa sample_reach_avoid(const SamplerConfig& cfg) {
  validate(cfg);
  if (cfg.alphabet_size < 2) {
    throw Error(ErrorCode::invalid_config,
                "reach-avoid sampling needs alphabet_size >= 2");
  }
  SplitMix64 rng(cfg.rng_seed);
  const int n = draw_state_count(rng, cfg);
  return build_reach_avoid_chain(rng, n, cfg.alphabet_size,
                                 cfg.stutter_promotion_prob);
}

Dfa sample_rad(const SamplerConfig& cfg) {
  validate(cfg);
  SplitMix64 rng(cfg.rng_seed);
  const int budget = draw_state_count(rng, cfg);
  Dfa a = build_rad_chain(rng, budget, cfg.alphabet_size,
                          cfg.stutter_promotion_prob);

  const int cap = cfg.max_mutations >= 0 ? cfg.max_mutations : a.num_states();
  const int mutations = rng.next_range(0, cap);
  for (int i = 0; i < mutations; ++i) {
    const int n = a.num_states();
    const int k = a.alphabet_size();
    std::vector<int> movable;  // states that are not sinks
    for (int q = 0; q < n; ++q) {
      for (int s = 0; s < k; ++s) {
        if (a.transition(q, s) != q) {
          movable.push_back(q);
          break;
        }
      }
    }
    const int q = movable[rng.next_below(movable.size())];
    const int s = rng.next_range(0, k - 1);
    const int target = draw_other_state(rng, n, a.transition(q, s));

    std::vector<int> table = a.transition_table();
    table[static_cast<size_t>(q) * k + s] = target;
    std::vector<bool> accepting(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) {
      accepting[static_cast<size_t>(p)] = a.is_accepting(p);
      if (a.is_accepting(p)) {
        for (int t = 0; t < k; ++t) table[static_cast<size_t>(p) * k + t] = p;
      }
    }
    const Dfa mutated =
        minimize(Dfa(n, k, a.initial(), std::move(table), std::move(accepting)));
    if (!is_trivial(mutated)) a = mutated;
  }
  return a;
}

Dfa sample_task(TaskDistribution dist, const SamplerConfig& cfg) {
  switch (dist) {
    case TaskDistribution::reach: return sample_reach(cfg);
    case TaskDistribution::reach_avoid: return sample_reach_avoid(cfg);
    case TaskDistribution::rad: return sample_rad(cfg);
  }
  throw Error(ErrorCode::invalid_config, "unknown task distribution");
}

DfaVector sample_multi_agent(const SamplerConfig& cfg, int n_agents,
                             TaskDistribution inner) {
  validate(cfg);
  if (n_agents < 1) {
    throw Error(ErrorCode::invalid_config, "n_agents must be >= 1");
  }
  SplitMix64 rng(cfg.rng_seed);
  const int n_trivial = rng.next_range(0, n_agents - 1);

  std::vector<Dfa> entries;
  entries.reserve(static_cast<size_t>(n_agents));
  for (int i = 0; i < n_trivial; ++i) {
    entries.push_back(Dfa::trivial_accepting(cfg.alphabet_size));
  }
  for (int i = n_trivial; i < n_agents; ++i) {
    SamplerConfig sub = cfg;
    sub.rng_seed = rng.next_u64();
    entries.push_back(sample_task(inner, sub));
  }
  for (int i = n_agents - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
    std::swap(entries[static_cast<size_t>(i)], entries[static_cast<size_t>(j)]);
  }
  return DfaVector(std::move(entries));
}

}  // namespace taskgrid
