// Acceptance gate for the toolkit: nine standalone checks, each printed as
// a single pass/fail line with its measured evidence. Every check carries
// its own pinned seeds, sizes, tolerances, and a wall-clock budget, so a
// run is reproducible and the output diffable. Exit status is the
// conjunction of the nine verdicts.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "taskgrid/assign.hpp"
#include "taskgrid/dfa.hpp"
#include "taskgrid/encoder.hpp"
#include "taskgrid/enumerate.hpp"
#include "taskgrid/exhaustive.hpp"
#include "taskgrid/fixtures.hpp"
#include "taskgrid/product.hpp"
#include "taskgrid/qlearn.hpp"
#include "taskgrid/rng.hpp"
#include "taskgrid/sampler.hpp"
#include "taskgrid/solve.hpp"
#include "taskgrid/tasks.hpp"
#include "taskgrid/trace_io.hpp"

namespace {

using namespace taskgrid;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buffer[512];
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return std::string(buffer);
}

// ---------------------------------------------------------------------
// 1. Minimization: on seeded random automata the minimized machine keeps
//    the language (checked word by word against a raw delta-star walk of
//    the original) and lands on exactly the state count the independent
//    pair-marking oracle reports.

constexpr int kMinimizeDfas = 1000;
constexpr int kMinimizeWordsPerDfa = 10000;
constexpr int kMinimizeMaxStates = 10;
constexpr int kMinimizeMaxWordLen = 12;
constexpr uint64_t kMinimizeSeed = 0x5EED0001;

Outcome check_minimization() {
  SplitMix64 rng(kMinimizeSeed);
  long long words = 0;
  for (int i = 0; i < kMinimizeDfas; ++i) {
    const int alphabet = 1 + static_cast<int>(rng.next_below(6));
    const Dfa a = oracle::random_dfa(rng, kMinimizeMaxStates, alphabet);
    const Dfa m = minimize(a);
    const int want = oracle::minimal_state_count(a);
    if (m.num_states() != want) {
      return {false, fmt("dfa %d minimized to %d states, oracle says %d", i,
                         m.num_states(), want)};
    }
    for (int j = 0; j < kMinimizeWordsPerDfa; ++j) {
      const Word w = oracle::random_word(rng, alphabet, kMinimizeMaxWordLen);
      ++words;
      if (accepts(m, w) != oracle::word_accepted(a, w)) {
        return {false, fmt("dfa %d disagrees with the oracle on word %d", i, j)};
      }
    }
  }
  return {true, fmt("%d dfas, %lld words, 0 mismatches", kMinimizeDfas, words)};
}

// ---------------------------------------------------------------------
// 2. Progression: reading u then v equals reading the concatenation, as
//    canonical bytes; and on plan tasks a word is accepted exactly when
//    its residual is the trivially accepting machine. Acceptance on the
//    left side comes from the oracle's raw walk, not the library.

constexpr int kProgressTriples = 500;
constexpr int kProgressMaxWordLen = 6;
constexpr uint64_t kProgressSeed = 0x5EED0002;

Outcome check_progression() {
  SplitMix64 rng(kProgressSeed);
  for (int i = 0; i < kProgressTriples; ++i) {
    SamplerConfig cfg;
    cfg.alphabet_size = 2 + i % 5;
    cfg.rng_seed = SplitMix64::derive_seed(kProgressSeed, static_cast<uint64_t>(i));
    const auto dist = static_cast<TaskDistribution>(i % 3);
    const Dfa a = sample_task(dist, cfg);
    const Word u = oracle::random_word(rng, cfg.alphabet_size, kProgressMaxWordLen);
    const Word v = oracle::random_word(rng, cfg.alphabet_size, kProgressMaxWordLen);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());

    const CanonicalDfa folded = canonical(progress(progress(a, u), v));
    const CanonicalDfa direct = canonical(progress(a, uv));
    if (folded.bytes != direct.bytes) {
      return {false, fmt("triple %d: progress(progress(a,u),v) != progress(a,uv)", i)};
    }
    if (oracle::word_accepted(a, uv) != is_trivial_accepting(progress(a, uv))) {
      return {false, fmt("triple %d: acceptance and residual disagree", i)};
    }
  }
  return {true, fmt("%d triples, both laws exact", kProgressTriples)};
}

// ---------------------------------------------------------------------
// 3. Exact planning: on every shipped micro fixture the greedy policy from
//    value iteration succeeds from an initial arrangement exactly when the
//    history-level exhaustive search (raw automata walks, no product
//    model) finds any winning action sequence, and the aggregate rate hits
//    the hand-derived optimum.

constexpr double kPlanGamma = 0.999;

Outcome check_exact_planning() {
  int arrangements = 0;
  for (const Fixture& f : micro_fixtures()) {
    const EnumeratedGame game = enumerate_product(f.layout, f.tasks);
    const SolveResult vi = value_iteration(game, kPlanGamma);
    int wins = 0;
    for (const int start : game.initial_states) {
      ++arrangements;
      const bool planned = greedy_success(game, vi.greedy, start);
      const bool possible = exhaustive_plan_success(
          f.layout, f.tasks.entries(),
          game.states[static_cast<size_t>(start)].grid.positions);
      if (planned != possible) {
        return {false, fmt("%s: planner and exhaustive search disagree",
                           f.name.c_str())};
      }
      wins += planned ? 1 : 0;
    }
    const double rate = static_cast<double>(wins) /
                        static_cast<double>(game.initial_states.size());
    if (rate != f.optimal_success) {
      return {false, fmt("%s: rate %.6f, expected %.6f", f.name.c_str(), rate,
                         f.optimal_success)};
    }
  }
  return {true, fmt("%zu fixtures, %d arrangements, planner == search == optimum",
                    micro_fixtures().size(), arrangements)};
}

// ---------------------------------------------------------------------
// 4. Shaping invariance: for every fixture and every agent, the greedy
//    policy of the potential-shaped action values succeeds from each
//    initial arrangement exactly when the plain team-reward policy does.

constexpr double kShapeGamma = 0.99;

Outcome check_shaping_invariance() {
  int policies = 0;
  for (const Fixture& f : micro_fixtures()) {
    const EnumeratedGame game = enumerate_product(f.layout, f.tasks);
    const QSolveResult team = q_iteration_team(game, kShapeGamma);
    for (int agent = 0; agent < game.num_agents; ++agent) {
      const QSolveResult shaped = q_iteration_shaped(game, agent, kShapeGamma);
      ++policies;
      for (const int start : game.initial_states) {
        if (greedy_success(game, shaped.greedy, start) !=
            greedy_success(game, team.greedy, start)) {
          return {false, fmt("%s agent %d: shaped and plain greedy differ",
                             f.name.c_str(), agent)};
        }
      }
    }
  }
  return {true, fmt("%zu fixtures, %d shaped policies, success identical",
                    micro_fixtures().size(), policies)};
}

// ---------------------------------------------------------------------
// 5. Shaping benefit: paired learning runs on the two-goal buttons map,
//    five seeds, identical budgets, the only difference being the shaping
//    term. Shaped learners must match the planner optimum on at least four
//    seeds and their mean success must not trail the sparse mean.

constexpr int kLearnEpisodes = 3000;
constexpr double kLearnAlpha = 0.3;
constexpr double kLearnGamma = 0.99;
constexpr int kLearnEvalEpisodes = 40;
constexpr uint64_t kLearnEvalSeed = 999;
constexpr int kLearnSeeds = 5;
constexpr int kLearnNeedOptimal = 4;

Outcome check_shaping_learning() {
  const Fixture& fix = fixture_by_name("buttons_split");
  const EnumeratedGame game = enumerate_product(fix.layout, fix.tasks);
  const SolveResult vi = value_iteration(game, kPlanGamma);
  int optimum_wins = 0;
  for (const int start : game.initial_states) {
    optimum_wins += greedy_success(game, vi.greedy, start) ? 1 : 0;
  }
  const double optimum = static_cast<double>(optimum_wins) /
                         static_cast<double>(game.initial_states.size());

  double mean[2] = {0.0, 0.0};
  int at_optimum = 0;
  for (int shaped = 0; shaped < 2; ++shaped) {
    for (uint64_t seed = 1; seed <= kLearnSeeds; ++seed) {
      QLearnConfig cfg;
      cfg.episodes = kLearnEpisodes;
      cfg.alpha = kLearnAlpha;
      cfg.gamma = kLearnGamma;
      cfg.epsilon_start = 1.0;
      cfg.epsilon_end = 0.05;
      cfg.shaped = shaped == 1;
      cfg.seed = seed;
      const QTable table = q_learn(fix.layout, fix.tasks, cfg);
      const EvalResult r = estimate_success(fix.layout, fix.tasks, table,
                                            kLearnEvalEpisodes, kLearnEvalSeed);
      mean[shaped] += r.success_rate / kLearnSeeds;
      if (shaped == 1 && r.success_rate == optimum) ++at_optimum;
    }
  }
  if (at_optimum < kLearnNeedOptimal) {
    return {false, fmt("shaped hit the optimum on %d/%d seeds, need %d",
                       at_optimum, kLearnSeeds, kLearnNeedOptimal)};
  }
  if (mean[1] < mean[0]) {
    return {false, fmt("shaped mean %.3f trails sparse mean %.3f", mean[1], mean[0])};
  }
  return {true, fmt("shaped %.2f vs sparse %.2f, optimum on %d/%d seeds", mean[1],
                    mean[0], at_optimum, kLearnSeeds)};
}

// ---------------------------------------------------------------------
// 6. Codes: across sampled pairs, half of them language-preserving
//    re-presentations (relabeled, padded with unreachable states), code
//    equality must coincide both with byte equality of the canonical
//    minimal forms and with the independent product-search equivalence
//    oracle.

constexpr int kCodePairs = 10000;
constexpr uint64_t kCodeSeed = 0x5EED0006;

Dfa represent_differently(const Dfa& a, SplitMix64& rng) {
  const int n = a.num_states();
  const int alphabet = a.alphabet_size();
  const int pad = 1 + static_cast<int>(rng.next_below(3));
  const int m = n + pad;
  std::vector<int> slot(static_cast<size_t>(m));
  std::iota(slot.begin(), slot.end(), 0);
  for (int i = m - 1; i > 0; --i) {
    std::swap(slot[static_cast<size_t>(i)],
              slot[rng.next_below(static_cast<uint64_t>(i) + 1)]);
  }
  const std::vector<int> table = a.transition_table();
  const std::vector<bool> accepting = a.accepting_states();
  std::vector<int> out_table(static_cast<size_t>(m * alphabet), 0);
  std::vector<bool> out_accepting(static_cast<size_t>(m));
  for (int s = 0; s < n; ++s) {
    out_accepting[static_cast<size_t>(slot[static_cast<size_t>(s)])] =
        accepting[static_cast<size_t>(s)];
    for (int sym = 0; sym < alphabet; ++sym) {
      out_table[static_cast<size_t>(slot[static_cast<size_t>(s)] * alphabet + sym)] =
          slot[static_cast<size_t>(table[static_cast<size_t>(s * alphabet + sym)])];
    }
  }
  // pad states point wherever; nothing reaches them, so the language holds
  for (int s = n; s < m; ++s) {
    out_accepting[static_cast<size_t>(slot[static_cast<size_t>(s)])] =
        rng.next_below(2) == 1;
    for (int sym = 0; sym < alphabet; ++sym) {
      out_table[static_cast<size_t>(slot[static_cast<size_t>(s)] * alphabet + sym)] =
          static_cast<int>(rng.next_below(static_cast<uint64_t>(m)));
    }
  }
  return Dfa(m, alphabet, slot[static_cast<size_t>(a.initial())], out_table,
             out_accepting);
}

Outcome check_code_language() {
  SplitMix64 rng(kCodeSeed);
  int equal_pairs = 0;
  for (int i = 0; i < kCodePairs; ++i) {
    SamplerConfig cfg;
    cfg.alphabet_size = 2 + i % 3;
    cfg.rng_seed = SplitMix64::derive_seed(kCodeSeed, static_cast<uint64_t>(2 * i));
    const Dfa a = sample_task(static_cast<TaskDistribution>(i % 3), cfg);
    Dfa b = a;
    if (rng.next_below(2) == 0) {
      b = represent_differently(a, rng);
    } else {
      cfg.rng_seed = SplitMix64::derive_seed(kCodeSeed, static_cast<uint64_t>(2 * i + 1));
      b = sample_task(static_cast<TaskDistribution>(i % 3), cfg);
    }
    const bool codes_equal = encode(a) == encode(b);
    const bool bytes_equal = canonical(minimize(a)).bytes == canonical(minimize(b)).bytes;
    const bool languages_equal = !oracle::distinguishing_word(a, b).has_value();
    if (codes_equal != bytes_equal || codes_equal != languages_equal) {
      return {false, fmt("pair %d: codes %d, canonical bytes %d, oracle %d", i,
                         codes_equal, bytes_equal, languages_equal)};
    }
    equal_pairs += codes_equal ? 1 : 0;
  }
  return {true, fmt("%d pairs (%d equal-language), 0 violations", kCodePairs,
                    equal_pairs)};
}

// ---------------------------------------------------------------------
// 7. Assignment: on the crossed-rooms map the permutation the search
//    returns must beat or match every other permutation's exhaustively
//    established success; on the symmetric corridor, optimal and uniformly
//    random assignment must agree within Monte Carlo standard error.

constexpr int kAssignEpisodes = 400;
constexpr uint64_t kAssignSeed = 0x5EED0007;
constexpr double kAssignStderrZ = 2.0;

DfaVector permute_tasks(const DfaVector& tasks, const std::vector<int>& permutation) {
  std::vector<Dfa> entries;
  entries.reserve(permutation.size());
  for (const int j : permutation) {
    entries.push_back(tasks[j]);
  }
  return DfaVector(std::move(entries));
}

Outcome check_assignment() {
  // crossed rooms: searched optimum dominates every alternative outright
  const Fixture& rooms = fixture_by_name("sealed_rooms");
  const AssignmentSearch search =
      assign_optimal(rooms.layout, rooms.tasks, exact_values(kPlanGamma), 0);
  const bool best_wins = exhaustive_plan_success(
      rooms.layout, permute_tasks(rooms.tasks, search.best.permutation).entries(),
      rooms.layout.spawn_cells());
  for (const Assignment& other : search.all) {
    const bool other_wins = exhaustive_plan_success(
        rooms.layout, permute_tasks(rooms.tasks, other.permutation).entries(),
        rooms.layout.spawn_cells());
    if (other_wins && !best_wins) {
      return {false, "a dominated permutation beats the searched optimum"};
    }
  }
  if (!best_wins) {
    return {false, "the searched optimum does not solve the crossed rooms"};
  }

  // symmetric corridor: random assignment draws, optimal play per draw
  const Fixture& corridor = fixture_by_name("pairing_corridor");
  const AssignmentSearch sym =
      assign_optimal(corridor.layout, corridor.tasks, exact_values(kPlanGamma), 0);
  std::vector<EnumeratedGame> games;
  std::vector<SolveResult> plans;
  games.reserve(sym.all.size());
  for (const Assignment& a : sym.all) {
    games.push_back(enumerate_product(corridor.layout,
                                      permute_tasks(corridor.tasks, a.permutation)));
    plans.push_back(value_iteration(games.back(), kPlanGamma));
  }
  size_t best_index = 0;
  for (size_t i = 0; i < sym.all.size(); ++i) {
    if (sym.all[i].permutation == sym.best.permutation) best_index = i;
  }
  SplitMix64 draw(kAssignSeed);
  int optimal_wins = 0;
  int random_wins = 0;
  for (int ep = 0; ep < kAssignEpisodes; ++ep) {
    const size_t pick = draw.next_below(games.size());
    optimal_wins += greedy_success(games[best_index], plans[best_index].greedy,
                                   games[best_index].initial_states[0])
                        ? 1
                        : 0;
    random_wins +=
        greedy_success(games[pick], plans[pick].greedy, games[pick].initial_states[0])
            ? 1
            : 0;
  }
  const double n = kAssignEpisodes;
  const double p_opt = optimal_wins / n;
  const double p_rand = random_wins / n;
  const double se = std::sqrt(p_opt * (1.0 - p_opt) / n + p_rand * (1.0 - p_rand) / n);
  if (std::abs(p_opt - p_rand) > kAssignStderrZ * se + 1e-12) {
    return {false, fmt("symmetric corridor: optimal %.3f vs random %.3f beyond error",
                       p_opt, p_rand)};
  }
  return {true, fmt("rooms dominated (best solves, identity cannot); corridor %.2f "
                    "vs %.2f within error",
                    p_opt, p_rand)};
}

// ---------------------------------------------------------------------
// 8. Sampler laws: per distribution, every draw is a minimized (oracle
//    state count), non-trivial plan automaton inside its documented state
//    bound; the team sampler always leaves at least one real goal and its
//    trivial count covers {0..n-1}; and equal seeds give equal bytes.

constexpr int kSamplerDraws = 100000;
constexpr int kSamplerDeterminismDraws = 2000;
constexpr int kSamplerTeamSize = 4;
constexpr uint64_t kSamplerSeed = 0x5EED0008;

Outcome check_sampler_laws() {
  for (int d = 0; d < 3; ++d) {
    const auto dist = static_cast<TaskDistribution>(d);
    for (int i = 0; i < kSamplerDraws; ++i) {
      SamplerConfig cfg;
      cfg.alphabet_size = 2 + i % 5;
      cfg.rng_seed = SplitMix64::derive_seed(
          kSamplerSeed, static_cast<uint64_t>(d * kSamplerDraws + i));
      const Dfa a = sample_task(dist, cfg);
      // reach-avoid keeps its rejecting sink outside the state budget
      const int bound = dist == TaskDistribution::reach_avoid ? cfg.max_states + 1
                                                              : cfg.max_states;
      if (a.num_states() > bound || !is_plan(a) || is_trivial_accepting(a) ||
          is_trivial_rejecting(a) ||
          a.num_states() != oracle::minimal_state_count(a)) {
        return {false, fmt("%s draw %d violates the output laws",
                           task_distribution_name(dist), i)};
      }
    }
  }

  std::set<int> trivial_counts;
  for (int i = 0; i < kSamplerDraws; ++i) {
    SamplerConfig cfg;
    cfg.alphabet_size = 3;
    cfg.rng_seed = SplitMix64::derive_seed(kSamplerSeed ^ 0xFF,
                                           static_cast<uint64_t>(i));
    const DfaVector team =
        sample_multi_agent(cfg, kSamplerTeamSize, static_cast<TaskDistribution>(i % 3));
    int trivial = 0;
    for (int agent = 0; agent < kSamplerTeamSize; ++agent) {
      trivial += is_trivial_accepting(team[agent]) ? 1 : 0;
    }
    if (trivial >= kSamplerTeamSize) {
      return {false, fmt("team draw %d has no non-trivial entry", i)};
    }
    trivial_counts.insert(trivial);
  }
  for (int c = 0; c < kSamplerTeamSize; ++c) {
    if (trivial_counts.count(c) == 0) {
      return {false, fmt("trivial count %d never drawn across %d teams", c,
                         kSamplerDraws)};
    }
  }

  for (int i = 0; i < kSamplerDeterminismDraws; ++i) {
    SamplerConfig cfg;
    cfg.alphabet_size = 2 + i % 5;
    cfg.rng_seed = SplitMix64::derive_seed(kSamplerSeed ^ 0xD0,
                                           static_cast<uint64_t>(i));
    const auto dist = static_cast<TaskDistribution>(i % 3);
    if (serialize_dfa(sample_task(dist, cfg)) != serialize_dfa(sample_task(dist, cfg))) {
      return {false, fmt("draw %d is not byte-deterministic", i)};
    }
  }
  return {true, fmt("3x%d single draws, %d team draws, %d determinism pairs",
                    kSamplerDraws, kSamplerDraws, kSamplerDeterminismDraws)};
}

// ---------------------------------------------------------------------
// 9. Traces: random-policy episodes written to trace files and re-derived
//    step by step through the product model must reproduce every reward
//    bit for bit, and each agent's shaped return must telescope to the
//    team return plus the discounted potential difference.

constexpr int kTraceEpisodes = 100;
constexpr double kTraceGamma = 0.99;
constexpr double kTelescopeTolerance = 1e-12;
constexpr uint64_t kTraceSeed = 0x5EED0009;

Outcome check_trace_replay() {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "taskgrid_acceptance_traces";
  std::filesystem::create_directories(dir);
  const char* names[4] = {"buttons_pair", "buttons_split", "region_tight",
                          "avoid_detour"};
  const JointPolicy random_policy = [](const ProductState& ps, SplitMix64& rng) {
    JointAction joint(static_cast<size_t>(ps.grid.positions.size()));
    for (auto& action : joint) {
      action = static_cast<Action>(rng.next_below(kNumActions));
    }
    return joint;
  };
  for (int ep = 0; ep < kTraceEpisodes; ++ep) {
    const Fixture& f = fixture_by_name(names[ep % 4]);
    const uint64_t seed = SplitMix64::derive_seed(kTraceSeed, static_cast<uint64_t>(ep));
    const RolloutResult episode =
        rollout(f.layout, f.tasks, random_policy, kTraceGamma, seed);

    const std::filesystem::path file = dir / fmt("episode_%03d.jsonl", ep);
    {
      std::ofstream out(file, std::ios::binary);
      out << trace_to_jsonl(f.layout, episode, kTraceGamma, seed);
    }
    std::ifstream in(file, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const Trace trace = parse_trace(buffer.str());

    std::string why;
    if (!replay_matches(f.layout, trace, &why)) {
      std::filesystem::remove_all(dir);
      return {false, fmt("episode %d replay: %s", ep, why.c_str())};
    }

    // independent re-derivation of the rewards from the parsed actions
    ProductState ps = product_reset(f.layout, f.tasks, seed);
    for (size_t t = 0; t < trace.steps.size(); ++t) {
      const StepOutcome out = product_step(f.layout, ps, trace.steps[t].actions,
                                           kTraceGamma);
      if (out.team_reward != trace.steps[t].team_reward ||
          out.shaped_rewards != trace.steps[t].shaped_rewards) {
        std::filesystem::remove_all(dir);
        return {false, fmt("episode %d step %zu rewards drifted", ep, t)};
      }
      ps = out.next;
    }

    const DfaVector& start_tasks = episode.initial.tasks;
    const DfaVector& end_tasks =
        episode.steps.empty() ? episode.initial.tasks : episode.steps.back().next.tasks;
    const double horizon = std::pow(kTraceGamma, episode.episode_length);
    for (size_t i = 0; i < episode.shaped_returns.size(); ++i) {
      const int agent = static_cast<int>(i);
      const double want = episode.team_return +
                          horizon * potential(end_tasks, agent) -
                          potential(start_tasks, agent);
      if (std::abs(episode.shaped_returns[i] - want) > kTelescopeTolerance) {
        std::filesystem::remove_all(dir);
        return {false, fmt("episode %d agent %d telescoping off by %.3e", ep, agent,
                           std::abs(episode.shaped_returns[i] - want))};
      }
    }
  }
  std::filesystem::remove_all(dir);
  return {true, fmt("%d episodes over 4 maps, rewards bit-exact, telescoping <= %g",
                    kTraceEpisodes, kTelescopeTolerance)};
}

struct Criterion {
  const char* label;
  Outcome (*check)();
  double budget_seconds;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"minimization preserves language at oracle-minimal size", check_minimization, 30},
      {"progression folds over words and decides acceptance", check_progression, 10},
      {"exact planner matches exhaustive search on every fixture", check_exact_planning, 300},
      {"shaped and plain optima succeed identically", check_shaping_invariance, 120},
      {"shaped learners reach the planner optimum", check_shaping_learning, 600},
      {"task codes collide exactly on equal languages", check_code_language, 20},
      {"assignment search dominates, symmetric case stays even", check_assignment, 300},
      {"samplers emit minimized non-trivial plans, byte-stable", check_sampler_laws, 60},
      {"traces replay bit-exactly and shaping telescopes", check_trace_replay, 30},
  };

  bool all_pass = true;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, fmt("exception: %s", e.what())};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += fmt("; over the %.0fs budget", c.budget_seconds);
    }
    all_pass = all_pass && outcome.pass;
    std::printf("%d. %-58s %s  (%s; %.1fs)\n", index, c.label,
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(), seconds);
  }
  std::printf("%s\n", all_pass ? "acceptance: all criteria pass"
                               : "acceptance: FAILURES above");
  return all_pass ? 0 : 1;
}
