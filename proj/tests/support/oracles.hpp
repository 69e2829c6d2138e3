#pragma once

// Reference implementations used only by the test suites. These stay off
// the library's partition-refinement code path on purpose: minimality is
// re-established here by Myhill-Nerode pair marking, acceptance by a plain
// delta-star walk, and equivalence by a product-state search that returns a
// distinguishing word when one exists.

#include <optional>
#include <vector>

#include "taskgrid/dfa.hpp"
#include "taskgrid/rng.hpp"

namespace taskgrid::oracle {

/// Minimal DFA for L(a) via reachability restriction + table filling.
/// Output is NOT canonically relabeled; compare via state counts,
/// distinguishing_word, or canonical() applied on top.
Dfa minimal_dfa(const Dfa& a);

/// Number of states of minimal_dfa(a).
int minimal_state_count(const Dfa& a);

/// delta-star walk, no minimization anywhere.
bool word_accepted(const Dfa& a, const Word& w);

/// Shortest word accepted by exactly one of a and b, if the languages
/// differ. nullopt means L(a) == L(b). Exact (product-state BFS).
std::optional<Word> distinguishing_word(const Dfa& a, const Dfa& b);

/// Uniform-ish random DFA: states ~ U{1..max_states}, uniform transition
/// targets, each state accepting with probability 1/2, uniform initial.
Dfa random_dfa(SplitMix64& rng, int max_states, int alphabet_size);

/// random_dfa with accepting states rewired into sinks.
Dfa random_plan_dfa(SplitMix64& rng, int max_states, int alphabet_size);

/// Length ~ U{0..max_len}, symbols uniform.
Word random_word(SplitMix64& rng, int alphabet_size, int max_len);

}  // namespace taskgrid::oracle
