#pragma once

#include <vector>

#include "taskgrid/dfa.hpp"

namespace taskgrid {

/// Hand-built task automata over token alphabets. All results are minimized
/// plan DFAs (accepting states are sinks).

/// Accept once `goal` has been observed.
Dfa reach_dfa(Symbol goal, int alphabet_size);

/// Accept once the goals have been observed in order (repeats of already
/// cleared goals are harmless; an empty sequence gives the trivially
/// accepting DFA).
Dfa reach_sequence_dfa(const std::vector<Symbol>& goals, int alphabet_size);

/// Accept once `goal` is observed, unless a symbol in `avoid` is observed
/// first, which rejects forever.
Dfa reach_avoid_dfa(Symbol goal, const std::vector<Symbol>& avoid,
                    int alphabet_size);

}  // namespace taskgrid
