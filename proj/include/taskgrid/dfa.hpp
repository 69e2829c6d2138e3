#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace taskgrid {

using Symbol = int;
using Word = std::vector<Symbol>;

/// Immutable deterministic finite automaton over an integer token alphabet.
///
/// States are 0..num_states-1, symbols 0..alphabet_size-1. The transition
/// table is total. Values are cheap to copy and never mutate after
/// construction, so any number of workers may share them.
class Dfa {
 public:
  /// Validates totality and index ranges; throws Error(invalid_dfa).
  Dfa(int num_states, int alphabet_size, int initial,
      std::vector<int> transitions, std::vector<bool> accepting);

  /// Single accepting sink over the given alphabet.
  static Dfa trivial_accepting(int alphabet_size);
  /// Single rejecting sink over the given alphabet.
  static Dfa trivial_rejecting(int alphabet_size);

  int num_states() const { return num_states_; }
  int alphabet_size() const { return alphabet_size_; }
  int initial() const { return initial_; }
  int transition(int state, Symbol symbol) const {
    return transitions_[static_cast<size_t>(state) * alphabet_size_ + symbol];
  }
  bool is_accepting(int state) const { return accepting_[state]; }
  const std::vector<int>& transition_table() const { return transitions_; }
  const std::vector<bool>& accepting_states() const { return accepting_; }

  /// Structural equality (same labeling). Language equality is
  /// language_equivalent().
  bool operator==(const Dfa& other) const = default;

 private:
  int num_states_;
  int alphabet_size_;
  int initial_;
  std::vector<int> transitions_;  // row-major: [state * alphabet_size + symbol]
  std::vector<bool> accepting_;
};

/// Minimal DFA for L(a), unique up to isomorphism, emitted in canonical
/// BFS relabeling (initial state 0, edges explored in ascending symbol
/// order). Unreachable states are dropped first, then Moore-style naive
/// partition refinement merges equivalent states. Idempotent.
Dfa minimize(const Dfa& a);

/// Relabel states by breadth-first order from the initial state with
/// symbol-ascending edge exploration. Requires every state reachable.
Dfa canonical_relabel(const Dfa& a);

/// Advance the initial state by one symbol, then minimize.
/// Throws Error(invalid_symbol) for out-of-range symbols.
Dfa step(const Dfa& a, Symbol symbol);

/// Read a word and minimize: fold of step, or minimize(a) for the empty
/// word. For plan DFAs the result is trivially accepting iff a accepts
/// the word.
Dfa progress(const Dfa& a, const Word& word);

/// Run the lifted transition function without minimizing and report
/// whether the reached state is accepting.
bool accepts(const Dfa& a, const Word& word);

/// True iff every accepting state is a sink under all symbols.
bool is_plan(const Dfa& a);
/// Structural checks on the minimized form: a single accepting (resp.
/// rejecting) sink state.
bool is_trivial_accepting(const Dfa& a);
bool is_trivial_rejecting(const Dfa& a);

/// True iff the minimized canonical serializations coincide.
bool language_equivalent(const Dfa& a, const Dfa& b);

/// Flat little-endian serialization of (num_states, alphabet_size,
/// initial, transition table, accepting bitmask). Round-trips losslessly.
/// Two DFAs recognize the same language iff the serializations of their
/// minimized forms are byte-identical.
std::vector<uint8_t> serialize_dfa(const Dfa& a);
Dfa deserialize_dfa(const std::vector<uint8_t>& bytes);

/// A minimized DFA in canonical relabeling together with its flat byte
/// serialization, the byte-comparable witness for language equality.
struct CanonicalDfa {
  Dfa dfa;
  std::vector<uint8_t> bytes;
};

CanonicalDfa canonical(const Dfa& a);

/// Lowercase hex of the canonical serialization, one line per DFA.
std::string canonical_hex(const Dfa& a);

/// Ordered task vector, one DFA per agent, over one shared alphabet.
class DfaVector {
 public:
  DfaVector() = default;
  /// Throws Error(alphabet_mismatch) unless all entries share an alphabet.
  explicit DfaVector(std::vector<Dfa> entries);

  static DfaVector all_trivial_accepting(int n, int alphabet_size);

  int size() const { return static_cast<int>(entries_.size()); }
  const Dfa& operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
  const std::vector<Dfa>& entries() const { return entries_; }
  int alphabet_size() const;

  /// True iff every entry is the trivially accepting DFA.
  bool all_accepting() const;
  /// True iff every entry is trivially accepting or trivially rejecting,
  /// i.e. the vector is a terminal state of the task process.
  bool all_terminal() const;
  /// True iff some entry is trivially rejecting, which makes the joint
  /// objective unsatisfiable.
  bool any_rejecting() const;

  /// Element-wise minimize.
  DfaVector minimized() const;

  bool operator==(const DfaVector& other) const = default;

 private:
  std::vector<Dfa> entries_;
};

/// Element-wise step where a symbol is present; identity where absent.
/// Entries are expected minimized and stepped entries come back minimized.
DfaVector progress_vector(const DfaVector& v,
                          const std::vector<std::optional<Symbol>>& symbols);

std::string bytes_to_hex(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> hex_to_bytes(const std::string& hex);

}  // namespace taskgrid
