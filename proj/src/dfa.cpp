#include "taskgrid/dfa.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <sstream>

#include "taskgrid/errors.hpp"

namespace taskgrid {

Dfa::Dfa(int num_states, int alphabet_size, int initial,
         std::vector<int> transitions, std::vector<bool> accepting)
    : num_states_(num_states),
      alphabet_size_(alphabet_size),
      initial_(initial),
      transitions_(std::move(transitions)),
      accepting_(std::move(accepting)) {
  if (num_states_ < 1) {
    throw Error(ErrorCode::invalid_dfa, "num_states must be >= 1");
  }
  if (alphabet_size_ < 1) {
    throw Error(ErrorCode::invalid_dfa, "alphabet_size must be >= 1");
  }
  if (initial_ < 0 || initial_ >= num_states_) {
    throw Error(ErrorCode::invalid_dfa, "initial state out of range");
  }
  if (transitions_.size() !=
      static_cast<size_t>(num_states_) * static_cast<size_t>(alphabet_size_)) {
    throw Error(ErrorCode::invalid_dfa, "transition table is not total");
  }
  for (int t : transitions_) {
    if (t < 0 || t >= num_states_) {
      throw Error(ErrorCode::invalid_dfa, "transition target out of range");
    }
  }
  if (accepting_.size() != static_cast<size_t>(num_states_)) {
    throw Error(ErrorCode::invalid_dfa, "accepting flags must cover all states");
  }
}

Dfa Dfa::trivial_accepting(int alphabet_size) {
  return Dfa(1, alphabet_size, 0, std::vector<int>(alphabet_size, 0), {true});
}

Dfa Dfa::trivial_rejecting(int alphabet_size) {
  return Dfa(1, alphabet_size, 0, std::vector<int>(alphabet_size, 0), {false});
}

namespace {

// Restrict to states reachable from the initial state, preserving order.
Dfa drop_unreachable(const Dfa& a) {
  const int k = a.alphabet_size();
  std::vector<int> new_id(a.num_states(), -1);
  std::vector<int> order;
  order.reserve(a.num_states());
  std::deque<int> queue{a.initial()};
  new_id[a.initial()] = 0;
  order.push_back(a.initial());
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int s = 0; s < k; ++s) {
      int to = a.transition(q, s);
      if (new_id[to] < 0) {
        new_id[to] = static_cast<int>(order.size());
        order.push_back(to);
        queue.push_back(to);
      }
    }
  }
  const int n = static_cast<int>(order.size());
  if (n == a.num_states()) {
    return a;
  }
  std::vector<int> transitions(static_cast<size_t>(n) * k);
  std::vector<bool> accepting(n);
  for (int q = 0; q < n; ++q) {
    int old_state = order[q];
    accepting[q] = a.is_accepting(old_state);
    for (int s = 0; s < k; ++s) {
      transitions[static_cast<size_t>(q) * k + s] = new_id[a.transition(old_state, s)];
    }
  }
  return Dfa(n, k, 0, std::move(transitions), std::move(accepting));
}

}  // namespace

Dfa canonical_relabel(const Dfa& a) {
  const int k = a.alphabet_size();
  std::vector<int> new_id(a.num_states(), -1);
  std::vector<int> order;
  order.reserve(a.num_states());
  std::deque<int> queue{a.initial()};
  new_id[a.initial()] = 0;
  order.push_back(a.initial());
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int s = 0; s < k; ++s) {
      int to = a.transition(q, s);
      if (new_id[to] < 0) {
        new_id[to] = static_cast<int>(order.size());
        order.push_back(to);
        queue.push_back(to);
      }
    }
  }
  if (static_cast<int>(order.size()) != a.num_states()) {
    throw Error(ErrorCode::invalid_dfa,
                "canonical_relabel requires all states reachable");
  }
  std::vector<int> transitions(static_cast<size_t>(a.num_states()) * k);
  std::vector<bool> accepting(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) {
    int old_state = order[q];
    accepting[q] = a.is_accepting(old_state);
    for (int s = 0; s < k; ++s) {
      transitions[static_cast<size_t>(q) * k + s] = new_id[a.transition(old_state, s)];
    }
  }
  return Dfa(a.num_states(), k, 0, std::move(transitions), std::move(accepting));
}

Dfa minimize(const Dfa& input) {
  const Dfa a = drop_unreachable(input);
  const int n = a.num_states();
  const int k = a.alphabet_size();

  // Moore-style naive partition refinement: start from the
  // accepting/rejecting split and repeatedly split blocks by the block
  // signature of their successors until no block splits.
  std::vector<int> block(n);
  for (int q = 0; q < n; ++q) {
    block[q] = a.is_accepting(q) ? 1 : 0;
  }

  bool changed = true;
  while (changed) {
    // Signature of q: (current block, blocks of successors per symbol).
    std::map<std::vector<int>, int> signature_to_block;
    std::vector<int> next_block(n);
    std::vector<int> sig(k + 1);
    for (int q = 0; q < n; ++q) {
      sig[0] = block[q];
      for (int s = 0; s < k; ++s) {
        sig[s + 1] = block[a.transition(q, s)];
      }
      auto [it, inserted] = signature_to_block.emplace(
          sig, static_cast<int>(signature_to_block.size()));
      next_block[q] = it->second;
    }
    // Block counts can only grow; stop at the fixpoint.
    int old_count = *std::max_element(block.begin(), block.end()) + 1;
    changed = static_cast<int>(signature_to_block.size()) != old_count;
    block = std::move(next_block);
  }

  const int m = *std::max_element(block.begin(), block.end()) + 1;
  std::vector<int> representative(m, -1);
  for (int q = 0; q < n; ++q) {
    if (representative[block[q]] < 0) {
      representative[block[q]] = q;
    }
  }
  std::vector<int> transitions(static_cast<size_t>(m) * k);
  std::vector<bool> accepting(m);
  for (int b = 0; b < m; ++b) {
    int q = representative[b];
    accepting[b] = a.is_accepting(q);
    for (int s = 0; s < k; ++s) {
      transitions[static_cast<size_t>(b) * k + s] = block[a.transition(q, s)];
    }
  }
  Dfa quotient(m, k, block[a.initial()], std::move(transitions), std::move(accepting));
  return canonical_relabel(quotient);
}

Dfa step(const Dfa& a, Symbol symbol) {
  if (symbol < 0 || symbol >= a.alphabet_size()) {
    std::ostringstream msg;
    msg << "symbol " << symbol << " out of range for alphabet of size "
        << a.alphabet_size();
    throw Error(ErrorCode::invalid_symbol, msg.str());
  }
  Dfa advanced(a.num_states(), a.alphabet_size(), a.transition(a.initial(), symbol),
               a.transition_table(), a.accepting_states());
  return minimize(advanced);
}

Dfa progress(const Dfa& a, const Word& word) {
  Dfa current = minimize(a);
  for (Symbol symbol : word) {
    current = step(current, symbol);
  }
  return current;
}

bool accepts(const Dfa& a, const Word& word) {
  int q = a.initial();
  for (Symbol symbol : word) {
    if (symbol < 0 || symbol >= a.alphabet_size()) {
      std::ostringstream msg;
      msg << "symbol " << symbol << " out of range for alphabet of size "
          << a.alphabet_size();
      throw Error(ErrorCode::invalid_symbol, msg.str());
    }
    q = a.transition(q, symbol);
  }
  return a.is_accepting(q);
}

bool is_plan(const Dfa& a) {
  for (int q = 0; q < a.num_states(); ++q) {
    if (!a.is_accepting(q)) {
      continue;
    }
    for (int s = 0; s < a.alphabet_size(); ++s) {
      if (a.transition(q, s) != q) {
        return false;
      }
    }
  }
  return true;
}

bool is_trivial_accepting(const Dfa& a) {
  return a.num_states() == 1 && a.is_accepting(0);
}

bool is_trivial_rejecting(const Dfa& a) {
  return a.num_states() == 1 && !a.is_accepting(0);
}

bool language_equivalent(const Dfa& a, const Dfa& b) {
  return serialize_dfa(minimize(a)) == serialize_dfa(minimize(b));
}

namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t value) {
  out.push_back(static_cast<uint8_t>(value & 0xFF));
  out.push_back(static_cast<uint8_t>((value >> 8) & 0xFF));
  out.push_back(static_cast<uint8_t>((value >> 16) & 0xFF));
  out.push_back(static_cast<uint8_t>((value >> 24) & 0xFF));
}

uint32_t get_u32(const std::vector<uint8_t>& in, size_t& pos) {
  if (pos + 4 > in.size()) {
    throw Error(ErrorCode::invalid_dfa, "truncated DFA serialization");
  }
  uint32_t value = static_cast<uint32_t>(in[pos]) |
                   (static_cast<uint32_t>(in[pos + 1]) << 8) |
                   (static_cast<uint32_t>(in[pos + 2]) << 16) |
                   (static_cast<uint32_t>(in[pos + 3]) << 24);
  pos += 4;
  return value;
}

}  // namespace

std::vector<uint8_t> serialize_dfa(const Dfa& a) {
  std::vector<uint8_t> out;
  out.reserve(12 + 4 * a.transition_table().size() + (a.num_states() + 7) / 8);
  put_u32(out, static_cast<uint32_t>(a.num_states()));
  put_u32(out, static_cast<uint32_t>(a.alphabet_size()));
  put_u32(out, static_cast<uint32_t>(a.initial()));
  for (int t : a.transition_table()) {
    put_u32(out, static_cast<uint32_t>(t));
  }
  // Accepting set as an LSB-first bitmask.
  uint8_t current = 0;
  for (int q = 0; q < a.num_states(); ++q) {
    if (a.is_accepting(q)) {
      current |= static_cast<uint8_t>(1u << (q % 8));
    }
    if (q % 8 == 7) {
      out.push_back(current);
      current = 0;
    }
  }
  if (a.num_states() % 8 != 0) {
    out.push_back(current);
  }
  return out;
}

Dfa deserialize_dfa(const std::vector<uint8_t>& bytes) {
  size_t pos = 0;
  int num_states = static_cast<int>(get_u32(bytes, pos));
  int alphabet_size = static_cast<int>(get_u32(bytes, pos));
  int initial = static_cast<int>(get_u32(bytes, pos));
  if (num_states < 1 || alphabet_size < 1) {
    throw Error(ErrorCode::invalid_dfa, "corrupt DFA serialization header");
  }
  std::vector<int> transitions(static_cast<size_t>(num_states) * alphabet_size);
  for (int& t : transitions) {
    t = static_cast<int>(get_u32(bytes, pos));
  }
  std::vector<bool> accepting(num_states);
  const size_t mask_bytes = (static_cast<size_t>(num_states) + 7) / 8;
  if (pos + mask_bytes != bytes.size()) {
    throw Error(ErrorCode::invalid_dfa, "DFA serialization has wrong length");
  }
  for (int q = 0; q < num_states; ++q) {
    accepting[q] = (bytes[pos + q / 8] >> (q % 8)) & 1;
  }
  return Dfa(num_states, alphabet_size, initial, std::move(transitions),
             std::move(accepting));
}

CanonicalDfa canonical(const Dfa& a) {
  Dfa minimal = minimize(a);
  std::vector<uint8_t> bytes = serialize_dfa(minimal);
  return CanonicalDfa{std::move(minimal), std::move(bytes)};
}

std::string canonical_hex(const Dfa& a) {
  return bytes_to_hex(serialize_dfa(minimize(a)));
}

DfaVector::DfaVector(std::vector<Dfa> entries) : entries_(std::move(entries)) {
  for (size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].alphabet_size() != entries_[0].alphabet_size()) {
      throw Error(ErrorCode::alphabet_mismatch,
                  "task vector entries must share one alphabet");
    }
  }
}

DfaVector DfaVector::all_trivial_accepting(int n, int alphabet_size) {
  std::vector<Dfa> entries;
  entries.reserve(n);
  for (int i = 0; i < n; ++i) {
    entries.push_back(Dfa::trivial_accepting(alphabet_size));
  }
  return DfaVector(std::move(entries));
}

int DfaVector::alphabet_size() const {
  return entries_.empty() ? 0 : entries_[0].alphabet_size();
}

bool DfaVector::all_accepting() const {
  for (const Dfa& a : entries_) {
    if (!is_trivial_accepting(a)) {
      return false;
    }
  }
  return true;
}

bool DfaVector::all_terminal() const {
  for (const Dfa& a : entries_) {
    if (!is_trivial_accepting(a) && !is_trivial_rejecting(a)) {
      return false;
    }
  }
  return true;
}

bool DfaVector::any_rejecting() const {
  for (const Dfa& a : entries_) {
    if (is_trivial_rejecting(a)) {
      return true;
    }
  }
  return false;
}

DfaVector DfaVector::minimized() const {
  std::vector<Dfa> entries;
  entries.reserve(entries_.size());
  for (const Dfa& a : entries_) {
    entries.push_back(minimize(a));
  }
  return DfaVector(std::move(entries));
}

DfaVector progress_vector(const DfaVector& v,
                          const std::vector<std::optional<Symbol>>& symbols) {
  if (static_cast<int>(symbols.size()) != v.size()) {
    throw Error(ErrorCode::invalid_config,
                "progress_vector needs one optional symbol per agent");
  }
  std::vector<Dfa> entries;
  entries.reserve(v.size());
  for (int i = 0; i < v.size(); ++i) {
    if (symbols[static_cast<size_t>(i)].has_value()) {
      entries.push_back(step(v[i], *symbols[static_cast<size_t>(i)]));
    } else {
      entries.push_back(v[i]);
    }
  }
  return DfaVector(std::move(entries));
}

std::string bytes_to_hex(const std::vector<uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

std::vector<uint8_t> hex_to_bytes(const std::string& hex) {
  auto value_of = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) {
    throw Error(ErrorCode::io_error, "hex string has odd length");
  }
  std::vector<uint8_t> out;
  out.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2) {
    int hi = value_of(hex[i]);
    int lo = value_of(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::io_error, "invalid hex digit");
    }
    out.push_back(static_cast<uint8_t>((hi << 4) | lo));
  }
  return out;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_dfa: return "invalid_dfa";
    case ErrorCode::invalid_symbol: return "invalid_symbol";
    case ErrorCode::invalid_layout: return "invalid_layout";
    case ErrorCode::alphabet_mismatch: return "alphabet_mismatch";
    case ErrorCode::episode_over: return "episode_over";
    case ErrorCode::spawn_conflict: return "spawn_conflict";
    case ErrorCode::state_cap_exceeded: return "state_cap_exceeded";
    case ErrorCode::enumeration_cap_exceeded: return "enumeration_cap_exceeded";
    case ErrorCode::rejection_limit: return "rejection_limit";
    case ErrorCode::invalid_config: return "invalid_config";
    case ErrorCode::invalid_budget: return "invalid_budget";
    case ErrorCode::manifest_mismatch: return "manifest_mismatch";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace taskgrid
