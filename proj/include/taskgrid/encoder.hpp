#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "taskgrid/dfa.hpp"

namespace taskgrid {

/// Language-identifying code of a task automaton: SHA-256 digest of the
/// minimized DFA's canonical serialization, plus the serialization itself
/// so equality checks stay exact even against digest collisions. Two DFAs
/// get equal codes iff they recognize the same language.
struct TaskCode {
  std::array<uint8_t, 32> digest{};
  std::vector<uint8_t> canonical_bytes;

  bool operator==(const TaskCode&) const = default;
  std::string hex() const;  // digest only, 64 chars
};

TaskCode encode(const Dfa& a);
std::vector<TaskCode> encode_vector(const DfaVector& v);

/// Fixed-width real expansion of a code for numeric consumers: a seeded
/// pseudo-random projection of the digest into [-1, 1]^dim. Equal codes map
/// to equal vectors; nothing about distances between unequal codes is
/// promised.
std::vector<double> expand_code(const TaskCode& code, int dim);

/// SHA-256 of arbitrary bytes (shared by trace hashing and file manifests).
std::array<uint8_t, 32> sha256(const uint8_t* data, size_t len);
std::string sha256_hex(const std::string& data);

}  // namespace taskgrid
