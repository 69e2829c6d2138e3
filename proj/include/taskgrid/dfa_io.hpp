#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "taskgrid/dfa.hpp"

namespace taskgrid {

/// DFA text format: one JSON document per DFA with fields `states`,
/// `alphabet`, `initial`, `accepting` (list) and `transitions` (list of
/// [from, symbol, to] triples). Lists are order-insensitive except that
/// `transitions` must be total. UTF-8.
std::string dfa_to_text(const Dfa& a);
Dfa dfa_from_text(const std::string& text);

void save_dfa(const Dfa& a, const std::filesystem::path& path);
Dfa load_dfa(const std::filesystem::path& path);

/// Load every *.dfa.json in lexicographic filename order.
std::vector<Dfa> load_dfa_directory(const std::filesystem::path& dir);

}  // namespace taskgrid
