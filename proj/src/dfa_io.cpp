#include "taskgrid/dfa_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "taskgrid/errors.hpp"

namespace taskgrid {

namespace {

using nlohmann::json;

int require_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw Error(ErrorCode::invalid_dfa,
                std::string("missing or non-integer field '") + key + "'");
  }
  return doc[key].get<int>();
}

}  // namespace

std::string dfa_to_text(const Dfa& a) {
  json doc;
  doc["states"] = a.num_states();
  doc["alphabet"] = a.alphabet_size();
  doc["initial"] = a.initial();
  json accepting = json::array();
  for (int q = 0; q < a.num_states(); ++q) {
    if (a.is_accepting(q)) accepting.push_back(q);
  }
  doc["accepting"] = std::move(accepting);
  json transitions = json::array();
  for (int q = 0; q < a.num_states(); ++q) {
    for (int s = 0; s < a.alphabet_size(); ++s) {
      transitions.push_back({q, s, a.transition(q, s)});
    }
  }
  doc["transitions"] = std::move(transitions);
  return doc.dump(2) + "\n";
}

Dfa dfa_from_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::invalid_dfa, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::invalid_dfa, "document is not a JSON object");
  }
  const int num_states = require_int(doc, "states");
  const int alphabet_size = require_int(doc, "alphabet");
  const int initial = require_int(doc, "initial");
  if (num_states <= 0) {
    throw Error(ErrorCode::invalid_dfa, "states must be positive");
  }
  if (alphabet_size <= 0) {
    throw Error(ErrorCode::invalid_dfa, "alphabet must be positive");
  }

  std::vector<bool> accepting(static_cast<size_t>(num_states), false);
  if (!doc.contains("accepting") || !doc["accepting"].is_array()) {
    throw Error(ErrorCode::invalid_dfa, "missing or non-array field 'accepting'");
  }
  for (const auto& item : doc["accepting"]) {
    if (!item.is_number_integer()) {
      throw Error(ErrorCode::invalid_dfa, "accepting entries must be integers");
    }
    const int q = item.get<int>();
    if (q < 0 || q >= num_states) {
      throw Error(ErrorCode::invalid_dfa,
                  "accepting state " + std::to_string(q) + " out of range");
    }
    accepting[static_cast<size_t>(q)] = true;
  }

  if (!doc.contains("transitions") || !doc["transitions"].is_array()) {
    throw Error(ErrorCode::invalid_dfa, "missing or non-array field 'transitions'");
  }
  std::vector<int> table(static_cast<size_t>(num_states) * alphabet_size, -1);
  for (const auto& item : doc["transitions"]) {
    if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() ||
        !item[1].is_number_integer() || !item[2].is_number_integer()) {
      throw Error(ErrorCode::invalid_dfa,
                  "transitions entries must be [from, symbol, to] integer triples");
    }
    const int from = item[0].get<int>();
    const int sym = item[1].get<int>();
    const int to = item[2].get<int>();
    if (from < 0 || from >= num_states || to < 0 || to >= num_states) {
      throw Error(ErrorCode::invalid_dfa, "transition endpoint out of range");
    }
    if (sym < 0 || sym >= alphabet_size) {
      throw Error(ErrorCode::invalid_dfa, "transition symbol out of range");
    }
    auto& cell = table[static_cast<size_t>(from) * alphabet_size + sym];
    if (cell != -1 && cell != to) {
      throw Error(ErrorCode::invalid_dfa,
                  "conflicting transitions from state " + std::to_string(from) +
                      " on symbol " + std::to_string(sym));
    }
    cell = to;
  }
  for (int q = 0; q < num_states; ++q) {
    for (int s = 0; s < alphabet_size; ++s) {
      if (table[static_cast<size_t>(q) * alphabet_size + s] == -1) {
        throw Error(ErrorCode::invalid_dfa,
                    "missing transition from state " + std::to_string(q) +
                        " on symbol " + std::to_string(s));
      }
    }
  }
  return Dfa(num_states, alphabet_size, initial, table, accepting);
}

void save_dfa(const Dfa& a, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
  }
  out << dfa_to_text(a);
  if (!out) {
    throw Error(ErrorCode::io_error, "write failed for " + path.string());
  }
}

Dfa load_dfa(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return dfa_from_text(buf.str());
}

std::vector<Dfa> load_dfa_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::io_error, dir.string() + " is not a directory");
  }
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    constexpr const char* suffix = ".dfa.json";
    constexpr size_t suffix_len = 9;
    if (name.size() > suffix_len &&
        name.compare(name.size() - suffix_len, suffix_len, suffix) == 0) {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Dfa> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(load_dfa(p));
  return out;
}

}  // namespace taskgrid
