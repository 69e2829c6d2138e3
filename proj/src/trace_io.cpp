#include "taskgrid/trace_io.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "taskgrid/encoder.hpp"
#include "taskgrid/errors.hpp"

namespace taskgrid {

namespace {

using nlohmann::json;

json cells_to_json(const std::vector<Cell>& cells) {
  json out = json::array();
  for (const Cell c : cells) out.push_back({c.x, c.y});
  return out;
}

std::vector<Cell> cells_from_json(const json& arr) {
  std::vector<Cell> out;
  for (const auto& item : arr) {
    out.push_back({item.at(0).get<int>(), item.at(1).get<int>()});
  }
  return out;
}

Action action_from_name(const std::string& name) {
  for (const Action a : {Action::up, Action::down, Action::left, Action::right,
                         Action::noop}) {
    if (name == action_name(a)) return a;
  }
  throw Error(ErrorCode::io_error, "trace: unknown action '" + name + "'");
}

json codes_to_json(const DfaVector& tasks) {
  json out = json::array();
  for (const TaskCode& code : encode_vector(tasks)) out.push_back(code.hex());
  return out;
}

}  // namespace

std::string trace_to_jsonl(const Layout& layout, const RolloutResult& episode,
                           double gamma, uint64_t seed) {
  std::ostringstream out;

  json header;
  header["type"] = "header";
  header["format"] = 1;
  header["agents"] = layout.num_agents();
  header["gamma"] = gamma;
  header["seed"] = seed;
  header["layout_hash"] = sha256_hex(layout.to_text());
  json tasks = json::array();
  for (const Dfa& a : episode.initial.tasks.entries()) {
    tasks.push_back(canonical_hex(a));
  }
  header["tasks"] = std::move(tasks);
  header["positions"] = cells_to_json(episode.initial.grid.positions);
  out << header.dump() << "\n";

  for (size_t t = 0; t < episode.steps.size(); ++t) {
    const StepOutcome& step = episode.steps[t];
    json rec;
    rec["type"] = "step";
    rec["t"] = t;
    json actions = json::array();
    for (const Action a : episode.actions[t]) actions.push_back(action_name(a));
    rec["actions"] = std::move(actions);
    rec["positions"] = cells_to_json(step.next.grid.positions);
    json labels = json::array();
    for (int i = 0; i < layout.num_agents(); ++i) {
      const Cell pos = step.next.grid.positions[static_cast<size_t>(i)];
      if (const auto sym = layout.token_at(pos)) {
        labels.push_back(*sym);
      } else {
        labels.push_back(nullptr);
      }
    }
    rec["labels"] = std::move(labels);
    rec["task_codes"] = codes_to_json(step.next.tasks);
    rec["team_reward"] = step.team_reward;
    rec["shaped_rewards"] = step.shaped_rewards;
    rec["done"] = step.done;
    out << rec.dump() << "\n";
  }

  json summary;
  summary["type"] = "summary";
  summary["length"] = episode.episode_length;
  summary["success"] = episode.success;
  summary["team_return"] = episode.team_return;
  summary["shaped_returns"] = episode.shaped_returns;
  out << summary.dump() << "\n";
  return out.str();
}

Trace parse_trace(const std::string& jsonl) {
  Trace trace;
  bool saw_header = false;
  bool saw_summary = false;
  std::istringstream in(jsonl);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::io_error, std::string("trace: bad record: ") + e.what());
    }
    try {
      const std::string type = rec.at("type").get<std::string>();
      if (type == "header") {
        saw_header = true;
        trace.agents = rec.at("agents").get<int>();
        trace.gamma = rec.at("gamma").get<double>();
        trace.seed = rec.at("seed").get<uint64_t>();
        trace.layout_hash = rec.at("layout_hash").get<std::string>();
        for (const auto& hex : rec.at("tasks")) {
          trace.initial_tasks.push_back(
              deserialize_dfa(hex_to_bytes(hex.get<std::string>())));
        }
        trace.initial_positions = cells_from_json(rec.at("positions"));
      } else if (type == "step") {
        TraceStep step;
        for (const auto& name : rec.at("actions")) {
          step.actions.push_back(action_from_name(name.get<std::string>()));
        }
        step.positions = cells_from_json(rec.at("positions"));
        for (const auto& l : rec.at("labels")) {
          if (l.is_null()) {
            step.labels.push_back(std::nullopt);
          } else {
            step.labels.push_back(l.get<Symbol>());
          }
        }
        for (const auto& code : rec.at("task_codes")) {
          step.task_codes.push_back(code.get<std::string>());
        }
        step.team_reward = rec.at("team_reward").get<double>();
        step.shaped_rewards = rec.at("shaped_rewards").get<std::vector<double>>();
        step.done = rec.at("done").get<bool>();
        trace.steps.push_back(std::move(step));
      } else if (type == "summary") {
        saw_summary = true;
        trace.length = rec.at("length").get<int>();
        trace.success = rec.at("success").get<bool>();
        trace.team_return = rec.at("team_return").get<double>();
        trace.shaped_returns = rec.at("shaped_returns").get<std::vector<double>>();
      } else {
        throw Error(ErrorCode::io_error, "trace: unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::io_error, std::string("trace: bad record: ") + e.what());
    }
  }
  if (!saw_header || !saw_summary) {
    throw Error(ErrorCode::io_error, "trace: missing header or summary record");
  }
  return trace;
}

bool replay_matches(const Layout& layout, const Trace& trace, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why != nullptr) *why = reason;
    return false;
  };
  if (trace.layout_hash != sha256_hex(layout.to_text())) {
    return fail("layout hash differs");
  }
  if (trace.agents != layout.num_agents()) {
    return fail("agent count differs");
  }

  SplitMix64 rng(trace.seed);
  ProductState state =
      product_reset(layout, DfaVector(trace.initial_tasks), rng);
  if (state.grid.positions != trace.initial_positions) {
    return fail("initial positions differ");
  }

  double discount = 1.0;
  double team_return = 0.0;
  std::vector<double> shaped_returns(static_cast<size_t>(trace.agents), 0.0);
  for (size_t t = 0; t < trace.steps.size(); ++t) {
    const TraceStep& rec = trace.steps[t];
    const std::string at = " at step " + std::to_string(t);
    if (is_terminal(state)) return fail("episode already terminal" + at);
    StepOutcome outcome;
    try {
      outcome = product_step(layout, state, rec.actions, trace.gamma);
    } catch (const Error& e) {
      return fail(std::string("step rejected") + at + ": " + e.what());
    }
    if (outcome.next.grid.positions != rec.positions) {
      return fail("positions differ" + at);
    }
    if (labels(layout, outcome.next.grid) != rec.labels) {
      return fail("labels differ" + at);
    }
    const std::vector<TaskCode> codes = encode_vector(outcome.next.tasks);
    if (codes.size() != rec.task_codes.size()) {
      return fail("task code count differs" + at);
    }
    for (size_t i = 0; i < codes.size(); ++i) {
      if (codes[i].hex() != rec.task_codes[i]) {
        return fail("task code differs for agent " + std::to_string(i) + at);
      }
    }
    if (outcome.team_reward != rec.team_reward) {
      return fail("team reward differs" + at);
    }
    if (outcome.shaped_rewards != rec.shaped_rewards) {
      return fail("shaped rewards differ" + at);
    }
    if (outcome.done != rec.done) return fail("done flag differs" + at);
    team_return += discount * outcome.team_reward;
    for (size_t i = 0; i < shaped_returns.size(); ++i) {
      shaped_returns[i] += discount * outcome.shaped_rewards[i];
    }
    discount *= trace.gamma;
    state = outcome.next;
  }
  if (!is_terminal(state)) return fail("episode did not finish");
  if (trace.length != static_cast<int>(trace.steps.size())) {
    return fail("summary length differs");
  }
  if (trace.success != state.tasks.all_accepting()) {
    return fail("success flag differs");
  }
  if (trace.team_return != team_return) return fail("team return differs");
  if (trace.shaped_returns != shaped_returns) {
    return fail("shaped returns differ");
  }
  return true;
}

}  // namespace taskgrid
