#include "taskgrid/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "taskgrid/assign.hpp"
#include "taskgrid/dfa_io.hpp"
#include "taskgrid/encoder.hpp"
#include "taskgrid/enumerate.hpp"
#include "taskgrid/errors.hpp"
#include "taskgrid/exhaustive.hpp"
#include "taskgrid/fixtures.hpp"
#include "taskgrid/qlearn.hpp"
#include "taskgrid/sampler.hpp"
#include "taskgrid/solve.hpp"
#include "taskgrid/trace_io.hpp"

namespace taskgrid {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Per-subsystem stream tags under the one root seed.
constexpr uint64_t kSampleStream = 0xA1;
constexpr uint64_t kSimulateStream = 0xA2;
constexpr uint64_t kTrainStream = 0xA3;
constexpr uint64_t kEvalStream = 0xA4;
constexpr uint64_t kAssignStream = 0xA5;

std::string iso_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io_error, "cannot read " + path.string());
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io_error, "cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::io_error, "write failed: " + path.string());
  }
}

/// Run manifest: every input and output content-hashed, the only place a
/// timestamp appears. Output files themselves are byte-reproducible.
class ManifestBuilder {
 public:
  ManifestBuilder(const std::string& command, uint64_t seed) {
    doc_["command"] = command;
    doc_["created"] = iso_utc_now();
    doc_["root_seed"] = seed;
    doc_["params"] = json::object();
    doc_["inputs"] = json::array();
    doc_["outputs"] = json::array();
  }

  template <typename T>
  void param(const std::string& name, const T& value) {
    doc_["params"][name] = value;
  }

  void input(const fs::path& path, const std::string& content) {
    doc_["inputs"].push_back(
        {{"path", path.string()}, {"sha256", sha256_hex(content)}});
  }

  void output(const fs::path& path, const std::string& content) {
    doc_["outputs"].push_back(
        {{"path", path.string()}, {"sha256", sha256_hex(content)}});
  }

  void write(const fs::path& path) const { write_file(path, doc_.dump() + "\n"); }

 private:
  json doc_;
};

Layout load_layout_input(const std::string& path, ManifestBuilder& manifest) {
  const std::string text = read_file(path);
  manifest.input(path, text);
  return Layout::parse(text);
}

/// Task inputs: one .dfa.json file or a directory of them (sorted order).
std::vector<Dfa> load_task_files(const std::string& path,
                                 ManifestBuilder& manifest) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (!entry.is_regular_file()) continue;
      const std::string name = entry.path().filename().string();
      if (name.size() > 9 && name.ends_with(".dfa.json")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw Error(ErrorCode::io_error,
                  "no .dfa.json files in " + std::string(path));
    }
  } else {
    files.push_back(path);
  }
  std::vector<Dfa> tasks;
  tasks.reserve(files.size());
  for (const auto& file : files) {
    const std::string text = read_file(file);
    manifest.input(file, text);
    tasks.push_back(dfa_from_text(text));
  }
  return tasks;
}

std::string task_file_name(int index) {
  std::ostringstream name;
  name << "task_" << std::setw(2) << std::setfill('0') << index << ".dfa.json";
  return name.str();
}

Word parse_word(const std::string& text) {
  Word word;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    size_t used = 0;
    int symbol;
    try {
      symbol = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_config, "bad word symbol '" + item + "'");
    }
    if (used != item.size()) {
      throw Error(ErrorCode::invalid_config, "bad word symbol '" + item + "'");
    }
    word.push_back(symbol);
  }
  return word;
}

/// Tables act only in the world they were trained in; the tasks may be
/// new ones (codes travel inside observation keys), so only the map is
/// pinned.
void require_same_layout(const QTableManifest& manifest, const Layout& layout) {
  if (manifest.layout_hash != sha256_hex(layout.to_text())) {
    throw Error(ErrorCode::manifest_mismatch,
                "table was trained on a different map");
  }
}

JointPolicy greedy_table_policy(const Layout& layout, const QTable& table) {
  return [&layout, &table](const ProductState& ps, SplitMix64&) {
    JointAction joint(static_cast<size_t>(layout.num_agents()));
    for (int i = 0; i < layout.num_agents(); ++i) {
      joint[static_cast<size_t>(i)] = static_cast<Action>(
          greedy_action(table.read(i, observation_key(layout, ps, i))));
    }
    return joint;
  };
}

JointPolicy uniform_random_policy(int num_agents) {
  return [num_agents](const ProductState&, SplitMix64& rng) {
    JointAction joint(static_cast<size_t>(num_agents));
    for (auto& action : joint) {
      action = static_cast<Action>(
          rng.next_below(static_cast<uint64_t>(kNumActions)));
    }
    return joint;
  };
}

std::string permutation_text(const std::vector<int>& permutation) {
  std::string text;
  for (size_t i = 0; i < permutation.size(); ++i) {
    if (i > 0) text += ',';
    text += std::to_string(permutation[i]);
  }
  return text;
}

// ---- sample ----------------------------------------------------------

struct SampleOptions {
  std::string dist = "rad";
  std::string layout_path;
  int agents = 1;
  int alphabet = 0;
  int max_states = 5;
  uint64_t seed = 0;
  std::string out_dir;
};

int cmd_sample(const SampleOptions& opt, std::ostream& out) {
  ManifestBuilder manifest("sample", opt.seed);
  const TaskDistribution dist = parse_task_distribution(opt.dist);

  SamplerConfig cfg;
  cfg.max_states = opt.max_states;
  cfg.rng_seed = SplitMix64::derive_seed(opt.seed, kSampleStream);
  if (!opt.layout_path.empty()) {
    cfg.alphabet_size = load_layout_input(opt.layout_path, manifest).alphabet_size();
  } else if (opt.alphabet > 0) {
    cfg.alphabet_size = opt.alphabet;
  } else {
    throw Error(ErrorCode::invalid_config,
                "provide --alphabet or --layout to fix the alphabet");
  }
  validate(cfg);
  if (opt.agents < 1) {
    throw Error(ErrorCode::invalid_config, "agents must be positive");
  }

  std::vector<Dfa> tasks;
  if (opt.agents == 1) {
    tasks.push_back(sample_task(dist, cfg));
  } else {
    tasks = sample_multi_agent(cfg, opt.agents, dist).entries();
  }

  fs::create_directories(opt.out_dir);
  for (size_t i = 0; i < tasks.size(); ++i) {
    const fs::path path =
        fs::path(opt.out_dir) / task_file_name(static_cast<int>(i));
    const std::string text = dfa_to_text(tasks[i]);
    write_file(path, text);
    manifest.output(path, text);
    json line;
    line["record"] = "task";
    line["file"] = path.string();
    line["states"] = tasks[i].num_states();
    line["code"] = encode(tasks[i]).hex();
    line["trivial"] = is_trivial_accepting(tasks[i]);
    out << line.dump() << "\n";
  }

  manifest.param("dist", opt.dist);
  manifest.param("agents", opt.agents);
  manifest.param("alphabet", cfg.alphabet_size);
  manifest.param("max_states", opt.max_states);
  manifest.write(fs::path(opt.out_dir) / "manifest.json");
  return 0;
}

// ---- minimize / progress ---------------------------------------------

struct RewriteOptions {
  std::string tasks_path;
  std::string word;  // progress only
  std::string out_dir;
};

int cmd_rewrite(const RewriteOptions& opt, bool do_progress,
                std::ostream& out) {
  ManifestBuilder manifest(do_progress ? "progress" : "minimize", 0);
  const std::vector<Dfa> tasks = load_task_files(opt.tasks_path, manifest);
  const Word word = do_progress ? parse_word(opt.word) : Word{};

  fs::create_directories(opt.out_dir);
  for (size_t i = 0; i < tasks.size(); ++i) {
    const Dfa result =
        do_progress ? progress(tasks[i], word) : minimize(tasks[i]);
    const fs::path path =
        fs::path(opt.out_dir) / task_file_name(static_cast<int>(i));
    const std::string text = dfa_to_text(result);
    write_file(path, text);
    manifest.output(path, text);
    json line;
    line["record"] = do_progress ? "progressed" : "minimized";
    line["file"] = path.string();
    line["states_in"] = tasks[i].num_states();
    line["states_out"] = result.num_states();
    line["code"] = encode(result).hex();
    line["accepting"] = is_trivial_accepting(result);
    out << line.dump() << "\n";
  }
  if (do_progress) manifest.param("word", opt.word);
  manifest.write(fs::path(opt.out_dir) / "manifest.json");
  return 0;
}

// ---- simulate ----------------------------------------------------------

struct SimulateOptions {
  std::string layout_path;
  std::string tasks_path;
  std::string table_path;
  double gamma = 0.99;
  uint64_t seed = 0;
  std::string out_path;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
  ManifestBuilder manifest("simulate", opt.seed);
  const Layout layout = load_layout_input(opt.layout_path, manifest);
  const DfaVector tasks(load_task_files(opt.tasks_path, manifest));

  std::optional<QTable> table;
  JointPolicy policy;
  if (!opt.table_path.empty()) {
    manifest.input(opt.table_path, read_file(opt.table_path));
    QTableManifest table_manifest;
    table.emplace(load_qtable(opt.table_path, &table_manifest));
    require_same_layout(table_manifest, layout);
    policy = greedy_table_policy(layout, *table);
  } else {
    policy = uniform_random_policy(layout.num_agents());
  }

  const uint64_t episode_seed =
      SplitMix64::derive_seed(opt.seed, kSimulateStream);
  const RolloutResult episode =
      rollout(layout, tasks, policy, opt.gamma, episode_seed);
  const std::string jsonl =
      trace_to_jsonl(layout, episode, opt.gamma, episode_seed);

  manifest.param("gamma", opt.gamma);
  manifest.param("policy", opt.table_path.empty() ? "random" : "table");
  if (opt.out_path.empty()) {
    out << jsonl;
  } else {
    write_file(opt.out_path, jsonl);
    manifest.output(opt.out_path, jsonl);
    manifest.write(fs::path(opt.out_path).string() + ".manifest.json");
    json line;
    line["record"] = "episode";
    line["file"] = opt.out_path;
    line["length"] = episode.episode_length;
    line["success"] = episode.success;
    line["team_return"] = episode.team_return;
    out << line.dump() << "\n";
  }
  return 0;
}

// ---- train -------------------------------------------------------------

struct TrainOptions {
  std::string layout_path;
  std::string tasks_path;
  std::string dist;
  int max_states = 5;
  int episodes = 20000;
  double alpha = 0.2;
  double gamma = 0.99;
  bool sparse = false;
  uint64_t seed = 0;
  std::string out_path;
};

int cmd_train(const TrainOptions& opt, std::ostream& out) {
  ManifestBuilder manifest("train", opt.seed);
  const Layout layout = load_layout_input(opt.layout_path, manifest);

  if (opt.tasks_path.empty() == opt.dist.empty()) {
    throw Error(ErrorCode::invalid_config,
                "provide exactly one task source: --tasks or --dist");
  }
  DfaVector tasks;
  if (!opt.tasks_path.empty()) {
    tasks = DfaVector(load_task_files(opt.tasks_path, manifest));
  } else {
    SamplerConfig sampler;
    sampler.max_states = opt.max_states;
    sampler.alphabet_size = layout.alphabet_size();
    sampler.rng_seed = SplitMix64::derive_seed(opt.seed, kSampleStream);
    validate(sampler);
    tasks = sample_multi_agent(sampler, layout.num_agents(),
                               parse_task_distribution(opt.dist));
  }

  QLearnConfig cfg;
  cfg.episodes = opt.episodes;
  cfg.alpha = opt.alpha;
  cfg.gamma = opt.gamma;
  cfg.shaped = !opt.sparse;
  cfg.seed = SplitMix64::derive_seed(opt.seed, kTrainStream);
  const QTable table = q_learn(layout, tasks, cfg);

  QTableManifest table_manifest;
  table_manifest.layout_hash = sha256_hex(layout.to_text());
  for (const TaskCode& code : encode_vector(tasks)) {
    table_manifest.task_codes.push_back(code.hex());
  }
  table_manifest.gamma = cfg.gamma;
  table_manifest.shaped = cfg.shaped;
  table_manifest.episodes = cfg.episodes;
  table_manifest.train_seed = cfg.seed;
  save_qtable(table, table_manifest, opt.out_path);

  manifest.param("episodes", opt.episodes);
  manifest.param("alpha", opt.alpha);
  manifest.param("gamma", opt.gamma);
  manifest.param("shaped", cfg.shaped);
  if (!opt.dist.empty()) {
    manifest.param("dist", opt.dist);
    manifest.param("max_states", opt.max_states);
  }
  manifest.output(opt.out_path, read_file(opt.out_path));
  manifest.write(fs::path(opt.out_path).string() + ".manifest.json");

  json line;
  line["record"] = "trained";
  line["file"] = opt.out_path;
  line["episodes"] = opt.episodes;
  json rows = json::array();
  for (int i = 0; i < table.num_agents(); ++i) rows.push_back(table.rows(i));
  line["rows"] = rows;
  out << line.dump() << "\n";
  return 0;
}

// ---- eval --------------------------------------------------------------

struct EvalOptions {
  std::string layout_path;
  std::string table_path;
  std::string tasks_path;
  std::string dist;
  int max_states = 5;
  bool max_states_given = false;
  bool ood = false;
  int episodes = 1000;
  uint64_t seed = 0;
  std::string out_path;
};

int cmd_eval(const EvalOptions& opt, std::ostream& out) {
  ManifestBuilder manifest("eval", opt.seed);
  const Layout layout = load_layout_input(opt.layout_path, manifest);
  if (opt.episodes <= 0) {
    throw Error(ErrorCode::invalid_budget, "episodes must be positive");
  }
  if (opt.tasks_path.empty() == opt.dist.empty()) {
    throw Error(ErrorCode::invalid_config,
                "provide exactly one task source: --tasks or --dist");
  }
  if (opt.ood && opt.dist.empty()) {
    throw Error(ErrorCode::invalid_config, "--ood needs --dist sampling");
  }

  manifest.input(opt.table_path, read_file(opt.table_path));
  QTableManifest table_manifest;
  const QTable table = load_qtable(opt.table_path, &table_manifest);
  require_same_layout(table_manifest, layout);

  EvalResult result;
  std::string mode;
  if (!opt.tasks_path.empty()) {
    mode = "fixed";
    const DfaVector tasks(load_task_files(opt.tasks_path, manifest));
    result = estimate_success(layout, tasks, table, opt.episodes,
                              SplitMix64::derive_seed(opt.seed, kEvalStream));
  } else {
    mode = "sampled";
    SamplerConfig sampler;
    // Out-of-distribution evaluation widens the sampler's state budget
    // unless an explicit budget was requested.
    sampler.max_states =
        (opt.ood && !opt.max_states_given) ? 10 : opt.max_states;
    sampler.alphabet_size = layout.alphabet_size();
    validate(sampler);
    const TaskDistribution dist = parse_task_distribution(opt.dist);
    const uint64_t task_seed = SplitMix64::derive_seed(opt.seed, kSampleStream);
    const uint64_t walk_seed = SplitMix64::derive_seed(opt.seed, kEvalStream);

    int wins = 0;
    for (int ep = 0; ep < opt.episodes; ++ep) {
      SamplerConfig per_episode = sampler;
      per_episode.rng_seed = SplitMix64::derive_seed(task_seed, ep);
      const DfaVector tasks =
          sample_multi_agent(per_episode, layout.num_agents(), dist);
      ProductState ps = product_reset(layout, tasks,
                                      SplitMix64::derive_seed(walk_seed, ep));
      while (!is_terminal(ps)) {
        JointAction joint(static_cast<size_t>(layout.num_agents()));
        for (int i = 0; i < layout.num_agents(); ++i) {
          joint[static_cast<size_t>(i)] = static_cast<Action>(greedy_action(
              table.read(i, observation_key(layout, ps, i))));
        }
        ps = product_step(layout, ps, joint, 0.99).next;
      }
      if (ps.tasks.all_accepting()) ++wins;
    }
    result.episodes = opt.episodes;
    result.success_rate = static_cast<double>(wins) / opt.episodes;
    result.standard_error = std::sqrt(
        result.success_rate * (1.0 - result.success_rate) / opt.episodes);
    manifest.param("dist", opt.dist);
    manifest.param("max_states", sampler.max_states);
    manifest.param("ood", opt.ood);
  }

  json line;
  line["record"] = "metrics";
  line["mode"] = mode;
  line["episodes"] = result.episodes;
  line["success_rate"] = result.success_rate;
  line["standard_error"] = result.standard_error;
  const std::string rendered = line.dump() + "\n";
  out << rendered;

  manifest.param("episodes", opt.episodes);
  if (!opt.out_path.empty()) {
    write_file(opt.out_path, rendered);
    manifest.output(opt.out_path, rendered);
    manifest.write(fs::path(opt.out_path).string() + ".manifest.json");
  }
  return 0;
}

// ---- assign ------------------------------------------------------------

struct AssignOptions {
  std::string layout_path;
  std::string tasks_path;
  std::string table_path;
  double gamma = 0.999;
  int samples = 32;
  double tie_epsilon = 1e-9;
  uint64_t seed = 0;
  std::string out_path;
};

int cmd_assign(const AssignOptions& opt, std::ostream& out) {
  ManifestBuilder manifest("assign", opt.seed);
  const Layout layout = load_layout_input(opt.layout_path, manifest);
  const DfaVector tasks(load_task_files(opt.tasks_path, manifest));

  std::optional<QTable> table;
  ValueFn value_fn;
  if (!opt.table_path.empty()) {
    manifest.input(opt.table_path, read_file(opt.table_path));
    QTableManifest table_manifest;
    table.emplace(load_qtable(opt.table_path, &table_manifest));
    require_same_layout(table_manifest, layout);
    value_fn = qtable_values(*table, opt.samples);
  } else {
    value_fn = exact_values(opt.gamma);
  }

  const AssignmentSearch search =
      assign_optimal(layout, tasks, value_fn,
                     SplitMix64::derive_seed(opt.seed, kAssignStream),
                     opt.tie_epsilon);

  out << "  permutation      proxy  per-agent\n";
  for (const Assignment& entry : search.all) {
    const bool chosen = entry.permutation == search.best.permutation;
    out << (chosen ? "* " : "  ") << std::left << std::setw(15)
        << permutation_text(entry.permutation) << std::right << std::setw(9)
        << std::fixed << std::setprecision(4) << entry.proxy_value << " ";
    for (const double v : entry.per_agent_values) {
      out << " " << std::fixed << std::setprecision(4) << v;
    }
    out << "\n";
  }
  out << (search.best.tied ? "tie: yes (lexicographic winner)\n" : "tie: no\n");

  json record;
  record["record"] = "assignment";
  record["backend"] = opt.table_path.empty() ? "exact" : "table";
  record["best"] = {{"permutation", search.best.permutation},
                    {"proxy_value", search.best.proxy_value},
                    {"per_agent_values", search.best.per_agent_values},
                    {"tied", search.best.tied}};
  json all = json::array();
  for (const Assignment& entry : search.all) {
    all.push_back({{"permutation", entry.permutation},
                   {"proxy_value", entry.proxy_value},
                   {"per_agent_values", entry.per_agent_values}});
  }
  record["all"] = all;
  const std::string rendered = record.dump() + "\n";
  out << rendered;

  manifest.param("backend", opt.table_path.empty() ? "exact" : "table");
  manifest.param("gamma", opt.gamma);
  manifest.param("tie_epsilon", opt.tie_epsilon);
  if (!opt.out_path.empty()) {
    write_file(opt.out_path, rendered);
    manifest.output(opt.out_path, rendered);
    manifest.write(fs::path(opt.out_path).string() + ".manifest.json");
  }
  return 0;
}

// ---- verify ------------------------------------------------------------

struct VerifyOptions {
  std::string fixture;
  double gamma = 0.999;
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  std::vector<Fixture> fixtures;
  if (opt.fixture.empty()) {
    fixtures = micro_fixtures();
  } else {
    fixtures.push_back(fixture_by_name(opt.fixture));
  }

  bool all_pass = true;
  for (const Fixture& fix : fixtures) {
    const EnumeratedGame game = enumerate_product(fix.layout, fix.tasks);
    const SolveResult solved = value_iteration(game, opt.gamma);

    // Optimal play from the exact planner versus the independent
    // history search, spawn arrangement by spawn arrangement.
    int planner_wins = 0;
    int search_wins = 0;
    bool agree = true;
    for (const int s : game.initial_states) {
      const bool planned = greedy_success(game, solved.greedy, s);
      const bool possible = exhaustive_plan_success(
          fix.layout, fix.tasks.entries(),
          game.states[static_cast<size_t>(s)].grid.positions);
      planner_wins += planned ? 1 : 0;
      search_wins += possible ? 1 : 0;
      agree = agree && planned == possible;
    }
    const double count = static_cast<double>(game.initial_states.size());
    const double planner_rate = planner_wins / count;
    const double search_rate = search_wins / count;

    // Potential shaping must leave greedy success untouched, per agent.
    bool shaping_ok = true;
    const QSolveResult team = q_iteration_team(game, opt.gamma);
    for (int agent = 0; agent < fix.layout.num_agents(); ++agent) {
      const QSolveResult shaped =
          q_iteration_shaped(game, agent, opt.gamma);
      for (const int s : game.initial_states) {
        shaping_ok = shaping_ok &&
                     greedy_success(game, shaped.greedy, s) ==
                         greedy_success(game, team.greedy, s);
      }
    }

    const bool expected = planner_rate == fix.optimal_success;
    const bool pass = agree && shaping_ok && expected;
    all_pass = all_pass && pass;
    out << "fixture " << std::left << std::setw(16) << fix.name
        << " planner " << std::fixed << std::setprecision(6) << planner_rate
        << " search " << search_rate << " shaping "
        << (shaping_ok ? "ok" : "broken") << " -> "
        << (pass ? "PASS" : "FAIL") << "\n";
  }
  out << (all_pass ? "verify: all fixtures pass\n"
                   : "verify: failures detected\n");
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"automata-conditioned cooperative task toolkit"};
  app.require_subcommand(1);

  SampleOptions sample_opt;
  auto* sample = app.add_subcommand("sample", "draw task automata to files");
  sample->add_option("--dist", sample_opt.dist,
                     "task distribution: reach, reachavoid, rad");
  sample->add_option("--layout", sample_opt.layout_path,
                     "map file fixing the alphabet");
  sample->add_option("--agents", sample_opt.agents, "team size");
  sample->add_option("--alphabet", sample_opt.alphabet, "alphabet size");
  sample->add_option("--max-states", sample_opt.max_states,
                     "sampler state budget");
  sample->add_option("--seed", sample_opt.seed, "root seed");
  sample->add_option("--out", sample_opt.out_dir, "output directory")
      ->required();

  RewriteOptions minimize_opt;
  auto* minimize_cmd =
      app.add_subcommand("minimize", "minimize task automata");
  minimize_cmd->add_option("--tasks", minimize_opt.tasks_path,
                           "task file or directory")
      ->required();
  minimize_cmd->add_option("--out", minimize_opt.out_dir, "output directory")
      ->required();

  RewriteOptions progress_opt;
  auto* progress_cmd = app.add_subcommand(
      "progress", "advance task automata along a word and minimize");
  progress_cmd->add_option("--tasks", progress_opt.tasks_path,
                           "task file or directory")
      ->required();
  progress_cmd->add_option("--word", progress_opt.word,
                           "comma-separated symbols, empty for none");
  progress_cmd->add_option("--out", progress_opt.out_dir, "output directory")
      ->required();

  SimulateOptions simulate_opt;
  auto* simulate =
      app.add_subcommand("simulate", "roll one episode and record the trace");
  simulate->add_option("--layout", simulate_opt.layout_path, "map file")
      ->required();
  simulate->add_option("--tasks", simulate_opt.tasks_path,
                       "task file or directory")
      ->required();
  simulate->add_option("--table", simulate_opt.table_path,
                       "greedy policy from a saved table (default random)");
  simulate->add_option("--gamma", simulate_opt.gamma, "discount");
  simulate->add_option("--seed", simulate_opt.seed, "root seed");
  simulate->add_option("--out", simulate_opt.out_path,
                       "trace file (default stdout)");

  TrainOptions train_opt;
  auto* train = app.add_subcommand("train", "train decentralized learners");
  train->add_option("--layout", train_opt.layout_path, "map file")->required();
  train->add_option("--tasks", train_opt.tasks_path,
                    "task file or directory");
  train->add_option("--dist", train_opt.dist,
                    "sample the task vector instead: reach, reachavoid, rad");
  train->add_option("--max-states", train_opt.max_states,
                    "sampler state budget");
  train->add_option("--episodes", train_opt.episodes, "training episodes");
  train->add_option("--alpha", train_opt.alpha, "learning rate");
  train->add_option("--gamma", train_opt.gamma, "discount");
  train->add_flag("--sparse", train_opt.sparse,
                  "learn from the raw team reward (no shaping)");
  train->add_option("--seed", train_opt.seed, "root seed");
  train->add_option("--out", train_opt.out_path, "table file")->required();

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "estimate greedy success");
  eval->add_option("--layout", eval_opt.layout_path, "map file")->required();
  eval->add_option("--table", eval_opt.table_path, "saved table")->required();
  eval->add_option("--tasks", eval_opt.tasks_path, "task file or directory");
  eval->add_option("--dist", eval_opt.dist,
                   "sample a fresh task vector per episode");
  auto* eval_ms = eval->add_option("--max-states", eval_opt.max_states,
                                   "sampler state budget");
  eval->add_flag("--ood", eval_opt.ood,
                 "out-of-distribution sampling (state budget 10)");
  eval->add_option("--episodes", eval_opt.episodes, "evaluation episodes");
  eval->add_option("--seed", eval_opt.seed, "root seed");
  eval->add_option("--out", eval_opt.out_path, "metrics file");

  AssignOptions assign_opt;
  auto* assign =
      app.add_subcommand("assign", "rank task-to-agent assignments");
  assign->add_option("--layout", assign_opt.layout_path, "map file")
      ->required();
  assign->add_option("--tasks", assign_opt.tasks_path,
                     "task file or directory")
      ->required();
  assign->add_option("--table", assign_opt.table_path,
                     "value proxy from a saved table (default exact)");
  assign->add_option("--gamma", assign_opt.gamma, "discount (exact backend)");
  assign->add_option("--samples", assign_opt.samples,
                     "spawn draws per estimate (table backend)");
  assign->add_option("--tie-epsilon", assign_opt.tie_epsilon,
                     "proxy difference treated as a tie");
  assign->add_option("--seed", assign_opt.seed, "root seed");
  assign->add_option("--out", assign_opt.out_path, "record file");

  VerifyOptions verify_opt;
  auto* verify =
      app.add_subcommand("verify", "check embedded fixtures end to end");
  verify->add_option("--fixture", verify_opt.fixture,
                     "single fixture name (default all)");
  verify->add_option("--gamma", verify_opt.gamma, "discount");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: invalid_config: " << e.what() << "\n";
    return 1;
  }

  try {
    if (sample->parsed()) return cmd_sample(sample_opt, out);
    if (minimize_cmd->parsed()) return cmd_rewrite(minimize_opt, false, out);
    if (progress_cmd->parsed()) return cmd_rewrite(progress_opt, true, out);
    if (simulate->parsed()) return cmd_simulate(simulate_opt, out);
    if (train->parsed()) return cmd_train(train_opt, out);
    if (eval->parsed()) {
      eval_opt.max_states_given = eval_ms->count() > 0;
      return cmd_eval(eval_opt, out);
    }
    if (assign->parsed()) return cmd_assign(assign_opt, out);
    if (verify->parsed()) return cmd_verify(verify_opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: io_error: " << e.what() << "\n";
    return 1;
  }
  err << "error: invalid_config: no subcommand\n";
  return 1;
}

}  // namespace taskgrid
