#include "taskgrid/qlearn.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>
#include "taskgrid/encoder.hpp"
#include "taskgrid/errors.hpp"
#include "taskgrid/rng.hpp"

namespace taskgrid {

namespace {

using json = nlohmann::json;

// Stream tags keep the environment, exploration, and table-init draws on
// disjoint deterministic streams derived from one root seed.
constexpr uint64_t kInitStream = 0xA11C;
constexpr uint64_t kEnvStream = 0xE4417;
constexpr uint64_t kExploreStream = 0xE89107E;

// FNV-1a 64. std::hash is not pinned across platforms; saved tables and
// golden evaluations need the same unseen-row values everywhere.
uint64_t fnv1a(const std::string& bytes) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

void append_offset(std::string& out, const Offset& off) {
  out += std::to_string(off.dx);
  out += ':';
  out += std::to_string(off.dy);
  out += ';';
}

int worker_count() {
  if (const char* env = std::getenv("TASKGRID_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

void write_u32(std::ostream& out, uint32_t v) {
  uint8_t b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<uint8_t>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& out, uint64_t v) {
  uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void write_f64(std::ostream& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  write_u64(out, bits);
}

uint32_t read_u32(std::istream& in) {
  uint8_t b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw Error(ErrorCode::io_error, "qtable: truncated file");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return v;
}

uint64_t read_u64(std::istream& in) {
  uint8_t b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw Error(ErrorCode::io_error, "qtable: truncated file");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

double read_f64(std::istream& in) {
  const uint64_t bits = read_u64(in);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void validate(const QLearnConfig& cfg) {
  if (cfg.episodes <= 0) {
    throw Error(ErrorCode::invalid_config, "episodes must be positive");
  }
  if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0) {
    throw Error(ErrorCode::invalid_config, "alpha must be in (0, 1]");
  }
  if (!(cfg.gamma >= 0.0) || cfg.gamma >= 1.0) {
    throw Error(ErrorCode::invalid_config, "gamma must be in [0, 1)");
  }
  for (const double eps : {cfg.epsilon_start, cfg.epsilon_end}) {
    if (!(eps >= 0.0) || eps > 1.0) {
      throw Error(ErrorCode::invalid_config, "epsilon must be in [0, 1]");
    }
  }
}

QTable::QTable(int num_agents, uint64_t init_seed) : init_seed_(init_seed) {
  if (num_agents <= 0) {
    throw Error(ErrorCode::invalid_config, "qtable needs at least one agent");
  }
  tables_.resize(static_cast<size_t>(num_agents));
}

std::array<double, kNumActions> QTable::initial_row(
    int agent, const std::string& key) const {
  // Unseen rows must read the same everywhere: seed from (init_seed,
  // agent, key) only. Tiny positive values break ties away from zero
  // without drowning real returns.
  const uint64_t per_agent =
      SplitMix64::derive_seed(init_seed_, static_cast<uint64_t>(agent) + 1);
  SplitMix64 gen(SplitMix64::derive_seed(per_agent, fnv1a(key)));
  std::array<double, kNumActions> row{};
  for (double& v : row) v = gen.next_double() * 1e-3;
  return row;
}

std::array<double, kNumActions>& QTable::row(int agent,
                                             const std::string& key) {
  auto& table = tables_[static_cast<size_t>(agent)];
  const auto it = table.find(key);
  if (it != table.end()) return it->second;
  return table.emplace(key, initial_row(agent, key)).first->second;
}

std::array<double, kNumActions> QTable::read(int agent,
                                             const std::string& key) const {
  const auto& table = tables_[static_cast<size_t>(agent)];
  const auto it = table.find(key);
  if (it != table.end()) return it->second;
  return initial_row(agent, key);
}

bool QTable::contains(int agent, const std::string& key) const {
  return tables_[static_cast<size_t>(agent)].count(key) > 0;
}

size_t QTable::rows(int agent) const {
  return tables_[static_cast<size_t>(agent)].size();
}

std::string observation_key(const Layout& layout, const ProductState& ps,
                            int agent_index) {
  const EgoView view = ego_view(layout, ps.grid, agent_index);
  std::string key = "v1|w|";
  for (const Offset& off : view.walls) append_offset(key, off);
  key += "t|";
  for (const auto& [off, sym] : view.tokens) {
    append_offset(key, off);
    key.back() = '=';
    key += std::to_string(sym);
    key += ';';
  }
  key += "b|";
  for (const auto& [off, color] : view.buttons) {
    append_offset(key, off);
    key.back() = '=';
    key += std::to_string(color);
    key += ';';
  }
  key += "d|";
  for (const auto& [off, color] : view.doors) {
    append_offset(key, off);
    key.back() = '=';
    key += std::to_string(color);
    key += ';';
  }
  key += "a|";
  for (const Offset& off : view.other_agents) append_offset(key, off);
  key += "q|";
  for (const TaskCode& code : encode_vector(ps.tasks)) {
    key += code.hex();
    key += ';';
  }
  return key;
}

int greedy_action(const std::array<double, kNumActions>& values) {
  int best = 0;
  for (int a = 1; a < kNumActions; ++a) {
    if (values[static_cast<size_t>(a)] > values[static_cast<size_t>(best)]) {
      best = a;
    }
  }
  return best;
}

QTable q_learn(const Layout& layout, const DfaVector& tasks,
               const QLearnConfig& cfg) {
  validate(cfg);
  const int n = layout.num_agents();
  QTable table(n, SplitMix64::derive_seed(cfg.seed, kInitStream));
  SplitMix64 env_rng(SplitMix64::derive_seed(cfg.seed, kEnvStream));
  SplitMix64 explore_rng(SplitMix64::derive_seed(cfg.seed, kExploreStream));

  for (int ep = 0; ep < cfg.episodes; ++ep) {
    const double frac =
        cfg.episodes > 1 ? static_cast<double>(ep) / (cfg.episodes - 1) : 1.0;
    const double epsilon =
        cfg.epsilon_start + (cfg.epsilon_end - cfg.epsilon_start) * frac;

    ProductState ps = product_reset(layout, tasks, env_rng);
    std::vector<std::string> keys(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      keys[static_cast<size_t>(i)] = observation_key(layout, ps, i);
    }

    while (!is_terminal(ps)) {
      JointAction joint(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        if (explore_rng.next_bernoulli(epsilon)) {
          joint[static_cast<size_t>(i)] = static_cast<Action>(
              explore_rng.next_below(static_cast<uint64_t>(kNumActions)));
        } else {
          joint[static_cast<size_t>(i)] = static_cast<Action>(
              greedy_action(table.read(i, keys[static_cast<size_t>(i)])));
        }
      }

      const StepOutcome out = product_step(layout, ps, joint, cfg.gamma);
      std::vector<std::string> next_keys(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        next_keys[static_cast<size_t>(i)] =
            observation_key(layout, out.next, i);
      }

      for (int i = 0; i < n; ++i) {
        const double reward =
            cfg.shaped ? out.shaped_rewards[static_cast<size_t>(i)]
                       : out.team_reward;
        double target = reward;
        if (!out.done) {
          const auto next_row =
              table.read(i, next_keys[static_cast<size_t>(i)]);
          target += cfg.gamma * next_row[static_cast<size_t>(
                                    greedy_action(next_row))];
        }
        auto& row = table.row(i, keys[static_cast<size_t>(i)]);
        const size_t a = static_cast<size_t>(joint[static_cast<size_t>(i)]);
        row[a] += cfg.alpha * (target - row[a]);
      }

      ps = out.next;
      keys = std::move(next_keys);
    }
  }
  return table;
}

EvalResult estimate_success(const Layout& layout, const DfaVector& tasks,
                            const QTable& table, int episodes, uint64_t seed) {
  if (episodes < 0) {
    throw Error(ErrorCode::invalid_config, "episodes must be nonnegative");
  }
  EvalResult result;
  result.episodes = episodes;
  if (episodes == 0) return result;

  const int n = layout.num_agents();
  auto run_episode = [&](int index) {
    ProductState ps =
        product_reset(layout, tasks, SplitMix64::derive_seed(seed, index));
    while (!is_terminal(ps)) {
      JointAction joint(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        joint[static_cast<size_t>(i)] = static_cast<Action>(
            greedy_action(table.read(i, observation_key(layout, ps, i))));
      }
      // The discount only feeds reward fields this estimate ignores.
      ps = product_step(layout, ps, joint, 0.99).next;
    }
    return ps.tasks.all_accepting();
  };

  // Per-episode seeds make each outcome independent of scheduling; summing
  // booleans makes the aggregate independent of the worker count.
  const int workers = std::min(worker_count(), episodes);
  std::atomic<int> next_index{0};
  std::vector<int> wins(static_cast<size_t>(workers), 0);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      int index;
      while ((index = next_index.fetch_add(1)) < episodes) {
        if (run_episode(index)) ++wins[static_cast<size_t>(w)];
      }
    });
  }
  for (std::thread& t : pool) t.join();

  int total = 0;
  for (const int w : wins) total += w;
  const double p = static_cast<double>(total) / episodes;
  result.success_rate = p;
  result.standard_error = std::sqrt(p * (1.0 - p) / episodes);
  return result;
}

void save_qtable(const QTable& table, const QTableManifest& manifest,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io_error,
                "qtable: cannot write " + path.string());
  }
  json meta;
  meta["layout_hash"] = manifest.layout_hash;
  meta["task_codes"] = manifest.task_codes;
  meta["gamma"] = manifest.gamma;
  meta["shaped"] = manifest.shaped;
  meta["episodes"] = manifest.episodes;
  meta["train_seed"] = manifest.train_seed;
  const std::string meta_bytes = meta.dump();

  out.write("TGQT", 4);
  write_u32(out, 1);
  write_u64(out, meta_bytes.size());
  out.write(meta_bytes.data(),
            static_cast<std::streamsize>(meta_bytes.size()));
  write_u32(out, static_cast<uint32_t>(table.num_agents()));
  write_u64(out, table.init_seed());

  for (int agent = 0; agent < table.num_agents(); ++agent) {
    // Sorted keys give byte-identical files for equal tables.
    std::vector<const std::string*> keys;
    keys.reserve(table.rows(agent));
    for (const auto& entry : table.table(agent)) keys.push_back(&entry.first);
    std::sort(keys.begin(), keys.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });
    write_u64(out, keys.size());
    for (const std::string* key : keys) {
      write_u32(out, static_cast<uint32_t>(key->size()));
      out.write(key->data(), static_cast<std::streamsize>(key->size()));
      for (const double v : table.table(agent).at(*key)) write_f64(out, v);
    }
  }
  if (!out) {
    throw Error(ErrorCode::io_error, "qtable: write failed: " + path.string());
  }
}

QTable load_qtable(const std::filesystem::path& path,
                   QTableManifest* manifest_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io_error, "qtable: cannot read " + path.string());
  }
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "TGQT", 4) != 0) {
    throw Error(ErrorCode::io_error, "qtable: not a qtable file");
  }
  const uint32_t version = read_u32(in);
  if (version != 1) {
    throw Error(ErrorCode::io_error,
                "qtable: unsupported version " + std::to_string(version));
  }
  const uint64_t meta_len = read_u64(in);
  if (meta_len > (1u << 20)) {
    throw Error(ErrorCode::io_error, "qtable: oversized manifest");
  }
  std::string meta_bytes(meta_len, '\0');
  in.read(meta_bytes.data(), static_cast<std::streamsize>(meta_len));
  if (!in) throw Error(ErrorCode::io_error, "qtable: truncated file");

  QTableManifest manifest;
  try {
    const json meta = json::parse(meta_bytes);
    manifest.layout_hash = meta.at("layout_hash").get<std::string>();
    manifest.task_codes =
        meta.at("task_codes").get<std::vector<std::string>>();
    manifest.gamma = meta.at("gamma").get<double>();
    manifest.shaped = meta.at("shaped").get<bool>();
    manifest.episodes = meta.at("episodes").get<int>();
    manifest.train_seed = meta.at("train_seed").get<uint64_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io_error,
                std::string("qtable: bad manifest: ") + e.what());
  }

  const uint32_t num_agents = read_u32(in);
  if (num_agents == 0 || num_agents > 64) {
    throw Error(ErrorCode::io_error, "qtable: bad agent count");
  }
  const uint64_t init_seed = read_u64(in);
  QTable table(static_cast<int>(num_agents), init_seed);
  for (uint32_t agent = 0; agent < num_agents; ++agent) {
    const uint64_t rows = read_u64(in);
    for (uint64_t r = 0; r < rows; ++r) {
      const uint32_t key_len = read_u32(in);
      if (key_len > (1u << 20)) {
        throw Error(ErrorCode::io_error, "qtable: oversized key");
      }
      std::string key(key_len, '\0');
      in.read(key.data(), key_len);
      if (!in) throw Error(ErrorCode::io_error, "qtable: truncated file");
      auto& row = table.row(static_cast<int>(agent), key);
      for (double& v : row) v = read_f64(in);
    }
  }
  if (manifest_out != nullptr) *manifest_out = manifest;
  return table;
}

void require_manifest_match(const QTableManifest& manifest,
                            const Layout& layout, const DfaVector& tasks) {
  const std::string layout_hash = sha256_hex(layout.to_text());
  if (manifest.layout_hash != layout_hash) {
    throw Error(ErrorCode::manifest_mismatch,
                "table was trained on a different map");
  }
  const std::vector<TaskCode> codes = encode_vector(tasks);
  if (manifest.task_codes.size() != codes.size()) {
    throw Error(ErrorCode::manifest_mismatch,
                "table was trained with a different agent count");
  }
  for (size_t i = 0; i < codes.size(); ++i) {
    if (manifest.task_codes[i] != codes[i].hex()) {
      throw Error(ErrorCode::manifest_mismatch,
                  "table was trained on different tasks (agent " +
                      std::to_string(i) + ")");
    }
  }
}

}  // namespace taskgrid
