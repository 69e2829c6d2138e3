#include "taskgrid/layout.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "taskgrid/errors.hpp"

namespace taskgrid {

namespace {

bool known_glyph(char g) {
  return g == '#' || g == '.' || g == '@' || (g >= '0' && g <= '9') ||
         (g >= 'a' && g <= 'd') || (g >= 'A' && g <= 'D');
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Layout Layout::parse(const std::string& text) {
  Layout out;
  std::optional<int> header_agents;
  std::vector<std::string> rows;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string line = strip(raw);
    if (line.empty()) continue;
    const size_t colon = line.find(':');
    if (colon != std::string::npos) {
      const std::string key = strip(line.substr(0, colon));
      const std::string value = strip(line.substr(colon + 1));
      int parsed = 0;
      try {
        parsed = std::stoi(value);
      } catch (...) {
        throw Error(ErrorCode::invalid_layout,
                    "header '" + key + "' needs an integer, got '" + value + "'");
      }
      if (key == "max_steps") {
        out.max_steps_ = parsed;
      } else if (key == "agents") {
        header_agents = parsed;
      } else {
        throw Error(ErrorCode::invalid_layout, "unknown header '" + key + "'");
      }
      continue;
    }
    rows.push_back(line);
  }

  if (rows.empty()) {
    throw Error(ErrorCode::invalid_layout, "map has no grid rows");
  }
  out.height_ = static_cast<int>(rows.size());
  out.width_ = static_cast<int>(rows.front().size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != out.width_) {
      throw Error(ErrorCode::invalid_layout, "grid rows differ in length");
    }
  }
  if (out.max_steps_ < 1) {
    throw Error(ErrorCode::invalid_layout, "max_steps must be >= 1");
  }

  out.grid_.reserve(static_cast<size_t>(out.width_) * out.height_);
  int max_token = -1;
  std::array<bool, 4> door_colors{};
  std::array<bool, 4> button_colors{};
  for (int y = 0; y < out.height_; ++y) {
    for (int x = 0; x < out.width_; ++x) {
      const char g = rows[static_cast<size_t>(y)][static_cast<size_t>(x)];
      if (!known_glyph(g)) {
        throw Error(ErrorCode::invalid_layout,
                    std::string("unknown glyph '") + g + "' at (" +
                        std::to_string(x) + "," + std::to_string(y) + ")");
      }
      out.grid_.push_back(g);
      if (g == '@') out.spawn_cells_.push_back({x, y});
      if (g >= '0' && g <= '9') max_token = std::max(max_token, g - '0');
      if (g >= 'a' && g <= 'd') button_colors[static_cast<size_t>(g - 'a')] = true;
      if (g >= 'A' && g <= 'D') door_colors[static_cast<size_t>(g - 'A')] = true;
    }
  }
  out.alphabet_size_ = std::max(1, max_token + 1);

  for (int c = 0; c < 4; ++c) {
    if (door_colors[static_cast<size_t>(c)] && !button_colors[static_cast<size_t>(c)]) {
      throw Error(ErrorCode::invalid_layout,
                  std::string("door '") + static_cast<char>('A' + c) +
                      "' has no matching button");
    }
  }

  out.num_agents_ = header_agents.value_or(static_cast<int>(out.spawn_cells_.size()));
  if (out.num_agents_ < 1) {
    throw Error(ErrorCode::invalid_layout, "map needs at least one agent/spawn");
  }
  if (static_cast<int>(out.spawn_cells_.size()) < out.num_agents_) {
    throw Error(ErrorCode::invalid_layout,
                "fewer spawn cells than agents (" +
                    std::to_string(out.spawn_cells_.size()) + " < " +
                    std::to_string(out.num_agents_) + ")");
  }
  return out;
}

Layout Layout::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Layout::to_text() const {
  std::ostringstream out;
  out << "max_steps: " << max_steps_ << "\n";
  out << "agents: " << num_agents_ << "\n";
  for (int y = 0; y < height_; ++y) {
    out << std::string_view(grid_).substr(static_cast<size_t>(y) * width_,
                                          static_cast<size_t>(width_))
        << "\n";
  }
  return out.str();
}

std::optional<Symbol> Layout::token_at(Cell c) const {
  const char g = glyph(c);
  if (g >= '0' && g <= '9') return g - '0';
  return std::nullopt;
}

std::optional<int> Layout::button_color_at(Cell c) const {
  const char g = glyph(c);
  if (g >= 'a' && g <= 'd') return g - 'a';
  return std::nullopt;
}

std::optional<int> Layout::door_color_at(Cell c) const {
  const char g = glyph(c);
  if (g >= 'A' && g <= 'D') return g - 'A';
  return std::nullopt;
}

void save_layout(const Layout& layout, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
  }
  out << layout.to_text();
  if (!out) {
    throw Error(ErrorCode::io_error, "write failed for " + path.string());
  }
}

}  // namespace taskgrid
