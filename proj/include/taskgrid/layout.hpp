#pragma once

#include <compare>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "taskgrid/dfa.hpp"

namespace taskgrid {

/// Grid coordinates: x grows rightward, y grows downward (reading order).
struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

/// Static description of a token grid, parsed from the ASCII map format:
///
///   max_steps: 40      (header, optional, default 100)
///   agents: 2          (header, optional, defaults to the spawn count)
///   #########
///   #@.1..b.#
///   #.@..#B2#
///   #########
///
/// Glyphs: `#` wall, `.` floor, `0`-`9` tokens, `a`-`d` buttons, `A`-`D`
/// doors (same letter = same color), `@` spawn cell. With exactly as many
/// spawn cells as agents they are assigned in reading order; with more, the
/// agents spawn on distinct cells drawn uniformly from them.
class Layout {
 public:
  static Layout parse(const std::string& text);
  static Layout load(const std::filesystem::path& path);
  std::string to_text() const;

  int width() const { return width_; }
  int height() const { return height_; }
  int max_steps() const { return max_steps_; }
  int num_agents() const { return num_agents_; }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  bool is_wall(Cell c) const { return glyph(c) == '#'; }
  /// Token under a cell, if any.
  std::optional<Symbol> token_at(Cell c) const;
  /// Button color 0..3 under a cell, if any.
  std::optional<int> button_color_at(Cell c) const;
  /// Door color 0..3 under a cell, if any.
  std::optional<int> door_color_at(Cell c) const;
  /// Enterable at all, doors included (openness is dynamic).
  bool is_passable(Cell c) const { return in_bounds(c) && !is_wall(c); }

  const std::vector<Cell>& spawn_cells() const { return spawn_cells_; }
  bool fixed_spawns() const {
    return static_cast<int>(spawn_cells_.size()) == num_agents_;
  }

  /// Token alphabet implied by the map: highest token digit + 1 (at least 1
  /// so that task automata over the map always have a valid alphabet).
  int alphabet_size() const { return alphabet_size_; }

  char glyph(Cell c) const { return grid_[static_cast<size_t>(c.y) * width_ + c.x]; }

 private:
  Layout() = default;

  int width_ = 0;
  int height_ = 0;
  int max_steps_ = 100;
  int num_agents_ = 0;
  int alphabet_size_ = 1;
  std::string grid_;  // row-major glyphs
  std::vector<Cell> spawn_cells_;
};

void save_layout(const Layout& layout, const std::filesystem::path& path);

}  // namespace taskgrid
