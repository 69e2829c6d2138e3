#pragma once

#include <vector>

#include "taskgrid/dfa.hpp"
#include "taskgrid/layout.hpp"

namespace taskgrid {

/// True iff some joint action sequence started from `spawn` drives every
/// task to a universally accepting residual within the map's step cap.
/// Searches histories outright: raw delta-star walks over the given
/// automata (no minimization, no progression, no product model), so it
/// stays independent of the machinery it is used to check.
bool exhaustive_plan_success(const Layout& layout, const std::vector<Dfa>& tasks,
                        const std::vector<Cell>& spawn);

}  // namespace taskgrid
