#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "taskgrid/layout.hpp"
#include "taskgrid/product.hpp"

namespace taskgrid {

/// Exact finite model of the cascade on a small map: every reachable
/// (positions, task vector) pair. The step counter is abstracted away
/// because the dynamics are stationary; the cap re-enters when a policy is
/// walked against the model (see greedy_success). Task entries are stored
/// in canonical form so language-equal states collapse to one index.
struct EnumeratedGame {
  explicit EnumeratedGame(Layout map) : layout(std::move(map)) {}

  Layout layout;
  int num_agents = 0;
  /// kNumActions^num_agents; agent 0 is the least significant digit.
  int num_joint_actions = 0;

  std::vector<ProductState> states;  // grid flags zeroed, tasks canonical
  std::vector<int> initial_states;   // one per spawn arrangement, sorted
  /// next_state[s] is empty when s is terminal, otherwise indexed by joint
  /// action. Rewards are derived from the masks rather than stored:
  /// team(s,a) = all_accepting(next_state[s][a]).
  std::vector<std::vector<int>> next_state;
  /// Bit i set iff agent i's entry is trivially accepting (its potential).
  std::vector<uint32_t> accepting_mask;
  /// Entry-wise trivial (accepting or rejecting); no outgoing transitions.
  std::vector<uint8_t> terminal;

  std::unordered_map<std::string, int> index;

  bool all_accepting(int state) const {
    return accepting_mask[static_cast<size_t>(state)] ==
           (1u << num_agents) - 1u;
  }
  double team_reward(int state, int joint_action) const {
    return all_accepting(next_state[static_cast<size_t>(state)]
                                   [static_cast<size_t>(joint_action)])
               ? 1.0
               : 0.0;
  }
  double potential_of(int state, int agent) const {
    return (accepting_mask[static_cast<size_t>(state)] >> agent) & 1u ? 1.0
                                                                      : 0.0;
  }

  /// Index of an arbitrary product state (step counter ignored), or -1 if
  /// the state is not reachable from any spawn arrangement.
  int find_state(const ProductState& ps) const;
};

JointAction joint_action_from_index(int index, int num_agents);
int joint_action_index(const JointAction& joint);

/// Breadth-first closure over all spawn arrangements. Throws
/// Error(enumeration_cap_exceeded) past max_states, and the same
/// validation errors as product_reset for a malformed task vector.
EnumeratedGame enumerate_product(const Layout& layout, const DfaVector& tasks,
                                 size_t max_states = 2'000'000);

}  // namespace taskgrid
