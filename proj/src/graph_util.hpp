// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reachability helpers shared by the three validators.

#include <cstddef>
#include <utility>
#include <vector>

namespace bmx::detail {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// Nodes reachable from any seed, following edges forward (or backward).
std::vector<bool> reach(std::size_t node_count, const EdgeList& edges,
                        const std::vector<std::size_t>& seeds, bool backward);

/// Nodes that cannot be reached from an entry and nodes that cannot reach an
/// exit. Nodes with no inflow (or no outflow) count as entries (or exits) so
/// that a degree violation is not reported a second time as a reachability
/// one.
struct ReachabilityFaults {
    std::vector<std::size_t> unreachable;
    std::vector<std::size_t> stranded;
};

ReachabilityFaults reachability_faults(std::size_t node_count, const EdgeList& edges,
                                       const std::vector<bool>& is_entry,
                                       const std::vector<bool>& is_exit, bool check_exits);

}  // namespace bmx::detail
