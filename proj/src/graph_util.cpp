// SPDX-License-Identifier: Apache-2.0
#include "graph_util.hpp"

#include <deque>

namespace bmx::detail {

std::vector<bool> reach(std::size_t node_count, const EdgeList& edges,
                        const std::vector<std::size_t>& seeds, bool backward) {
    std::vector<std::vector<std::size_t>> next(node_count);
    for (auto [s, t] : edges) {
        if (backward)
            next[t].push_back(s);
        else
            next[s].push_back(t);
    }
    std::vector<bool> seen(node_count, false);
    std::deque<std::size_t> queue;
    for (auto s : seeds) {
        if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        auto n = queue.front();
        queue.pop_front();
        for (auto m : next[n]) {
            if (!seen[m]) {
                seen[m] = true;
                queue.push_back(m);
            }
        }
    }
    return seen;
}

ReachabilityFaults reachability_faults(std::size_t node_count, const EdgeList& edges,
                                       const std::vector<bool>& is_entry,
                                       const std::vector<bool>& is_exit, bool check_exits) {
    std::vector<std::size_t> in_degree(node_count, 0), out_degree(node_count, 0);
    for (auto [s, t] : edges) {
        ++out_degree[s];
        ++in_degree[t];
    }
    std::vector<std::size_t> entries, exits;
    for (std::size_t i = 0; i < node_count; ++i) {
        if (is_entry[i] || in_degree[i] == 0) entries.push_back(i);
        if (is_exit[i] || out_degree[i] == 0) exits.push_back(i);
    }
    ReachabilityFaults faults;
    auto forward = reach(node_count, edges, entries, false);
    for (std::size_t i = 0; i < node_count; ++i)
        if (!forward[i]) faults.unreachable.push_back(i);
    if (check_exits) {
        auto backward = reach(node_count, edges, exits, true);
        for (std::size_t i = 0; i < node_count; ++i)
            if (!backward[i]) faults.stranded.push_back(i);
    }
    return faults;
}

}  // namespace bmx::detail
