// SPDX-License-Identifier: Apache-2.0
#pragma once

// Random well-formed models for property tests. All generators are
// block-structured so every split is eventually unified (or ends in its own
// final node), which keeps the token game deadlock-free.

#include <cstddef>
#include <random>

#include "bmx/grade.hpp"
#include "bmx/nibm.hpp"
#include "bmx/umlad.hpp"

namespace bmx::testgen {

using Rng = std::mt19937;

struct GradeOptions {
    std::size_t max_tasks = 8;
    bool loops = true;
    bool early_ends = true;
    bool performers = true;
    bool guards = true;
    bool shuffle = true;  // permute element order in the document
};

grade::Process random_grade(Rng& rng, const GradeOptions& options = {});

/// Tasks + starts + ends.
std::size_t node_count(const grade::Process& process);

struct GraphOptions {
    std::size_t max_nodes = 14;  // soft budget for non start/stop nodes
    bool loops = true;
    bool early_ends = true;
    bool performers = true;
    bool guards = true;
    bool shuffle = true;
};

umlad::Activity random_umlad(Rng& rng, const GraphOptions& options = {});

/// Unification->Task edges become Incoming and Task->split edges Outgoing
/// with probability `typed_transitions`; the rest stay Pass.
nibm::Process random_nibm(Rng& rng, const GraphOptions& options = {}, double typed_transitions = 0.5);

/// Consistent id renaming plus element shuffling; the result is isomorphic.
nibm::Process scramble(Rng& rng, const nibm::Process& process);

}  // namespace bmx::testgen
