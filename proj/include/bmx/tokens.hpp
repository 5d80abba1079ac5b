// SPDX-License-Identifier: Apache-2.0
#pragma once

// Bounded token game over independent process models. Tokens sit on
// transitions. The executor exists to compare the behaviour of a model with
// the behaviour of its translations.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "bmx/mapping.hpp"
#include "bmx/nibm.hpp"

namespace bmx::tokens {

/// Token count per transition, indexed like Process::transitions.
/// Tokens reaching a Stop are absorbed immediately and never appear here.
struct Marking {
    std::vector<std::uint16_t> counts;

    bool empty() const;
    friend auto operator<=>(const Marking&, const Marking&) = default;
};

struct Bounds {
    std::size_t max_states = 100000;
    std::size_t max_trace_len = 200;
};

/// Default bounds, with BMX_MAX_STATES taking precedence when set.
Bounds default_bounds();

using Trace = std::vector<std::string>;

struct TraceSet {
    std::set<Trace> traces;
    bool complete = true;
    std::set<Marking> deadlocks;

    std::string to_json() const;
};

struct Step {
    std::string fired;  // node id
    Marking successor;
};

class TokenGame {
public:
    /// Throws std::invalid_argument unless validate(process) is empty.
    explicit TokenGame(const nibm::Process& process);

    Marking initial() const;
    std::vector<Step> steps(const Marking& marking) const;
    /// Task label when `node_id` is a Task, nothing for control nodes and
    /// for synthetic no-op tasks, which fire silently.
    std::optional<std::string> label_of(const std::string& node_id) const;

    const nibm::Process& process() const { return process_; }

private:
    void put(Marking& marking, std::size_t transition) const;

    nibm::Process process_;
    nibm::Adjacency adjacency_;
};

std::vector<Step> step_rules(const nibm::Process& process, const Marking& marking);

/// Depth-first enumeration of completed task-label sequences. Hitting a
/// bound yields complete=false with whatever was found so far.
TraceSet enumerate_traces(const nibm::Process& process, Bounds bounds = {});

enum class Verdict { Equal, Different, Inconclusive };

struct Equivalence {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Trace> counterexample;  // present in exactly one side
};

using AnyModel = std::variant<nibm::Process, grade::Process, umlad::Activity>;

/// Notation models are first projected with the builtin mappings.
nibm::Process to_nibm(const AnyModel& model);

Equivalence equivalent(const AnyModel& a, const AnyModel& b, Bounds bounds = {});

}  // namespace bmx::tokens
