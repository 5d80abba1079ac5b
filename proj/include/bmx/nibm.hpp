// SPDX-License-Identifier: Apache-2.0
#pragma once

// Notation-independent business process metamodel. Every concrete notation
// is mapped onto these classes; the mapping engine treats NibmProcess as its
// intermediate representation.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bmx/performer.hpp"
#include "bmx/report.hpp"

namespace bmx::nibm {

enum class NodeKind { Task, Decision, Fork, Merge, Join, Start, Stop };

/// Pass is an ordinary flow. Incoming attaches a Merge/Join to the task it
/// triggers; Outgoing attaches a task to the Decision/Fork that branches it.
enum class TransitionKind { Pass, Incoming, Outgoing };

std::string_view to_string(NodeKind kind);
std::string_view to_string(TransitionKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);
std::optional<TransitionKind> parse_transition_kind(std::string_view text);

inline bool is_unification(NodeKind k) { return k == NodeKind::Merge || k == NodeKind::Join; }
inline bool is_split(NodeKind k) { return k == NodeKind::Decision || k == NodeKind::Fork; }

/// Guard text marking the default outflow of a Decision.
inline constexpr std::string_view kElseGuard = "else";

struct Performer {
    std::string id;
    PerformerKind kind = PerformerKind::Resource;
    std::string name;

    friend bool operator==(const Performer&, const Performer&) = default;
};

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Task;
    std::string label;
    std::optional<std::string> performer;  // performer id, tasks only

    friend bool operator==(const Node&, const Node&) = default;
};

struct Transition {
    std::string id;
    TransitionKind kind = TransitionKind::Pass;
    std::string source;
    std::string target;
    std::optional<std::string> guard;  // only on Decision outflows

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct EnterpriseContext {
    std::optional<std::string> enterprise;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    friend bool operator==(const EnterpriseContext&, const EnterpriseContext&) = default;
};

struct Process {
    std::string id;
    std::string name;
    std::vector<Node> nodes;
    std::vector<Transition> transitions;
    std::vector<Performer> performers;
    std::optional<EnterpriseContext> context;

    const Node* find_node(std::string_view node_id) const;
    const Transition* find_transition(std::string_view transition_id) const;
    const Performer* find_performer(std::string_view performer_id) const;

    friend bool operator==(const Process&, const Process&) = default;
};

/// Index-based adjacency over a structurally sound process.
struct Adjacency {
    std::map<std::string, std::size_t> node_index;
    std::vector<std::vector<std::size_t>> inflows;   // transition indices per node
    std::vector<std::vector<std::size_t>> outflows;  // transition indices per node
    std::vector<std::size_t> source;                 // node index per transition
    std::vector<std::size_t> target;                 // node index per transition

    explicit Adjacency(const Process& process);
};

/// Throws ParseError on duplicate ids or references that do not resolve.
void check_structure(const Process& process);

/// Well-formedness check. Structural problems are raised as ParseError
/// before any rule is evaluated.
ValidationReport validate(const Process& process);

/// Canonical form: nodes in breadth-first order from Start (siblings ordered
/// by kind, label, then a structural signature), ids renumbered densely as
/// n1.., t1.., p1... Idempotent.
Process normalize(const Process& process);

/// Like normalize, also returning the old-id to new-id renaming for nodes,
/// transitions and performers.
struct NormalizedProcess {
    Process process;
    std::map<std::string, std::string> nodes;
    std::map<std::string, std::string> transitions;
    std::map<std::string, std::string> performers;
};
NormalizedProcess normalize_with_renaming(const Process& process);

struct IsomorphismResult {
    bool isomorphic = false;
    std::map<std::string, std::string> witness;  // node id in a -> node id in b
    std::string mismatch;                         // first reason when not isomorphic
};

/// Searches for a bijection between node sets preserving kind, label,
/// performer (kind and name) and the multiset of transitions (kind, guard)
/// between every node pair.
IsomorphismResult isomorphic(const Process& a, const Process& b);

// Interchange form, notation tag "nibm".
Process read(std::string_view document, bool require_tag = true);
std::string write(const Process& process);

}  // namespace bmx::nibm
