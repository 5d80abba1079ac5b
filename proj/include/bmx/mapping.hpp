// SPDX-License-Identifier: Apache-2.0
#pragma once

// Declarative class correspondences between a notation metamodel and the
// independent metamodel. Rules are data: a guard over the source instance's
// attributes selects the rule, and its templates say which independent
// elements the instance becomes. The same definition is interpreted in both
// directions.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bmx/grade.hpp"
#include "bmx/guard.hpp"
#include "bmx/instance.hpp"
#include "bmx/nibm.hpp"
#include "bmx/report.hpp"
#include "bmx/umlad.hpp"

namespace bmx::mapping {

/// Role of the element that is the identity image of its source instance.
/// It keeps the source id; other roles get "<source id>.<role>".
inline constexpr std::string_view kSelfRole = "self";
/// Transition endpoints naming the ports of an edge instance's endpoints.
inline constexpr std::string_view kSourcePort = "@source";
inline constexpr std::string_view kTargetPort = "@target";

enum class ElementCategory { Node, Transition, Performer };

/// Where inflows (Entry) and outflows (Exit) of a source instance attach.
enum class Port { None, Entry, Exit };

struct ElementTemplate {
    ElementCategory category = ElementCategory::Node;
    std::string kind;  // nibm NodeKind or TransitionKind name
    std::string role = std::string(kSelfRole);
    Port port = Port::None;
    std::string from;  // transitions: local role or @source
    std::string to;    // transitions: local role or @target
    /// independent-side attribute <- source attribute or reference name
    std::map<std::string, std::string> copies;
};

struct MappingRule {
    std::string id;
    std::string source_class;
    guard::Predicate guard;
    std::vector<ElementTemplate> produces;
    std::vector<std::string> consumes;
};

struct MappingDefinition {
    std::string source_notation;
    std::vector<MappingRule> rules;
    std::vector<std::vector<std::string>> xor_groups;

    const MappingRule* find_rule(std::string_view id) const;
};

MappingDefinition builtin_grade_mapping();
MappingDefinition builtin_umlad_mapping();
/// Throws std::invalid_argument for an unknown notation id.
MappingDefinition builtin_mapping(std::string_view notation);

/// Checks classes, attribute references, roles, ports and xor groups
/// against the notation's class schema.
ValidationReport validate_definition(const MappingDefinition& definition);

std::string to_json(const MappingDefinition& definition);
MappingDefinition definition_from_json(std::string_view document);

enum class Direction { ToNibm, FromNibm, Derived };
std::string_view to_string(Direction direction);

struct TraceLink {
    std::string source;
    std::string rule;
    std::vector<std::string> produced;
    std::vector<std::string> via;  // shared independent ids, derived links only

    friend bool operator==(const TraceLink&, const TraceLink&) = default;
};

struct MappingTrace {
    Direction direction = Direction::ToNibm;
    std::vector<TraceLink> links;

    std::string to_json() const;
    /// One row per source element: rules fired and everything produced.
    std::string to_table() const;
    std::size_t row_count() const;
};

using NotationModel = std::variant<grade::Process, umlad::Activity>;

std::string_view notation_of(const NotationModel& model);
/// Every element id of a model, in declaration order.
std::vector<std::string> element_ids(const NotationModel& model);
std::vector<std::string> element_ids(const nibm::Process& process);

struct ProjectionOptions {
    /// Expand control structures with no inverse image into synthetic
    /// no-op tasks instead of rejecting them.
    bool allow_synthetic = false;
};

/// Prefix of synthetic task ids and names.
inline constexpr std::string_view kSyntheticPrefix = "syn.";

struct NibmProjection {
    nibm::Process process;
    MappingTrace trace;
};

struct NotationProjection {
    NotationModel model;
    MappingTrace trace;
};

NibmProjection project_to_nibm(const instance::InstanceModel& model,
                               const MappingDefinition& definition);
NibmProjection project_to_nibm(const NotationModel& model, const MappingDefinition& definition);

NotationProjection project_from_nibm(const nibm::Process& process,
                                     const MappingDefinition& definition,
                                     ProjectionOptions options = {});

/// Notation A -> independent -> notation B, with the independent model
/// normalized in between. The trace composes both primary traces.
NotationProjection derive(const NotationModel& model,
                          const MappingDefinition& from_definition,
                          const MappingDefinition& to_definition,
                          ProjectionOptions options = {});

/// Empty iff every id in `source_ids` appears as the source of some link.
ValidationReport check_totality(const MappingTrace& trace,
                                const std::vector<std::string>& source_ids);
ValidationReport check_totality(const MappingTrace& trace, const NotationModel& source);
ValidationReport check_totality(const MappingTrace& trace, const nibm::Process& source);

}  // namespace bmx::mapping
