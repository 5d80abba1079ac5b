// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reflective view of notation models. The mapping engine never touches
// notation structs directly; it reads and writes these generic instances,
// so a new notation only needs a class schema plus reflect/reify.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bmx/grade.hpp"
#include "bmx/guard.hpp"
#include "bmx/umlad.hpp"

namespace bmx::instance {

/// Reference names used by edge classes.
inline constexpr std::string_view kSourceRef = "source";
inline constexpr std::string_view kTargetRef = "target";
/// Derived attributes every edge instance carries: class of each endpoint.
inline constexpr std::string_view kSourceClass = "sourceClass";
inline constexpr std::string_view kTargetClass = "targetClass";

struct Instance {
    std::string id;
    std::string cls;
    guard::Attributes attributes;
    std::map<std::string, std::string, std::less<>> references;  // role -> instance id
};

struct InstanceModel {
    std::string notation;
    std::string name;
    std::vector<Instance> instances;

    const Instance* find(std::string_view id) const;
};

/// Attribute and reference names per class of a notation metamodel.
struct ClassSchema {
    std::vector<std::string> attributes;
    std::vector<std::string> references;
    bool edge = false;  // carries source/target references
};

using MetamodelSchema = std::map<std::string, ClassSchema, std::less<>>;

/// Throws std::invalid_argument for an unknown notation id.
const MetamodelSchema& schema_for(std::string_view notation);

InstanceModel reflect(const grade::Process& process);
InstanceModel reflect(const umlad::Activity& activity);

/// Inverse of reflect. Throws ParseError if instances do not form a
/// structurally sound model.
grade::Process reify_grade(const InstanceModel& model);
umlad::Activity reify_umlad(const InstanceModel& model);

}  // namespace bmx::instance
