// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace bmx {

/// What a performer reference ultimately points at. Resource is explicit;
/// the others reach a resource indirectly.
enum class PerformerKind { Resource, OrganizationalUnit, Role, Qualification };

std::string_view to_string(PerformerKind kind);
std::optional<PerformerKind> parse_performer_kind(std::string_view text);

}  // namespace bmx
