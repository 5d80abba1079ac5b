// SPDX-License-Identifier: Apache-2.0
#include "bmx/performer.hpp"

namespace bmx {

std::string_view to_string(PerformerKind kind) {
    switch (kind) {
        case PerformerKind::Resource: return "Resource";
        case PerformerKind::OrganizationalUnit: return "OrganizationalUnit";
        case PerformerKind::Role: return "Role";
        case PerformerKind::Qualification: return "Qualification";
    }
    return "Resource";
}

std::optional<PerformerKind> parse_performer_kind(std::string_view text) {
    for (auto k : {PerformerKind::Resource, PerformerKind::OrganizationalUnit, PerformerKind::Role,
                   PerformerKind::Qualification})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

}  // namespace bmx
