// SPDX-License-Identifier: Apache-2.0
#pragma once

// Single-fault mutations: each one breaks exactly one well-formedness rule
// of an otherwise valid model.

#include <functional>
#include <string>
#include <vector>

#include "bmx/grade.hpp"
#include "bmx/nibm.hpp"
#include "bmx/umlad.hpp"

namespace bmx::testgen {

template <class Model>
struct Fault {
    std::string rule;
    std::function<void(Model&)> apply;
};

/// Every rule id each validator can report.
extern const std::vector<std::string> kNibmRules;
extern const std::vector<std::string> kGradeRules;
extern const std::vector<std::string> kUmladRules;

std::vector<Fault<nibm::Process>> nibm_faults();
std::vector<Fault<grade::Process>> grade_faults();
std::vector<Fault<umlad::Activity>> umlad_faults();

/// Structural kind-for-kind views between UML activities and NIBM graphs.
nibm::Process as_graph(const umlad::Activity& activity);
umlad::Activity as_activity(const nibm::Process& process);

}  // namespace bmx::testgen
