// SPDX-License-Identifier: Apache-2.0
#pragma once

// Command layer behind the bmx executable. Commands write human output to
// the given stream and return an outcome instead of exiting, so they can be
// driven in-process.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bmx::cli {

enum ExitCode : int {
    kOk = 0,
    kFailed = 1,        // validation, mapping or equivalence failure
    kUsage = 2,         // bad arguments, unreadable or malformed input
    kInconclusive = 3,  // enumeration bounds reached
};

struct CommandOutcome {
    int exit_code = kOk;
    std::optional<std::string> report_path;
    std::vector<std::string> messages;
};

struct ValidateOptions {
    std::string input;
    std::string notation = "auto";
    std::optional<std::string> report;
};

struct ConvertOptions {
    std::string input;
    std::optional<std::string> output;  // standard output when absent
    std::string from = "auto";
    std::string to;
    std::optional<std::string> trace;
    bool allow_synthetic = false;
    std::optional<std::string> from_mapping;  // definition files replacing the builtins
    std::optional<std::string> to_mapping;
    std::optional<std::string> report;
};

struct TraceOptions {
    std::string input;
    std::string from = "auto";
    std::string to = "nibm";
    bool allow_synthetic = false;
    std::optional<std::string> report;
};

struct EquivOptions {
    std::string a;
    std::string b;
    std::optional<std::size_t> max_states;
    std::optional<std::size_t> max_len;
    std::optional<std::string> report;
};

struct RoundtripOptions {
    std::string input;
    std::string from = "auto";
    std::string via = "nibm";
    bool allow_synthetic = false;
    std::optional<std::string> report;
};

struct MappingOptions {
    std::string notation;
    std::optional<std::string> definition;  // validate this file instead of printing a builtin
};

CommandOutcome cmd_validate(const ValidateOptions& options, std::ostream& out);
CommandOutcome cmd_convert(const ConvertOptions& options, std::ostream& out);
CommandOutcome cmd_trace(const TraceOptions& options, std::ostream& out);
CommandOutcome cmd_check_equiv(const EquivOptions& options, std::ostream& out);
CommandOutcome cmd_roundtrip(const RoundtripOptions& options, std::ostream& out);
CommandOutcome cmd_mapping(const MappingOptions& options, std::ostream& out);

/// Parses arguments (without the program name) and dispatches. Usage
/// errors go to `err` and yield kUsage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bmx::cli
