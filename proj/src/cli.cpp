// SPDX-License-Identifier: Apache-2.0
#include "bmx/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bmx/errors.hpp"
#include "bmx/grade.hpp"
#include "bmx/mapping.hpp"
#include "bmx/nibm.hpp"
#include "bmx/tokens.hpp"
#include "bmx/umlad.hpp"
#include "json_util.hpp"

namespace bmx::cli {

namespace {

using detail::OrderedJson;
using tokens::AnyModel;

constexpr std::string_view kNibm = "nibm";

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("cannot write " + path);
}

void check_notation(const std::string& notation, bool allow_auto) {
    if (notation == kNibm || notation == grade::kNotation || notation == umlad::kNotation) return;
    if (allow_auto && notation == "auto") return;
    throw UsageError("unknown notation " + notation);
}

std::string detect(const std::string& text) {
    const auto doc = detail::parse_document(text);
    if (doc.is_object()) {
        auto tag = doc.find("notation");
        if (tag != doc.end() && tag->is_string()) return tag->get<std::string>();
    }
    throw ParseError("document has no notation tag; pass the notation explicitly");
}

struct Loaded {
    std::string notation;
    AnyModel model;
};

Loaded load(const std::string& path, const std::string& notation_flag) {
    check_notation(notation_flag, true);
    const auto text = read_file(path);
    const bool automatic = notation_flag == "auto";
    const auto notation = automatic ? detect(text) : notation_flag;
    if (notation == kNibm) return {notation, nibm::read(text, automatic)};
    if (notation == grade::kNotation) return {notation, grade::read(text, automatic)};
    if (notation == umlad::kNotation) return {notation, umlad::read(text, automatic)};
    throw ParseError("unknown notation tag \"" + notation + "\"");
}

std::string dump(const AnyModel& model) {
    return std::visit([](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, nibm::Process>)
            return nibm::write(m);
        else if constexpr (std::is_same_v<T, grade::Process>)
            return grade::write(m);
        else
            return umlad::write(m);
    }, model);
}

ValidationReport validate_any(const AnyModel& model) {
    return std::visit([](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, nibm::Process>)
            return nibm::validate(m);
        else if constexpr (std::is_same_v<T, grade::Process>)
            return grade::validate(m);
        else
            return umlad::validate(m);
    }, model);
}

mapping::NotationModel as_notation(const AnyModel& model) {
    if (const auto* g = std::get_if<grade::Process>(&model)) return *g;
    return std::get<umlad::Activity>(model);
}

AnyModel as_any(const mapping::NotationModel& model) {
    if (const auto* g = std::get_if<grade::Process>(&model)) return *g;
    return std::get<umlad::Activity>(model);
}

mapping::MappingDefinition definition_for(const std::string& notation, const std::optional<std::string>& file) {
    if (!file) return mapping::builtin_mapping(notation);
    auto def = mapping::definition_from_json(read_file(*file));
    if (def.source_notation != notation)
        throw UsageError("definition " + *file + " maps " + def.source_notation + ", not " + notation);
    return def;
}

std::string_view kind_name(MappingError::Kind kind) {
    switch (kind) {
        case MappingError::Kind::Precondition: return "precondition";
        case MappingError::Kind::NonTotal: return "non-total";
        case MappingError::Kind::XorViolation: return "xor-violation";
        case MappingError::Kind::Unabsorbable: return "unabsorbable";
        case MappingError::Kind::InvalidResult: return "invalid-result";
        case MappingError::Kind::BadDefinition: return "bad-definition";
    }
    return "unknown";
}

struct Conversion {
    AnyModel model;
    std::optional<mapping::MappingTrace> trace;
};

/// The single projection or derived mapping between two notations.
Conversion convert(const Loaded& source, const std::string& to, bool allow_synthetic,
                   const std::optional<std::string>& from_mapping = {},
                   const std::optional<std::string>& to_mapping = {}) {
    check_notation(to, false);
    const mapping::ProjectionOptions options{allow_synthetic};
    if (source.notation == kNibm) {
        const auto& p = std::get<nibm::Process>(source.model);
        if (to == kNibm) {
            auto report = nibm::validate(p);
            if (!report.empty())
                throw MappingError(MappingError::Kind::Precondition, "independent model is not well-formed", report);
            auto n = nibm::normalize_with_renaming(p);
            mapping::MappingTrace trace{mapping::Direction::ToNibm, {}};
            for (const auto& id : mapping::element_ids(p)) {
                for (const auto* m : {&n.nodes, &n.transitions, &n.performers})
                    if (auto it = m->find(id); it != m->end()) trace.links.push_back({id, "normalize", {it->second}, {}});
            }
            return {std::move(n.process), std::move(trace)};
        }
        auto r = mapping::project_from_nibm(p, definition_for(to, to_mapping), options);
        return {as_any(r.model), std::move(r.trace)};
    }
    const auto model = as_notation(source.model);
    const auto from_def = definition_for(source.notation, from_mapping);
    if (to == kNibm) {
        auto r = mapping::project_to_nibm(model, from_def);
        return {std::move(r.process), std::move(r.trace)};
    }
    auto r = mapping::derive(model, from_def, definition_for(to, to_mapping), options);
    return {as_any(r.model), std::move(r.trace)};
}

/// Collects output lines and the machine-readable report of one command.
class Session {
public:
    Session(std::string command, std::ostream& out) : command_(std::move(command)), out_(out) {}

    void say(const std::string& line) {
        out_ << line << '\n';
        outcome.messages.push_back(line);
    }

    void note(const std::string& line) { outcome.messages.push_back(line); }

    std::ostream& out() { return out_; }

    CommandOutcome finish(const std::optional<std::string>& report_path) {
        if (report_path) {
            OrderedJson doc;
            doc["command"] = command_;
            doc["exitCode"] = outcome.exit_code;
            doc["messages"] = outcome.messages;
            if (!details.is_null()) doc["details"] = details;
            try {
                write_file(*report_path, doc.dump(2) + "\n");
                outcome.report_path = report_path;
            } catch (const IoError& e) {
                say(std::string("error: ") + e.what());
                outcome.exit_code = kUsage;
            }
        }
        return std::move(outcome);
    }

    CommandOutcome outcome;
    OrderedJson details;

private:
    std::string command_;
    std::ostream& out_;
};

CommandOutcome guarded(const char* command, const std::optional<std::string>& report, std::ostream& out,
                       const std::function<int(Session&)>& body) {
    Session s(command, out);
    try {
        s.outcome.exit_code = body(s);
    } catch (const UsageError& e) {
        s.say(std::string("usage error: ") + e.what());
        s.outcome.exit_code = kUsage;
    } catch (const IoError& e) {
        s.say(std::string("error: ") + e.what());
        s.outcome.exit_code = kUsage;
    } catch (const ParseError& e) {
        s.say(std::string("parse error: ") + e.what());
        s.outcome.exit_code = kUsage;
    } catch (const MappingError& e) {
        s.say("mapping error (" + std::string(kind_name(e.kind())) + "): " + e.what());
        for (const auto& v : e.report().violations) s.say("  " + v.rule + " @ " + v.element + ": " + v.message);
        s.details["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
        s.outcome.exit_code = kFailed;
    } catch (const std::invalid_argument& e) {
        s.say(std::string("usage error: ") + e.what());
        s.outcome.exit_code = kUsage;
    }
    return s.finish(report);
}

std::string format_trace(const tokens::Trace& trace) {
    std::string out = "[";
    for (std::size_t i = 0; i < trace.size(); ++i) out += (i ? ", " : "") + trace[i];
    return out + "]";
}

}  // namespace

CommandOutcome cmd_validate(const ValidateOptions& options, std::ostream& out) {
    return guarded("validate", options.report, out, [&](Session& s) {
        const auto loaded = load(options.input, options.notation);
        const auto report = validate_any(loaded.model);
        s.details = OrderedJson::parse(report.to_json());
        s.details["notation"] = loaded.notation;
        if (report.empty()) {
            s.say(options.input + ": valid " + loaded.notation + " model");
            return kOk;
        }
        for (const auto& v : report.violations) s.say(v.rule + " @ " + v.element + ": " + v.message);
        s.say(std::to_string(report.size()) + " violation(s)");
        return kFailed;
    });
}

CommandOutcome cmd_convert(const ConvertOptions& options, std::ostream& out) {
    return guarded("convert", options.report, out, [&](Session& s) {
        const auto loaded = load(options.input, options.from);
        auto result = convert(loaded, options.to, options.allow_synthetic, options.from_mapping, options.to_mapping);
        const auto text = dump(result.model);
        if (options.output) {
            write_file(*options.output, text);
            s.note("wrote " + *options.output);
        } else {
            s.out() << text;
        }
        if (options.trace && result.trace) {
            write_file(*options.trace, result.trace->to_json());
            s.note("wrote " + *options.trace);
        }
        s.details["from"] = loaded.notation;
        s.details["to"] = options.to;
        return kOk;
    });
}

CommandOutcome cmd_trace(const TraceOptions& options, std::ostream& out) {
    return guarded("trace", options.report, out, [&](Session& s) {
        const auto loaded = load(options.input, options.from);
        if (loaded.notation == kNibm && options.to == kNibm)
            throw UsageError("trace needs a notation on at least one side");
        auto result = convert(loaded, options.to, options.allow_synthetic);
        const auto& trace = *result.trace;
        s.out() << trace.to_table() << '\n' << trace.to_json();
        s.note(std::to_string(trace.row_count()) + " row(s)");
        s.details = OrderedJson::parse(trace.to_json());
        return kOk;
    });
}

CommandOutcome cmd_check_equiv(const EquivOptions& options, std::ostream& out) {
    return guarded("check-equiv", options.report, out, [&](Session& s) {
        const auto a = load(options.a, "auto");
        const auto b = load(options.b, "auto");
        auto bounds = tokens::default_bounds();
        if (options.max_states) bounds.max_states = *options.max_states;
        if (options.max_len) bounds.max_trace_len = *options.max_len;
        const auto result = tokens::equivalent(a.model, b.model, bounds);
        switch (result.verdict) {
            case tokens::Verdict::Equal:
                s.say("equal");
                s.details["verdict"] = "equal";
                return kOk;
            case tokens::Verdict::Different:
                s.say("different");
                s.say("counterexample: " + format_trace(*result.counterexample));
                s.details["verdict"] = "different";
                s.details["counterexample"] = *result.counterexample;
                return kFailed;
            case tokens::Verdict::Inconclusive:
                break;
        }
        s.say("inconclusive: enumeration bounds reached (max states " + std::to_string(bounds.max_states) +
              ", max length " + std::to_string(bounds.max_trace_len) + ")");
        s.details["verdict"] = "inconclusive";
        return kInconclusive;
    });
}

CommandOutcome cmd_roundtrip(const RoundtripOptions& options, std::ostream& out) {
    return guarded("roundtrip", options.report, out, [&](Session& s) {
        const auto loaded = load(options.input, options.from);
        check_notation(options.via, false);
        if (loaded.notation == options.via) throw UsageError("roundtrip needs a different --via notation");
        auto there = convert(loaded, options.via, options.allow_synthetic);
        Loaded middle{options.via, std::move(there.model)};
        auto back = convert(middle, loaded.notation, options.allow_synthetic);

        const auto original = nibm::normalize(tokens::to_nibm(loaded.model));
        const auto returned = nibm::normalize(tokens::to_nibm(back.model));
        const auto iso = nibm::isomorphic(original, returned);
        s.details["isomorphic"] = iso.isomorphic;
        if (iso.isomorphic) {
            s.say("isomorphic after " + loaded.notation + " -> " + options.via + " -> " + loaded.notation);
            return kOk;
        }
        s.say("not isomorphic: " + iso.mismatch);
        s.details["mismatch"] = iso.mismatch;
        return kFailed;
    });
}

CommandOutcome cmd_mapping(const MappingOptions& options, std::ostream& out) {
    return guarded("mapping", std::nullopt, out, [&](Session& s) {
        if (!options.definition) {
            check_notation(options.notation, false);
            if (options.notation == kNibm) throw UsageError("nibm is the pivot and has no mapping definition");
            s.out() << mapping::to_json(mapping::builtin_mapping(options.notation));
            return kOk;
        }
        const auto report = mapping::validate_definition(mapping::definition_from_json(read_file(*options.definition)));
        if (report.empty()) {
            s.say(*options.definition + ": valid mapping definition");
            return kOk;
        }
        for (const auto& v : report.violations) s.say(v.rule + " @ " + v.element + ": " + v.message);
        return kFailed;
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Business process model transpiler", "bmx"};
    app.require_subcommand(1);
    const std::vector<std::string> notations{"auto", std::string(grade::kNotation), std::string(umlad::kNotation),
                                             std::string(kNibm)};
    const std::vector<std::string> targets{std::string(grade::kNotation), std::string(umlad::kNotation),
                                           std::string(kNibm)};

    ValidateOptions validate;
    auto* v = app.add_subcommand("validate", "Check a model against its notation's well-formedness rules");
    v->add_option("input", validate.input, "Model file")->required();
    v->add_option("--notation", validate.notation, "Notation, or auto to read the document tag")
        ->check(CLI::IsMember(notations));
    v->add_option("--report", validate.report, "Write a JSON report here");

    ConvertOptions convert_opts;
    auto* c = app.add_subcommand("convert", "Translate a model into another notation");
    c->add_option("-i,--input", convert_opts.input, "Source model")->required();
    c->add_option("-o,--output", convert_opts.output, "Target file (standard output if omitted)");
    c->add_option("--from", convert_opts.from, "Source notation")->check(CLI::IsMember(notations));
    c->add_option("--to", convert_opts.to, "Target notation")->required()->check(CLI::IsMember(targets));
    c->add_option("--trace", convert_opts.trace, "Write the mapping trace here");
    c->add_flag("--allow-synthetic", convert_opts.allow_synthetic, "Wrap unabsorbable control nodes in no-op tasks");
    c->add_option("--from-mapping", convert_opts.from_mapping, "Mapping definition for the source notation");
    c->add_option("--to-mapping", convert_opts.to_mapping, "Mapping definition for the target notation");
    c->add_option("--report", convert_opts.report, "Write a JSON report here");

    TraceOptions trace_opts;
    auto* t = app.add_subcommand("trace", "Print the instance-level mapping trace");
    t->add_option("-i,--input", trace_opts.input, "Source model")->required();
    t->add_option("--from", trace_opts.from, "Source notation")->check(CLI::IsMember(notations));
    t->add_option("--to", trace_opts.to, "Target notation")->check(CLI::IsMember(targets));
    t->add_flag("--allow-synthetic", trace_opts.allow_synthetic, "Wrap unabsorbable control nodes in no-op tasks");
    t->add_option("--report", trace_opts.report, "Write a JSON report here");

    EquivOptions equiv;
    auto* e = app.add_subcommand("check-equiv", "Compare the completed task traces of two models");
    e->add_option("-a", equiv.a, "First model")->required();
    e->add_option("-b", equiv.b, "Second model")->required();
    e->add_option("--max-states", equiv.max_states, "State bound (default 100000 or BMX_MAX_STATES)")
        ->check(CLI::PositiveNumber);
    e->add_option("--max-len", equiv.max_len, "Trace length bound (default 200)")->check(CLI::PositiveNumber);
    e->add_option("--report", equiv.report, "Write a JSON report here");

    RoundtripOptions round;
    auto* r = app.add_subcommand("roundtrip", "Convert there and back and compare the results");
    r->add_option("-i,--input", round.input, "Source model")->required();
    r->add_option("--from", round.from, "Source notation")->check(CLI::IsMember(notations));
    r->add_option("--via", round.via, "Intermediate notation")->check(CLI::IsMember(targets));
    r->add_flag("--allow-synthetic", round.allow_synthetic, "Wrap unabsorbable control nodes in no-op tasks");
    r->add_option("--report", round.report, "Write a JSON report here");

    MappingOptions map_opts;
    auto* m = app.add_subcommand("mapping", "Print a builtin mapping definition or check a definition file");
    m->add_option("--notation", map_opts.notation, "Notation whose builtin definition to print")
        ->check(CLI::IsMember(targets));
    m->add_option("--check", map_opts.definition, "Definition file to validate");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error, out, err);
        return code == 0 ? kOk : kUsage;
    }

    CommandOutcome outcome;
    if (*v) outcome = cmd_validate(validate, out);
    else if (*c) outcome = cmd_convert(convert_opts, out);
    else if (*t) outcome = cmd_trace(trace_opts, out);
    else if (*e) outcome = cmd_check_equiv(equiv, out);
    else if (*r) outcome = cmd_roundtrip(round, out);
    else {
        if (map_opts.notation.empty() && !map_opts.definition) {
            err << "mapping: pass --notation or --check\n";
            return kUsage;
        }
        outcome = cmd_mapping(map_opts, out);
    }
    return outcome.exit_code;
}

}  // namespace bmx::cli
