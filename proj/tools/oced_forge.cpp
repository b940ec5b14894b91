// oced-forge: XES -> object-centric Turtle, and analyses over the Turtle.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "ocedforge/analyses.hpp"
#include "ocedforge/error.hpp"
#include "ocedforge/input.hpp"
#include "ocedforge/log.hpp"
#include "ocedforge/report.hpp"
#include "ocedforge/transform.hpp"
#include "ocedforge/turtle.hpp"
#include "ocedforge/xes.hpp"

namespace {

using namespace ocedforge;

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitParse = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

constexpr const char* kExitHelp =
    "Exit status:\n"
    "  0   success (skipped events are reported as warnings)\n"
    "  2   input unreadable or output not writable\n"
    "  3   XML or Turtle syntax error, unsupported construct\n"
    "  64  usage error: bad flag, unknown analysis, invalid mapping config\n"
    "  65  unrecognized input format, or graph not expressible as Turtle\n"
    "Set OCED_FORGE_LOG=trace|debug|info|warn|error|off for diagnostics.\n";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string output;
    std::string config;
    std::string format;
    std::string analysis;
    bool quiet = false;
};

void emit(const Options& opt, const std::string& data) {
    if (opt.output.empty() || opt.output == "-") {
        std::fwrite(data.data(), 1, data.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(opt.output, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file '" + opt.output + "'");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out.flush()) throw IoError("failed writing '" + opt.output + "'");
}

query::TripleStore load_turtle(const std::string& path) {
    const std::string text = read_input(path);
    return turtle::parse_turtle(text);
}

int run_convert(const Options& opt) {
    const std::string fmt = opt.format.empty() ? "ttl" : opt.format;
    if (fmt != "ttl") throw UsageError("convert writes ttl only, not '" + fmt + "'");
    if (!opt.analysis.empty()) throw UsageError("--analysis is only valid with analyze");

    const MappingConfig config =
        opt.config.empty() ? default_bpic2013_config() : load_mapping_config_file(opt.config);
    const std::string xml = read_input(opt.input);
    const xes::Log log = xes::parse(xml);
    for (const auto& w : log.warnings) logger()->warn("{}", w);

    TransformResult result = transform_log(log, config);
    query::TripleStore store;
    try {
        store = turtle::graph_to_triples(result.graph);
    } catch (const SerializationError& e) {
        throw DataError(e.what());
    }
    emit(opt, turtle::write_turtle(store));

    const auto& rep = result.report;
    logger()->info("traces: {}, events read: {}, events emitted: {}, objects emitted: {}, triples: {}",
                   log.traces.size(), log.event_count(), rep.events_emitted, rep.objects_emitted, store.size());
    for (const auto& s : rep.events_skipped) {
        logger()->warn("skipped trace {} event {}: {}", s.trace_index, s.event_index, s.reason);
    }
    for (const auto& w : rep.warnings) logger()->warn("{}", w);
    if (!rep.events_skipped.empty()) logger()->warn("{} event(s) skipped", rep.events_skipped.size());
    return kExitOk;
}

int run_analyze(const Options& opt) {
    if (opt.analysis.empty()) throw UsageError("analyze requires --analysis");
    const std::string fmt = opt.format.empty() ? "csv" : opt.format;
    if (fmt != "csv" && fmt != "jsonl") throw UsageError("analyze writes csv or jsonl, not '" + fmt + "'");
    if (!opt.config.empty()) throw UsageError("--config is only valid with convert");
    if (opt.analysis != "ping-pong" && opt.analysis != "event-objects" && opt.analysis != "teams") {
        throw UsageError("unknown analysis '" + opt.analysis + "'");
    }

    const query::TripleStore store = load_turtle(opt.input);
    report::Table table;
    if (opt.analysis == "ping-pong") {
        table = report::ping_pong_table(analyses::detect_ping_pong(store));
    } else if (opt.analysis == "event-objects") {
        table = report::event_object_table(analyses::enumerate_event_objects(store).rows);
    } else {
        table = report::team_table(analyses::team_involvement(store));
    }
    emit(opt, fmt == "csv" ? report::to_csv(table) : report::to_jsonl(table));
    logger()->info("{}: {} row(s)", opt.analysis, table.rows.size());
    return kExitOk;
}

bool valid_utf8(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (c == 0) return false;
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        if (len == 0 || i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
        }
        i += len;
    }
    return true;
}

std::string_view trim_leading(std::string_view s) {
    if (s.substr(0, 3) == "\xEF\xBB\xBF") s.remove_prefix(3);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) {
        s.remove_prefix(1);
    }
    return s;
}

using Rows = std::vector<std::pair<std::string, std::string>>;

void row(Rows& rows, const std::string& label, std::size_t value) { rows.emplace_back(label, std::to_string(value)); }

std::string align(const Rows& rows) {
    std::size_t width = 0;
    for (const auto& [label, value] : rows) width = std::max(width, label.size() + value.size() + 2);
    std::string out;
    for (const auto& [label, value] : rows) {
        out += label + std::string(width - label.size() - value.size(), ' ') + value + "\n";
    }
    return out;
}

int run_stats(const Options& opt) {
    if (!opt.analysis.empty() || !opt.config.empty() || !opt.format.empty()) {
        throw UsageError("stats takes no --analysis, --config or --format");
    }
    const std::string data = read_input(opt.input);
    const std::string_view head = trim_leading(data);
    Rows out;
    if (head.starts_with("<?xml") || head.starts_with("<log") || head.starts_with("<!--")) {
        const xes::Log log = xes::parse(data);
        out.emplace_back("format", "xes");
        row(out, "traces", log.traces.size());
        row(out, "events", log.event_count());
        row(out, "classifiers", log.classifiers.size());
        row(out, "extensions", log.extensions.size());
    } else if (!head.empty() && valid_utf8(data)) {
        const auto stats = analyses::store_stats(turtle::parse_turtle(data));
        out.emplace_back("format", "ttl");
        row(out, "triples", stats.triple_count);
        row(out, "events", stats.graph.event_count);
        row(out, "objects", stats.graph.object_count);
        row(out, "event-object relations", stats.graph.eo_relation_count);
        row(out, "object-object relations", stats.graph.oo_relation_count);
        row(out, "cases", stats.case_count);
        row(out, "event types", stats.graph.event_type_histogram.size());
        for (const auto& [type, n] : stats.graph.event_type_histogram) row(out, "  " + type, n);
        row(out, "object types", stats.graph.object_type_histogram.size());
        for (const auto& [type, n] : stats.graph.object_type_histogram) row(out, "  " + type, n);
    } else {
        throw DataError("unrecognized input format (expected XES or Turtle)");
    }
    emit(opt, align(out));
    return kExitOk;
}

int run_export_dot(const Options& opt) {
    const std::string fmt = opt.format.empty() ? "dot" : opt.format;
    if (fmt != "dot") throw UsageError("export-dot writes dot only, not '" + fmt + "'");
    if (!opt.analysis.empty() || !opt.config.empty()) throw UsageError("export-dot takes no --analysis or --config");
    emit(opt, report::to_dot(load_turtle(opt.input)));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Object-centric event data from XES logs, as Turtle, with ping-pong analyses"};
    app.footer(kExitHelp);
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("input", opt.input, "Input file, or - for standard input")->required();
        sub->add_option("-o,--output", opt.output, "Output file (default: standard output)");
        sub->add_option("--format", opt.format, "Output format: ttl, csv, jsonl or dot")
            ->check(CLI::IsMember({"ttl", "csv", "jsonl", "dot"}));
        sub->add_option("--config", opt.config, "YAML mapping config (convert)");
        sub->add_option("--analysis", opt.analysis, "ping-pong, event-objects or teams (analyze)");
        sub->add_flag("-q,--quiet", opt.quiet, "Only report errors");
    };
    auto* convert = app.add_subcommand("convert", "Convert an XES log (optionally gzipped) to Turtle");
    auto* analyze = app.add_subcommand("analyze", "Run an analysis over a Turtle file");
    auto* stats = app.add_subcommand("stats", "Print counts for an XES or Turtle file");
    auto* dot = app.add_subcommand("export-dot", "Render a Turtle file as a Graphviz digraph");
    for (auto* sub : {convert, analyze, stats, dot}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    auto log = logger();
    if (opt.quiet) log->set_level(spdlog::level::err);

    try {
        if (*convert) return run_convert(opt);
        if (*analyze) return run_analyze(opt);
        if (*stats) return run_stats(opt);
        return run_export_dot(opt);
    } catch (const UsageError& e) {
        log->error("{}", e.what());
        return kExitUsage;
    } catch (const ConfigError& e) {
        log->error("invalid mapping config: {}", e.what());
        return kExitUsage;
    } catch (const IoError& e) {
        log->error("{}", e.what());
        return kExitIo;
    } catch (const ParseError& e) {
        log->error("{}", e.what());
        return kExitParse;
    } catch (const StructuralError& e) {
        log->error("{}", e.what());
        return kExitParse;
    } catch (const DataError& e) {
        log->error("{}", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        log->error("{}", e.what());
        return 1;
    }
}
