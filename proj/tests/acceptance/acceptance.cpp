// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything holds).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ocedforge/analyses.hpp"
#include "ocedforge/transform.hpp"
#include "ocedforge/turtle.hpp"
#include "ocedforge/xes.hpp"

#include "fixture_path.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "run.hpp"

using namespace ocedforge;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome pingpong_oracle_equivalence() {
    constexpr int kGraphs = 500;
    constexpr double kMinDuplicateRate = 0.10;
    constexpr double kBudgetSeconds = 30.0;

    testsupport::Rng rng(20130101);
    const testsupport::PingPongParams params{.max_cases = 20, .max_events_per_case = 15, .max_teams = 5};
    std::size_t cases = 0, events = 0, dups = 0, positives = 0, mismatches = 0;
    std::string first_mismatch;
    const auto t0 = Clock::now();
    for (int i = 0; i < kGraphs; ++i) {
        auto pg = testsupport::random_pingpong_graph(rng, params);
        events += pg.events;
        dups += pg.duplicated_timestamps;
        const auto oracle = testsupport::pingpong_oracle(pg.graph);
        const auto rows = analyses::detect_ping_pong(turtle::graph_to_triples(pg.graph));
        std::map<std::string, analyses::PingPongRow> got;
        for (const auto& r : rows) got.emplace(r.case_iri, r);
        if (got.size() != oracle.cases.size()) {
            ++mismatches;
            if (first_mismatch.empty()) first_mismatch = fmt("graph %d: case count differs", i);
        }
        for (const auto& [iri, o] : oracle.cases) {
            ++cases;
            positives += o.has_ping_pong;
            auto it = got.find(iri);
            const bool same = it != got.end() && it->second.has_ping_pong == o.has_ping_pong &&
                              it->second.min_time.utc_millis() == o.min_millis &&
                              it->second.max_time.utc_millis() == o.max_millis;
            if (!same) {
                ++mismatches;
                if (first_mismatch.empty()) first_mismatch = fmt("graph %d case %s", i, iri.c_str());
            }
        }
    }
    const double elapsed = seconds_since(t0);
    const double dup_rate = events ? static_cast<double>(dups) / static_cast<double>(events) : 0.0;
    Outcome out;
    out.ok = mismatches == 0 && dup_rate >= kMinDuplicateRate && elapsed < kBudgetSeconds;
    out.detail = fmt("%d graphs, %zu cases (%zu ping-pong), %zu events, duplicate-timestamp rate %.3f, "
                     "%zu mismatches, %.2f s (budget %.0f s)",
                     kGraphs, cases, positives, events, dup_rate, mismatches, elapsed, kBudgetSeconds);
    if (!first_mismatch.empty()) out.detail += "; first: " + first_mismatch;
    return out;
}

Outcome paper_pattern_fixture() {
    using testsupport::Handled;
    auto verdict = [](const std::vector<Handled>& events) {
        const auto rows = analyses::detect_ping_pong(turtle::graph_to_triples(testsupport::planted_graph(events)));
        return rows.size() == 1 && rows[0].has_ping_pong;
    };
    const std::vector<Handled> planted = {{"case_1", "teamA", "2013-04-01T09:00:00.000Z"},
                                          {"case_1", "teamB", "2013-04-01T10:00:00.000Z"},
                                          {"case_1", "teamA", "2013-04-01T11:00:00.000Z"}};
    const std::vector<Handled> truncated(planted.begin(), planted.end() - 1);
    std::vector<Handled> collapsed = planted;
    for (auto& h : collapsed) h.time = "2013-04-01T09:00:00.000Z";

    const bool a = verdict(planted), b = verdict(truncated), c = verdict(collapsed);
    return {a && !b && !c, fmt("A,B,A strictly increasing -> %s (want true); third event removed -> %s (want false); "
                               "one instant -> %s (want false)",
                               a ? "true" : "false", b ? "true" : "false", c ? "true" : "false")};
}

Outcome turtle_round_trip() {
    constexpr int kGraphs = 200;
    testsupport::Rng rng(424242);
    int failures = 0;
    std::size_t triples = 0;
    for (int i = 0; i < kGraphs; ++i) {
        const auto g = testsupport::random_graph(rng);
        const auto store = turtle::graph_to_triples(g);
        triples += store.size();
        const auto back = turtle::parse_turtle(turtle::write_turtle(store));
        if (back.sorted_triples() != store.sorted_triples()) ++failures;
    }
    return {failures == 0, fmt("%d random graphs, %zu triples, %d unequal", kGraphs, triples, failures)};
}

Outcome bgp_join_correctness() {
    constexpr int kPairs = 1000;
    constexpr double kBudgetSeconds = 60.0;
    testsupport::Rng rng(777);
    int failures = 0;
    std::size_t solutions = 0;
    const auto t0 = Clock::now();
    for (int i = 0; i < kPairs; ++i) {
        query::TripleStore store;
        for (const auto& t : testsupport::random_triples(rng, 200)) store.insert(t);
        store.freeze();
        const auto bgp = testsupport::random_bgp(rng, 4);
        auto got = query::match_bgp(store, bgp);
        std::sort(got.begin(), got.end());
        const auto want = testsupport::nested_loop_bgp(store.sorted_triples(), bgp);
        solutions += want.size();
        if (got != want) ++failures;
    }
    const double elapsed = seconds_since(t0);
    return {failures == 0 && elapsed < kBudgetSeconds,
            fmt("%d (store, BGP) pairs, %zu oracle solutions, %d unequal, %.2f s (budget %.0f s)", kPairs, solutions,
                failures, elapsed, kBudgetSeconds)};
}

Outcome transform_conservation() {
    std::vector<std::pair<std::string, xes::Log>> logs;
    for (const char* name : {"bpic_small.xes", "pingpong.xes"}) {
        logs.emplace_back(name, xes::parse(testsupport::read_fixture(name)));
    }
    testsupport::Rng rng(99);
    for (int i = 0; i < 200; ++i) logs.emplace_back("random#" + std::to_string(i), testsupport::random_bpic_log(rng));

    const auto config = default_bpic2013_config();
    int failures = 0;
    std::string first;
    for (const auto& [name, log] : logs) {
        const auto oracle = testsupport::transform_oracle(log);
        const auto [graph, report] = transform_log(log, config);
        const auto stats = graph_stats(graph);
        auto count = [&](const std::string& type) {
            auto it = stats.object_type_histogram.find(type);
            return it == stats.object_type_histogram.end() ? std::size_t{0} : it->second;
        };
        const bool ok = report.events_emitted + report.events_skipped.size() == log.event_count() &&
                        report.events_emitted == oracle.events_with_valid_timestamp &&
                        count(config.object_rules[0].object_type) == oracle.distinct_groups &&
                        count(config.case_object_type) == oracle.distinct_cases;
        if (!ok) {
            ++failures;
            if (first.empty()) first = name;
        }
    }
    Outcome out{failures == 0, fmt("2 fixtures + 200 random logs, %d with a count mismatch", failures)};
    if (!first.empty()) out.detail += "; first: " + first;
    return out;
}

Outcome end_to_end_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = testsupport::scratch_dir("acceptance");
    const std::string xes = testsupport::fixture_path("bpic_small.xes");
    std::string first;
    bool ok = true;
    std::string detail;
    for (int run = 0; run < 2 && ok; ++run) {
        const fs::path ttl = dir / ("run" + std::to_string(run) + ".ttl");
        const fs::path csv = dir / ("run" + std::to_string(run) + ".csv");
        const auto c = testsupport::run_cli("convert '" + xes + "' --output '" + ttl.string() + "'");
        const auto a = testsupport::run_cli("analyze '" + ttl.string() +
                                            "' --analysis ping-pong --format csv --output '" + csv.string() + "'");
        if (c.exit_code != 0 || a.exit_code != 0) {
            ok = false;
            detail = fmt("run %d exit codes %d/%d", run, c.exit_code, a.exit_code);
            break;
        }
        const std::string bytes = testsupport::slurp(ttl) + '\x1f' + testsupport::slurp(csv);
        if (run == 0) {
            first = bytes;
        } else {
            ok = bytes == first;
            detail = fmt("2 runs of convert + analyze ping-pong csv on bpic_small.xes, %zu bytes each, %s", first.size(),
                         ok ? "identical" : "DIFFERENT");
        }
    }
    fs::remove_all(dir);
    return {ok, detail};
}

Outcome optional_robustness() {
    const std::string kEx = "http://example.org/oced/";
    const auto listing =
        analyses::enumerate_event_objects(turtle::parse_turtle(testsupport::read_fixture("optional_fields.ttl")));
    std::map<std::string, analyses::EventObjectRow> by_event;
    for (const auto& r : listing.rows) by_event[r.event] = r;
    auto row = [&](const std::string& e) -> const analyses::EventObjectRow* {
        auto it = by_event.find(kEx + e);
        return it == by_event.end() ? nullptr : &it->second;
    };
    const auto* full = row("e_full");
    const auto* no_cls = row("e_no_classifier");
    const auto* no_type = row("e_no_type");
    const auto* no_time = row("e_no_time");
    const auto* no_otype = row("e_no_object_type");
    const bool ok = listing.rows.size() == 5 && full && no_cls && no_type && no_time && no_otype &&
                    full->classifier && full->event_type && full->time && full->object_type &&
                    !no_cls->classifier && no_cls->event_type && no_cls->time && no_cls->object_type &&
                    no_type->classifier && !no_type->event_type && no_type->time && no_type->object_type &&
                    no_time->classifier && no_time->event_type && !no_time->time && no_time->object_type &&
                    no_otype->classifier && no_otype->event_type && no_otype->time && !no_otype->object_type;
    return {ok, fmt("%zu rows kept (want 5: complete, no classifier, no event type, no time, no object type); "
                    "%zu malformed nodes reported",
                    listing.rows.size(), listing.warnings.size())};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"ping-pong oracle equivalence", pingpong_oracle_equivalence},
        {"paper-pattern fixture", paper_pattern_fixture},
        {"turtle round trip", turtle_round_trip},
        {"bgp join correctness", bgp_join_correctness},
        {"transform conservation", transform_conservation},
        {"end-to-end determinism", end_to_end_determinism},
        {"optional robustness", optional_robustness},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.ok;
        std::printf("%s  %-30s %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
