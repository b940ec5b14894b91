#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ocedforge/oced.hpp"
#include "ocedforge/timestamp.hpp"
#include "ocedforge/triple_store.hpp"

namespace ocedforge::analyses {

struct EventObjectRow {
    std::string event;
    std::string object;
    std::optional<std::string> classifier;
    std::optional<std::string> event_type;
    std::optional<Timestamp> time;
    std::optional<std::string> object_type;

    friend bool operator==(const EventObjectRow&, const EventObjectRow&) = default;
};

struct EventObjectListing {
    std::vector<EventObjectRow> rows;
    /// One entry per ext:EventObject node lacking ext:event or ext:object.
    std::vector<std::string> warnings;
};

/// Every ext:EventObject node with its event and object, and, where present,
/// classifier, event type, event time and object type. Missing optional
/// properties leave the field empty; the row is always kept.
EventObjectListing enumerate_event_objects(const query::TripleStore& store);

struct TimelineEntry {
    Timestamp time;
    std::vector<std::string> teams;

    friend bool operator==(const TimelineEntry&, const TimelineEntry&) = default;
};

struct CaseTimeline {
    std::string case_iri;
    std::vector<TimelineEntry> entries;

    friend bool operator==(const CaseTimeline&, const CaseTimeline&) = default;
};

/// Per case, the instants at which team-handled events occur with the sorted
/// set of teams at each instant. Cases are ordered by IRI.
std::vector<CaseTimeline> build_case_timelines(const query::TripleStore& store);

struct PingPongRow {
    std::string case_iri;
    bool has_ping_pong = false;
    Timestamp min_time;
    Timestamp max_time;

    friend bool operator==(const PingPongRow&, const PingPongRow&) = default;
};

struct TeamInvolvement {
    std::string team;
    /// Distinct cases with at least one witness the team takes part in.
    std::size_t cases_involved = 0;
    /// Witnessing (e1, e2, e3) triples the team takes part in.
    std::uint64_t witness_count = 0;

    friend bool operator==(const TeamInvolvement&, const TeamInvolvement&) = default;
};

/// One (team, time) observation of a case: a solution of
/// `?e ext:event_case ?case ; ocedo:observed_at ?time ;
///  ext:handled_by_support_team ?team` whose time is a valid xsd:dateTime.
struct Handling {
    std::uint32_t team;
    Timestamp time;
};

struct CaseHandlings {
    std::string case_iri;
    std::vector<Handling> handlings;
};

struct HandlingTable {
    /// Cases ordered by IRI, each with at least one handling.
    std::vector<CaseHandlings> cases;
    /// Team IRIs; Handling::team indexes this, sorted so index order is IRI order.
    std::vector<std::string> teams;
    /// Solutions dropped because ?time was not a valid xsd:dateTime.
    std::size_t dropped = 0;
};

/// Evaluates the handling pattern over the store and groups by case.
HandlingTable collect_handlings(const query::TripleStore& store);

/// True iff some handlings (A, t1), (B, t2), (A, t3) of the case satisfy
/// A != B and t1 < t2 < t3. Handlings need not be adjacent.
bool case_has_ping_pong(const std::vector<Handling>& handlings);

/// Ping-pong verdict and time span per case, ordered by verdict (false
/// first) and then case IRI. Cases are evaluated in parallel.
std::vector<PingPongRow> detect_ping_pong(const query::TripleStore& store);
std::vector<PingPongRow> detect_ping_pong(const HandlingTable& table);

/// Team ranking by cases_involved (descending), ties by team IRI. Teams in
/// no witness are omitted. Cases are evaluated in parallel.
std::vector<TeamInvolvement> team_involvement(const query::TripleStore& store);
std::vector<TeamInvolvement> team_involvement(const HandlingTable& table);

/// Single-threaded implementations using a different per-case algorithm,
/// kept as a cross-check for the parallel kernels.
namespace reference {

std::vector<PingPongRow> detect_ping_pong(const HandlingTable& table);
std::vector<TeamInvolvement> team_involvement(const HandlingTable& table);

} // namespace reference

/// Counts recovered from a Turtle store produced by graph_to_triples (or
/// written by hand with the same vocabulary).
struct StoreStats {
    GraphStats graph;
    std::size_t case_count = 0;
    std::size_t triple_count = 0;
};

StoreStats store_stats(const query::TripleStore& store);

} // namespace ocedforge::analyses
