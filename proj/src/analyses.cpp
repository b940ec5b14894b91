#include "ocedforge/analyses.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "ocedforge/log.hpp"

namespace ocedforge::analyses {

using query::BindingSet;
using query::iri;
using query::TriplePattern;
using query::TripleStore;
using query::var;
using rdf::Term;
namespace vocab = rdf::vocab;

namespace {

std::optional<std::string> bound_value(const BindingSet& b, const std::string& name) {
    auto it = b.find(name);
    if (it == b.end()) return std::nullopt;
    return it->second.value();
}

std::optional<Timestamp> as_datetime(const Term& term) {
    if (term.kind() != Term::Kind::TypedLiteral || term.datatype() != vocab::kXsdDateTime) return std::nullopt;
    return Timestamp::parse(term.value());
}

void require_frozen(const TripleStore& store) {
    if (!store.frozen()) throw std::logic_error("analyses need a frozen triple store");
}

} // namespace

EventObjectListing enumerate_event_objects(const TripleStore& store) {
    require_frozen(store);
    EventObjectListing listing;

    const std::vector<TriplePattern> nodes = {{var("eo"), iri(vocab::kRdfType), iri(vocab::kEventObject)}};
    for (const auto& b : query::match_bgp(store, nodes)) {
        const Term& node = b.at("eo");
        const TriplePattern has_event{node, iri(vocab::kEvent), var("x")};
        const TriplePattern has_object{node, iri(vocab::kObject), var("x")};
        const bool event_ok = !query::match_pattern(store, has_event).empty();
        const bool object_ok = !query::match_pattern(store, has_object).empty();
        if (!event_ok || !object_ok) {
            listing.warnings.push_back("EventObject node " + node.to_string() + " lacks " +
                                       (event_ok ? "ext:object" : object_ok ? "ext:event" : "ext:event and ext:object"));
        }
    }
    for (const auto& w : listing.warnings) logger()->warn("{}", w);

    const std::vector<TriplePattern> required = {
        {var("eo"), iri(vocab::kRdfType), iri(vocab::kEventObject)},
        {var("eo"), iri(vocab::kEvent), var("event")},
        {var("eo"), iri(vocab::kObject), var("object")},
    };
    const std::vector<std::vector<TriplePattern>> optional = {
        {{var("eo"), iri(vocab::kClassifier), var("classifier")}},
        {{var("event"), iri(vocab::kEventType), var("event_type")}},
        {{var("event"), iri(vocab::kObservedAt), var("time")}},
        {{var("object"), iri(vocab::kObjectType), var("object_type")}},
    };
    for (const auto& b : query::match_optional(store, required, optional)) {
        EventObjectRow row;
        row.event = b.at("event").value();
        row.object = b.at("object").value();
        row.classifier = bound_value(b, "classifier");
        row.event_type = bound_value(b, "event_type");
        if (auto it = b.find("time"); it != b.end()) row.time = as_datetime(it->second);
        row.object_type = bound_value(b, "object_type");
        listing.rows.push_back(std::move(row));
    }
    std::sort(listing.rows.begin(), listing.rows.end(), [](const EventObjectRow& a, const EventObjectRow& b) {
        return std::tie(a.event, a.object, a.classifier, a.event_type, a.time, a.object_type) <
               std::tie(b.event, b.object, b.classifier, b.event_type, b.time, b.object_type);
    });
    return listing;
}

HandlingTable collect_handlings(const TripleStore& store) {
    require_frozen(store);
    const std::vector<TriplePattern> pattern = {
        {var("event"), iri(vocab::kEventCase), var("case")},
        {var("event"), iri(vocab::kObservedAt), var("time")},
        {var("event"), iri(vocab::kHandledBySupportTeam), var("team")},
    };
    struct Raw {
        Term case_term;
        Term team;
        Timestamp time;
    };
    std::vector<Raw> raw;
    HandlingTable table;
    std::set<Term> teams;
    for (auto& b : query::match_bgp(store, pattern)) {
        auto time = as_datetime(b.at("time"));
        if (!time) {
            ++table.dropped;
            continue;
        }
        teams.insert(b.at("team"));
        raw.push_back({b.at("case"), b.at("team"), *time});
    }
    if (table.dropped) {
        logger()->warn("{} handling(s) skipped: observed_at is not a valid xsd:dateTime", table.dropped);
    }

    std::map<Term, std::uint32_t> team_index;
    for (const auto& t : teams) {
        team_index.emplace(t, static_cast<std::uint32_t>(table.teams.size()));
        table.teams.push_back(t.value());
    }
    std::map<Term, std::vector<Handling>> by_case;
    for (const auto& r : raw) by_case[r.case_term].push_back({team_index.at(r.team), r.time});
    for (auto& [case_term, handlings] : by_case) {
        std::sort(handlings.begin(), handlings.end(), [](const Handling& a, const Handling& b) {
            return std::tie(a.time, a.team) < std::tie(b.time, b.team);
        });
        table.cases.push_back({case_term.value(), std::move(handlings)});
    }
    return table;
}

std::vector<CaseTimeline> build_case_timelines(const TripleStore& store) {
    const HandlingTable table = collect_handlings(store);
    std::vector<CaseTimeline> out;
    out.reserve(table.cases.size());
    for (const auto& c : table.cases) {
        CaseTimeline timeline{c.case_iri, {}};
        // handlings are sorted by (time, team index) and team indexes follow IRI order
        for (const auto& h : c.handlings) {
            if (timeline.entries.empty() || timeline.entries.back().time != h.time) {
                timeline.entries.push_back({h.time, {}});
            }
            auto& teams = timeline.entries.back().teams;
            const std::string& name = table.teams[h.team];
            if (teams.empty() || teams.back() != name) teams.push_back(name);
        }
        out.push_back(std::move(timeline));
    }
    return out;
}

namespace {

/// Handlings of one case regrouped per team with sorted times.
struct TeamTimes {
    std::vector<std::uint32_t> teams;
    std::vector<std::vector<Timestamp>> times;

    explicit TeamTimes(const std::vector<Handling>& handlings) {
        for (const auto& h : handlings) {
            auto it = std::lower_bound(teams.begin(), teams.end(), h.team);
            const auto slot = static_cast<std::size_t>(it - teams.begin());
            if (it == teams.end() || *it != h.team) {
                teams.insert(it, h.team);
                times.insert(times.begin() + static_cast<std::ptrdiff_t>(slot), std::vector<Timestamp>{});
            }
            times[slot].push_back(h.time);
        }
        for (auto& t : times) std::sort(t.begin(), t.end());
    }
};

std::pair<Timestamp, Timestamp> time_span(const std::vector<Handling>& handlings) {
    auto [lo, hi] = std::minmax_element(handlings.begin(), handlings.end(),
                                        [](const Handling& a, const Handling& b) { return a.time < b.time; });
    return {lo->time, hi->time};
}

void order_rows(std::vector<PingPongRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const PingPongRow& a, const PingPongRow& b) {
        return std::tie(a.has_ping_pong, a.case_iri) < std::tie(b.has_ping_pong, b.case_iri);
    });
}

/// (team, witness count) pairs for one case, teams ascending, zeros omitted.
using CaseWitnesses = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

CaseWitnesses count_witnesses(const std::vector<Handling>& handlings) {
    const TeamTimes grouped(handlings);
    std::vector<std::uint64_t> per_team(grouped.teams.size(), 0);
    for (std::size_t b = 0; b < grouped.teams.size(); ++b) {
        for (const Timestamp& middle : grouped.times[b]) {
            for (std::size_t a = 0; a < grouped.teams.size(); ++a) {
                if (a == b) continue;
                const auto& ts = grouped.times[a];
                const auto before = static_cast<std::uint64_t>(std::lower_bound(ts.begin(), ts.end(), middle) - ts.begin());
                const auto after = static_cast<std::uint64_t>(ts.end() - std::upper_bound(ts.begin(), ts.end(), middle));
                const std::uint64_t w = before * after;
                per_team[a] += w;
                per_team[b] += w;
            }
        }
    }
    CaseWitnesses out;
    for (std::size_t i = 0; i < per_team.size(); ++i) {
        if (per_team[i]) out.emplace_back(grouped.teams[i], per_team[i]);
    }
    return out;
}

std::vector<TeamInvolvement> rank(const HandlingTable& table, const std::vector<CaseWitnesses>& per_case) {
    std::vector<TeamInvolvement> totals(table.teams.size());
    for (std::size_t t = 0; t < totals.size(); ++t) totals[t].team = table.teams[t];
    for (const auto& witnesses : per_case) {
        for (const auto& [team, count] : witnesses) {
            totals[team].cases_involved += 1;
            totals[team].witness_count += count;
        }
    }
    std::vector<TeamInvolvement> out;
    for (auto& t : totals) {
        if (t.witness_count) out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [](const TeamInvolvement& a, const TeamInvolvement& b) {
        if (a.cases_involved != b.cases_involved) return a.cases_involved > b.cases_involved;
        return a.team < b.team;
    });
    return out;
}

} // namespace

bool case_has_ping_pong(const std::vector<Handling>& handlings) {
    const TeamTimes grouped(handlings);
    for (std::size_t b = 0; b < grouped.teams.size(); ++b) {
        for (const Timestamp& middle : grouped.times[b]) {
            for (std::size_t a = 0; a < grouped.teams.size(); ++a) {
                if (a != b && grouped.times[a].front() < middle && middle < grouped.times[a].back()) return true;
            }
        }
    }
    return false;
}

std::vector<PingPongRow> detect_ping_pong(const HandlingTable& table) {
    const auto n = static_cast<std::ptrdiff_t>(table.cases.size());
    std::vector<PingPongRow> rows(table.cases.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& c = table.cases[static_cast<std::size_t>(i)];
        const auto [lo, hi] = time_span(c.handlings);
        rows[static_cast<std::size_t>(i)] = {c.case_iri, case_has_ping_pong(c.handlings), lo, hi};
    }
    order_rows(rows);
    return rows;
}

std::vector<PingPongRow> detect_ping_pong(const TripleStore& store) { return detect_ping_pong(collect_handlings(store)); }

std::vector<TeamInvolvement> team_involvement(const HandlingTable& table) {
    const auto n = static_cast<std::ptrdiff_t>(table.cases.size());
    std::vector<CaseWitnesses> per_case(table.cases.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        per_case[static_cast<std::size_t>(i)] = count_witnesses(table.cases[static_cast<std::size_t>(i)].handlings);
    }
    return rank(table, per_case);
}

std::vector<TeamInvolvement> team_involvement(const TripleStore& store) {
    return team_involvement(collect_handlings(store));
}

namespace reference {

namespace {

/// Sweep over the case in time order; for each middle handling count, per
/// team, the handlings strictly before and strictly after it.
CaseWitnesses sweep_witnesses(const std::vector<Handling>& handlings) {
    std::map<std::uint32_t, std::uint64_t> per_team;
    for (const auto& middle : handlings) {
        std::map<std::uint32_t, std::uint64_t> before, after;
        for (const auto& other : handlings) {
            if (other.time < middle.time) ++before[other.team];
            else if (middle.time < other.time) ++after[other.team];
        }
        for (const auto& [team, n_before] : before) {
            if (team == middle.team) continue;
            auto it = after.find(team);
            if (it == after.end()) continue;
            per_team[team] += n_before * it->second;
            per_team[middle.team] += n_before * it->second;
        }
    }
    return {per_team.begin(), per_team.end()};
}

} // namespace

std::vector<PingPongRow> detect_ping_pong(const HandlingTable& table) {
    std::vector<PingPongRow> rows;
    for (const auto& c : table.cases) {
        PingPongRow row{c.case_iri, !sweep_witnesses(c.handlings).empty(), c.handlings.front().time,
                        c.handlings.front().time};
        for (const auto& h : c.handlings) {
            row.min_time = std::min(row.min_time, h.time);
            row.max_time = std::max(row.max_time, h.time);
        }
        rows.push_back(std::move(row));
    }
    order_rows(rows);
    return rows;
}

std::vector<TeamInvolvement> team_involvement(const HandlingTable& table) {
    std::vector<CaseWitnesses> per_case;
    for (const auto& c : table.cases) per_case.push_back(sweep_witnesses(c.handlings));
    return rank(table, per_case);
}

} // namespace reference

StoreStats store_stats(const TripleStore& store) {
    require_frozen(store);
    StoreStats stats;
    stats.triple_count = store.size();
    auto& g = stats.graph;

    std::set<Term> events;
    for (const auto& b : query::match_pattern(store, {var("e"), iri(vocab::kObservedAt), var("t")})) {
        events.insert(b.at("e"));
    }
    std::map<Term, std::string> event_types;
    for (const auto& b : query::match_pattern(store, {var("e"), iri(vocab::kEventType), var("t")})) {
        events.insert(b.at("e"));
        event_types.emplace(b.at("e"), b.at("t").value());
    }
    g.event_count = events.size();
    for (const auto& [e, type] : event_types) ++g.event_type_histogram[type];

    std::map<Term, std::string> objects;
    for (const auto& b : query::match_pattern(store, {var("o"), iri(vocab::kObjectType), var("t")})) {
        objects.emplace(b.at("o"), b.at("t").value());
    }
    g.object_count = objects.size();
    for (const auto& [o, type] : objects) ++g.object_type_histogram[type];

    g.eo_relation_count =
        query::match_pattern(store, {var("n"), iri(vocab::kRdfType), iri(vocab::kEventObject)}).size();

    static const std::set<std::string> structural = {vocab::kEvent, vocab::kObject, vocab::kClassifier,
                                                     vocab::kEventType, vocab::kObjectType};
    for (const auto& t : store.id_triples()) {
        const Term& s = store.term(t.s);
        const Term& p = store.term(t.p);
        const Term& o = store.term(t.o);
        if (!objects.count(s) || !objects.count(o)) continue;
        if (p.value().rfind(vocab::kExt, 0) != 0 || structural.count(p.value())) continue;
        ++g.oo_relation_count;
    }

    std::set<Term> cases;
    for (const auto& b : query::match_pattern(store, {var("e"), iri(vocab::kEventCase), var("c")})) {
        cases.insert(b.at("c"));
    }
    stats.case_count = cases.size();
    return stats;
}

} // namespace ocedforge::analyses
