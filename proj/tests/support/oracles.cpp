#include "oracles.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <utility>
#include <variant>

#include "generators.hpp"

namespace testsupport {

using namespace ocedforge;
using query::BindingSet;
using query::TriplePattern;
using rdf::Term;
using rdf::Triple;

PingPongOracle pingpong_oracle(const OcedGraph& graph) {
    struct Obs {
        std::string team;
        std::int64_t t;
    };
    std::map<std::string, std::vector<Obs>> by_case;
    for (const auto& [eid, event] : graph.events()) {
        std::vector<std::string> cases;
        std::vector<std::string> teams;
        for (const auto& rel : graph.event_object_relations()) {
            if (!(rel.event == eid) || !rel.qualifier) continue;
            if (*rel.qualifier == "event_case") cases.push_back(kExNs + rel.object.str());
            if (*rel.qualifier == "handled_by_support_team") teams.push_back(kExNs + rel.object.str());
        }
        for (const auto& c : cases) {
            for (const auto& team : teams) by_case[c].push_back({team, event.observed_at.utc_millis()});
        }
    }

    PingPongOracle out;
    std::map<std::string, std::set<std::string>> team_cases;
    for (const auto& [case_iri, obs] : by_case) {
        OracleCase oc;
        oc.min_millis = obs.front().t;
        oc.max_millis = obs.front().t;
        for (const auto& o : obs) {
            oc.min_millis = std::min(oc.min_millis, o.t);
            oc.max_millis = std::max(oc.max_millis, o.t);
        }
        for (std::size_t i = 0; i < obs.size(); ++i) {
            for (std::size_t j = 0; j < obs.size(); ++j) {
                for (std::size_t k = 0; k < obs.size(); ++k) {
                    const Obs &a = obs[i], &b = obs[j], &c = obs[k];
                    if (a.team != c.team || a.team == b.team) continue;
                    if (!(a.t < b.t && b.t < c.t)) continue;
                    oc.has_ping_pong = true;
                    ++out.teams[a.team].witness_count;
                    ++out.teams[b.team].witness_count;
                    team_cases[a.team].insert(case_iri);
                    team_cases[b.team].insert(case_iri);
                }
            }
        }
        out.cases[case_iri] = oc;
    }
    for (auto& [team, info] : out.teams) info.cases_involved = team_cases[team].size();
    return out;
}

namespace {

bool unify(const query::PatternTerm& pt, const Term& value, BindingSet& b) {
    if (const auto* t = std::get_if<Term>(&pt)) return *t == value;
    const auto& name = std::get<query::Variable>(pt).name;
    auto it = b.find(name);
    if (it == b.end()) {
        b.emplace(name, value);
        return true;
    }
    return it->second == value;
}

void join(const std::vector<Triple>& triples, const std::vector<TriplePattern>& bgp, std::size_t i, BindingSet b,
          std::vector<BindingSet>& out) {
    if (i == bgp.size()) {
        out.push_back(std::move(b));
        return;
    }
    for (const auto& t : triples) {
        BindingSet next = b;
        if (unify(bgp[i].subject, t.subject, next) && unify(bgp[i].predicate, t.predicate, next) &&
            unify(bgp[i].object, t.object, next)) {
            join(triples, bgp, i + 1, std::move(next), out);
        }
    }
}

bool looks_like_datetime(const std::string& s) {
    int y, mo, d, h, mi, sec;
    char tail[64] = {};
    if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%63s", &y, &mo, &d, &h, &mi, &sec, tail) < 6) return false;
    return mo >= 1 && mo <= 12 && d >= 1 && d <= 31 && h < 24 && mi < 60 && sec < 60;
}

} // namespace

std::vector<BindingSet> nested_loop_bgp(const std::vector<Triple>& triples, const std::vector<TriplePattern>& bgp) {
    std::vector<BindingSet> out;
    join(triples, bgp, 0, {}, out);
    std::sort(out.begin(), out.end());
    return out;
}

TransformOracle transform_oracle(const xes::Log& log) {
    TransformOracle out;
    std::set<std::string> cases;
    std::set<std::string> groups;
    std::set<std::pair<std::string, std::string>> pairs;
    for (std::size_t t = 0; t < log.traces.size(); ++t) {
        const auto& trace = log.traces[t];
        std::string case_id = "trace_" + std::to_string(t);
        for (const auto& a : trace.attributes) {
            if (a.key == "concept:name") case_id = std::get<std::string>(a.value);
        }
        cases.insert(case_id);
        for (const auto& ev : trace.events) {
            bool valid = false;
            const std::string* group = nullptr;
            for (const auto& a : ev.attributes) {
                if (a.key == "time:timestamp") {
                    valid = std::holds_alternative<Timestamp>(a.value) ||
                            (std::holds_alternative<std::string>(a.value) &&
                             looks_like_datetime(std::get<std::string>(a.value)));
                }
                if (a.key == "org:group") group = &std::get<std::string>(a.value);
            }
            if (!valid) continue;
            ++out.events_with_valid_timestamp;
            if (group) {
                groups.insert(*group);
                pairs.emplace(case_id, *group);
            }
        }
    }
    out.distinct_cases = cases.size();
    out.distinct_groups = groups.size();
    out.case_group_pairs = pairs.size();
    return out;
}

} // namespace testsupport
