#include "ocedforge/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace ocedforge::report {

using nlohmann::json;
using query::TripleStore;
using rdf::Term;
namespace vocab = rdf::vocab;

namespace {

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json opt_time(const std::optional<Timestamp>& t) { return t ? json(t->to_utc_iso()) : json(nullptr); }

std::string cell_text(const json& cell) {
    if (cell.is_null()) return {};
    if (cell.is_string()) return cell.get<std::string>();
    return cell.dump();
}

void csv_field(std::ostream& out, const std::string& text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) {
        out << text;
        return;
    }
    out << '"';
    for (char c : text) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

} // namespace

Table ping_pong_table(const std::vector<analyses::PingPongRow>& rows) {
    Table t{{"case", "has_ping_pong", "min_time", "max_time"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.case_iri, r.has_ping_pong, r.min_time.to_utc_iso(), r.max_time.to_utc_iso()});
    }
    return t;
}

Table event_object_table(const std::vector<analyses::EventObjectRow>& rows) {
    Table t{{"event", "object", "classifier", "event_type", "time", "object_type"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back(
            {r.event, r.object, opt(r.classifier), opt(r.event_type), opt_time(r.time), opt(r.object_type)});
    }
    return t;
}

Table team_table(const std::vector<analyses::TeamInvolvement>& rows) {
    Table t{{"team", "cases_involved", "witness_count"}, {}};
    for (const auto& r : rows) t.rows.push_back({r.team, r.cases_involved, r.witness_count});
    return t;
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        csv_field(out, table.columns[i]);
    }
    out << "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            csv_field(out, cell_text(row[i]));
        }
        out << "\r\n";
    }
    return std::move(out).str();
}

std::string to_jsonl(const Table& table) {
    std::string out;
    for (const auto& row : table.rows) {
        nlohmann::ordered_json record = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < table.columns.size(); ++i) record[table.columns[i]] = row[i];
        out += record.dump();
        out += '\n';
    }
    return out;
}

namespace {

std::string dot_quote(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

std::string local_name(const std::string& iri) {
    for (std::string_view ns : {vocab::kEx, vocab::kExt, vocab::kCore}) {
        if (iri.size() > ns.size() && iri.compare(0, ns.size(), ns) == 0) return iri.substr(ns.size());
    }
    return iri;
}

std::optional<std::string> single_value(const TripleStore& store, const Term& subject, const std::string& predicate) {
    const auto matches =
        query::match_pattern(store, {subject, query::iri(predicate), query::var("v")});
    if (matches.empty()) return std::nullopt;
    // several values: take the smallest so the label is stable
    std::string best = matches.front().at("v").value();
    for (const auto& m : matches) best = std::min(best, m.at("v").value());
    return best;
}

} // namespace

std::string to_dot(const TripleStore& store) {
    using query::iri;
    using query::var;

    std::set<Term> events;
    for (const auto& p : {vocab::kObservedAt, vocab::kEventType}) {
        for (const auto& b : query::match_pattern(store, {var("s"), iri(p), var("o")})) events.insert(b.at("s"));
    }
    std::set<Term> objects;
    for (const auto& b : query::match_pattern(store, {var("s"), iri(vocab::kObjectType), var("o")})) {
        if (!events.count(b.at("s"))) objects.insert(b.at("s"));
    }

    std::map<Term, std::string> node_ids;
    std::ostringstream out;
    out << "digraph oced {\n";
    out << "  rankdir=LR;\n";
    for (const auto& e : events) {
        const std::string id = "n" + std::to_string(node_ids.size());
        node_ids.emplace(e, id);
        const auto type = single_value(store, e, vocab::kEventType);
        const auto time = single_value(store, e, vocab::kObservedAt);
        std::string label = type.value_or(local_name(e.value()));
        if (time) label += "\n" + *time;
        out << "  " << id << " [shape=box, label=" << dot_quote(label) << "];\n";
    }
    for (const auto& o : objects) {
        const std::string id = "n" + std::to_string(node_ids.size());
        node_ids.emplace(o, id);
        const auto type = single_value(store, o, vocab::kObjectType);
        out << "  " << id << " [shape=ellipse, label=" << dot_quote(*type + "\n" + local_name(o.value())) << "];\n";
    }

    std::set<std::tuple<std::string, std::string, std::string>> edges;
    const std::vector<query::TriplePattern> reified = {
        {var("n"), iri(vocab::kRdfType), iri(vocab::kEventObject)},
        {var("n"), iri(vocab::kEvent), var("e")},
        {var("n"), iri(vocab::kObject), var("o")},
    };
    const std::vector<std::vector<query::TriplePattern>> classifier = {
        {{var("n"), iri(vocab::kClassifier), var("c")}}};
    for (const auto& b : query::match_optional(store, reified, classifier)) {
        auto from = node_ids.find(b.at("e"));
        auto to = node_ids.find(b.at("o"));
        if (from == node_ids.end() || to == node_ids.end()) continue;
        auto c = b.find("c");
        edges.emplace(from->second, to->second, c == b.end() ? std::string("related") : c->second.value());
    }
    for (const auto& t : store.id_triples()) {
        const Term& s = store.term(t.s);
        const Term& p = store.term(t.p);
        const Term& o = store.term(t.o);
        if (p.value() == vocab::kRdfType) continue;
        auto from = node_ids.find(s);
        auto to = node_ids.find(o);
        if (from == node_ids.end() || to == node_ids.end()) continue;
        edges.emplace(from->second, to->second, local_name(p.value()));
    }
    // numeric order of node ids rather than lexicographic
    std::vector<std::tuple<std::size_t, std::size_t, std::string>> ordered;
    for (const auto& [from, to, label] : edges) {
        ordered.emplace_back(std::stoul(from.substr(1)), std::stoul(to.substr(1)), label);
    }
    std::sort(ordered.begin(), ordered.end());
    for (const auto& [from, to, label] : ordered) {
        out << "  n" << from << " -> n" << to << " [label=" << dot_quote(label) << "];\n";
    }
    out << "}\n";
    return std::move(out).str();
}

} // namespace ocedforge::report
