#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "ocedforge/analyses.hpp"
#include "ocedforge/triple_store.hpp"

namespace ocedforge::report {

/// Column-ordered result table. Cells are JSON scalars; null means unbound.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
};

Table ping_pong_table(const std::vector<analyses::PingPongRow>& rows);
Table event_object_table(const std::vector<analyses::EventObjectRow>& rows);
Table team_table(const std::vector<analyses::TeamInvolvement>& rows);

/// RFC 4180: CRLF record separators, header row, fields quoted when they
/// contain a comma, quote, CR or LF. Null cells are empty fields.
std::string to_csv(const Table& table);

/// One JSON object per line, keys in column order, nulls for unbound cells.
std::string to_jsonl(const Table& table);

/// Graphviz digraph of a store in the event/object vocabulary: events as
/// boxes (type and time), objects as ellipses (type and id), edges labelled
/// with the relation qualifier. Emission order is sorted and stable.
std::string to_dot(const query::TripleStore& store);

} // namespace ocedforge::report
