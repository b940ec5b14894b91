#pragma once

#include <string>
#include <string_view>

#include "ocedforge/oced.hpp"
#include "ocedforge/triple_store.hpp"

namespace ocedforge::turtle {

/// IRI of an event or object in the instance namespace.
std::string entity_iri(const EntityId& id);
/// Class IRIs given to events and objects by their type.
std::string event_type_iri(std::string_view event_type);
std::string object_type_iri(std::string_view object_type);
/// Predicate carrying a pass-through attribute.
std::string attribute_iri(std::string_view key);
/// Predicate used for the direct form of a qualified relation.
std::string qualifier_iri(std::string_view qualifier);

/// RDF view of the graph. Per event: type, `ocedo:observed_at` (UTC
/// xsd:dateTime), `ext:event_type` and attributes. Per object: type,
/// `ext:object_type`, attributes. Per event-object relation: an
/// `ext:EventObject` node with `ext:event`, `ext:object`, optional
/// `ext:classifier`, plus the direct `ext:<qualifier>` edge when qualified.
/// Per object-object relation: one `ext:<qualifier>` edge.
/// Throws SerializationError when two entities would share an IRI or a
/// qualifier names a reserved predicate. The returned store is frozen.
query::TripleStore graph_to_triples(const OcedGraph& graph);

/// Deterministic Turtle: the five prefix lines, a blank line, then one
/// triple per line sorted by (subject, predicate, object).
std::string write_turtle(const query::TripleStore& store);

/// Parses the supported Turtle subset (prefix declarations, IRIs, prefixed
/// names, literals, `;` `,` and `a`). Blank nodes and collections raise
/// StructuralError naming the construct; syntax errors raise ParseError.
/// The returned store is frozen.
query::TripleStore parse_turtle(std::string_view text);

} // namespace ocedforge::turtle
