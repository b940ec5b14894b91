#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ocedforge/timestamp.hpp"
#include "ocedforge/value.hpp"

namespace ocedforge {

/// Percent-encodes every byte outside [A-Za-z0-9_-] as %XX (upper-case hex).
std::string escape_id(std::string_view raw);
/// Inverse of escape_id. Throws std::invalid_argument on a malformed %XX.
std::string unescape_id(std::string_view escaped);

/// Identifier of an event, object or relation. Always holds the escaped form,
/// so it is usable as an IRI local name as-is.
class EntityId {
public:
    /// Takes an already-escaped value; throws std::invalid_argument if it is
    /// empty or contains characters the escaping rule would not produce.
    explicit EntityId(std::string escaped);
    static EntityId from_raw(std::string_view raw) { return EntityId(escape_id(raw)); }

    const std::string& str() const noexcept { return value_; }
    std::string raw() const { return unescape_id(value_); }

    friend auto operator<=>(const EntityId&, const EntityId&) = default;

private:
    std::string value_;
};

using AttributeMap = std::map<std::string, Value>;

struct OcedEvent {
    EntityId id;
    std::string event_type;
    Timestamp observed_at;
    AttributeMap attributes;
};

struct OcedObject {
    EntityId id;
    std::string object_type;
    AttributeMap attributes;
};

struct EventObjectRelation {
    EntityId id;
    EntityId event;
    EntityId object;
    std::optional<std::string> qualifier;
};

struct ObjectObjectRelation {
    EntityId id;
    EntityId source;
    EntityId target;
    std::string qualifier;
};

struct GraphStats {
    std::size_t event_count = 0;
    std::size_t object_count = 0;
    std::size_t eo_relation_count = 0;
    std::size_t oo_relation_count = 0;
    std::map<std::string, std::size_t> event_type_histogram;
    std::map<std::string, std::size_t> object_type_histogram;

    friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

/// Events, objects and their qualified relations. Every mutator either
/// succeeds completely or throws and leaves the graph untouched.
class OcedGraph {
public:
    /// Throws DuplicateIdError, or std::invalid_argument for an empty type.
    void add_event(OcedEvent event);
    void add_object(OcedObject object);

    /// Appends a relation with id `eo_<n>`. Throws IntegrityError for a
    /// missing endpoint and DuplicateIdError for a repeated
    /// (event, object, qualifier).
    const EventObjectRelation& relate_event_object(const EntityId& event, const EntityId& object,
                                                   std::optional<std::string> qualifier = std::nullopt);

    /// Appends a relation with id `oo_<n>`. Self-relations are rejected
    /// with IntegrityError unless allow_self is set.
    const ObjectObjectRelation& relate_objects(const EntityId& source, const EntityId& target, std::string qualifier,
                                               bool allow_self = false);

    const OcedEvent* find_event(const EntityId& id) const;
    const OcedObject* find_object(const EntityId& id) const;
    bool has_event(const EntityId& id) const { return events_.count(id) != 0; }
    bool has_object(const EntityId& id) const { return objects_.count(id) != 0; }

    const std::map<EntityId, OcedEvent>& events() const noexcept { return events_; }
    const std::map<EntityId, OcedObject>& objects() const noexcept { return objects_; }
    const std::vector<EventObjectRelation>& event_object_relations() const noexcept { return eo_relations_; }
    const std::vector<ObjectObjectRelation>& object_object_relations() const noexcept { return oo_relations_; }

    GraphStats stats() const;

private:
    std::map<EntityId, OcedEvent> events_;
    std::map<EntityId, OcedObject> objects_;
    std::vector<EventObjectRelation> eo_relations_;
    std::vector<ObjectObjectRelation> oo_relations_;
    std::set<std::tuple<EntityId, EntityId, std::optional<std::string>>> eo_keys_;
};

inline GraphStats graph_stats(const OcedGraph& graph) { return graph.stats(); }

} // namespace ocedforge
