#include "ocedforge/oced.hpp"

#include <stdexcept>

#include "ocedforge/error.hpp"

namespace ocedforge {

namespace {

bool is_unreserved(unsigned char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

} // namespace

std::string escape_id(std::string_view raw) {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(raw.size());
    for (char ch : raw) {
        const auto c = static_cast<unsigned char>(ch);
        if (is_unreserved(c)) {
            out += ch;
        } else {
            out += '%';
            out += digits[c >> 4];
            out += digits[c & 0xF];
        }
    }
    return out;
}

std::string unescape_id(std::string_view escaped) {
    std::string out;
    out.reserve(escaped.size());
    for (std::size_t i = 0; i < escaped.size(); ++i) {
        if (escaped[i] != '%') {
            out += escaped[i];
            continue;
        }
        if (i + 2 >= escaped.size()) {
            throw std::invalid_argument("truncated percent escape in '" + std::string(escaped) + "'");
        }
        const int hi = hex_value(escaped[i + 1]);
        const int lo = hex_value(escaped[i + 2]);
        if (hi < 0 || lo < 0) {
            throw std::invalid_argument("bad percent escape in '" + std::string(escaped) + "'");
        }
        out += static_cast<char>(hi * 16 + lo);
        i += 2;
    }
    return out;
}

EntityId::EntityId(std::string escaped) : value_(std::move(escaped)) {
    if (value_.empty()) {
        throw std::invalid_argument("entity id must not be empty");
    }
    for (std::size_t i = 0; i < value_.size(); ++i) {
        const auto c = static_cast<unsigned char>(value_[i]);
        if (is_unreserved(c)) continue;
        if (c == '%' && i + 2 < value_.size() && hex_value(value_[i + 1]) >= 0 && hex_value(value_[i + 2]) >= 0) {
            i += 2;
            continue;
        }
        throw std::invalid_argument("entity id '" + value_ + "' contains characters outside [A-Za-z0-9_-] "
                                    "that are not percent-encoded");
    }
}

void OcedGraph::add_event(OcedEvent event) {
    if (event.event_type.empty()) {
        throw std::invalid_argument("event '" + event.id.str() + "' has an empty event type");
    }
    if (events_.count(event.id)) {
        throw DuplicateIdError("duplicate event id '" + event.id.str() + "'");
    }
    EntityId key = event.id;
    events_.emplace(std::move(key), std::move(event));
}

void OcedGraph::add_object(OcedObject object) {
    if (object.object_type.empty()) {
        throw std::invalid_argument("object '" + object.id.str() + "' has an empty object type");
    }
    if (objects_.count(object.id)) {
        throw DuplicateIdError("duplicate object id '" + object.id.str() + "'");
    }
    EntityId key = object.id;
    objects_.emplace(std::move(key), std::move(object));
}

const EventObjectRelation& OcedGraph::relate_event_object(const EntityId& event, const EntityId& object,
                                                          std::optional<std::string> qualifier) {
    if (!has_event(event)) {
        throw IntegrityError("event '" + event.str() + "' does not exist");
    }
    if (!has_object(object)) {
        throw IntegrityError("object '" + object.str() + "' does not exist");
    }
    auto key = std::make_tuple(event, object, qualifier);
    if (eo_keys_.count(key)) {
        throw DuplicateIdError("duplicate event-object relation " + event.str() + " -> " + object.str() +
                               (qualifier ? " (" + *qualifier + ")" : std::string()));
    }
    EntityId id("eo_" + std::to_string(eo_relations_.size() + 1));
    eo_relations_.push_back({std::move(id), event, object, std::move(qualifier)});
    eo_keys_.insert(std::move(key));
    return eo_relations_.back();
}

const ObjectObjectRelation& OcedGraph::relate_objects(const EntityId& source, const EntityId& target,
                                                      std::string qualifier, bool allow_self) {
    if (qualifier.empty()) {
        throw std::invalid_argument("object-object relations need a qualifier");
    }
    if (!has_object(source)) {
        throw IntegrityError("object '" + source.str() + "' does not exist");
    }
    if (!has_object(target)) {
        throw IntegrityError("object '" + target.str() + "' does not exist");
    }
    if (source == target && !allow_self) {
        throw IntegrityError("self-relation on object '" + source.str() + "' is not permitted");
    }
    EntityId id("oo_" + std::to_string(oo_relations_.size() + 1));
    oo_relations_.push_back({std::move(id), source, target, std::move(qualifier)});
    return oo_relations_.back();
}

const OcedEvent* OcedGraph::find_event(const EntityId& id) const {
    auto it = events_.find(id);
    return it == events_.end() ? nullptr : &it->second;
}

const OcedObject* OcedGraph::find_object(const EntityId& id) const {
    auto it = objects_.find(id);
    return it == objects_.end() ? nullptr : &it->second;
}

GraphStats OcedGraph::stats() const {
    GraphStats s;
    s.event_count = events_.size();
    s.object_count = objects_.size();
    s.eo_relation_count = eo_relations_.size();
    s.oo_relation_count = oo_relations_.size();
    for (const auto& [id, e] : events_) ++s.event_type_histogram[e.event_type];
    for (const auto& [id, o] : objects_) ++s.object_type_histogram[o.object_type];
    return s;
}

} // namespace ocedforge
