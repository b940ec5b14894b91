#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocedforge/value.hpp"

namespace ocedforge::xes {

struct Attribute {
    std::string key;
    Value value;
    std::vector<Attribute> children;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// First top-level attribute with the given key, or nullptr.
const Attribute* find_attribute(const std::vector<Attribute>& attributes, std::string_view key);

struct Event {
    std::vector<Attribute> attributes;

    const Attribute* find(std::string_view key) const { return find_attribute(attributes, key); }
    friend bool operator==(const Event&, const Event&) = default;
};

struct Trace {
    std::vector<Attribute> attributes;
    std::vector<Event> events;

    const Attribute* find(std::string_view key) const { return find_attribute(attributes, key); }
    friend bool operator==(const Trace&, const Trace&) = default;
};

struct Extension {
    std::string name;
    std::string prefix;
    std::string uri;
    friend bool operator==(const Extension&, const Extension&) = default;
};

struct Classifier {
    std::string name;
    std::vector<std::string> keys;
    friend bool operator==(const Classifier&, const Classifier&) = default;
};

struct Globals {
    std::vector<Attribute> trace;
    std::vector<Attribute> event;
    friend bool operator==(const Globals&, const Globals&) = default;
};

struct Log {
    std::string xes_version;
    std::vector<Extension> extensions;
    Globals globals;
    std::vector<Classifier> classifiers;
    std::vector<Attribute> attributes;
    std::vector<Trace> traces;
    /// Skipped elements and other non-fatal findings. Not part of equality.
    std::vector<std::string> warnings;

    std::size_t event_count() const;

    friend bool operator==(const Log& a, const Log& b) {
        return a.xes_version == b.xes_version && a.extensions == b.extensions && a.globals == b.globals &&
               a.classifiers == b.classifiers && a.attributes == b.attributes && a.traces == b.traces;
    }
};

/// Parses an XES document. Throws ParseError for malformed XML and
/// StructuralError for duplicate event keys, bad typed literals, `<list>`
/// elements and repeated extension prefixes.
Log parse(std::string_view document);

/// Canonical XES rendering; `parse(write(log)) == log` for every parsed log.
std::string write(const Log& log);

enum class Scope { Trace, Event };

struct GlobalViolation {
    Scope scope;
    std::size_t trace_index;
    std::optional<std::size_t> event_index;
    std::string key;

    friend bool operator==(const GlobalViolation&, const GlobalViolation&) = default;
};

/// One record per (trace or event, declared global key it lacks).
std::vector<GlobalViolation> validate_globals(const Log& log);

/// Classifier keys that no global or attribute in the log declares.
std::vector<std::string> unknown_classifier_keys(const Log& log);

} // namespace ocedforge::xes
