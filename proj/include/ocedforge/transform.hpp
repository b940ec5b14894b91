#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocedforge/oced.hpp"
#include "ocedforge/xes.hpp"

namespace ocedforge {

/// Turns every distinct value of one event attribute into a shared object.
struct ObjectRule {
    std::string xes_key;
    std::string object_type;
    /// Qualifier on the event -> object relation.
    std::string eo_qualifier;
    /// When set, the case object is also related to the shared object.
    std::optional<std::string> oo_qualifier;

    friend bool operator==(const ObjectRule&, const ObjectRule&) = default;
};

struct MappingConfig {
    std::string case_object_type = "case";
    std::string case_id_key = "concept:name";
    std::vector<std::string> event_type_keys = {"concept:name", "lifecycle:transition"};
    std::string timestamp_key = "time:timestamp";
    std::vector<ObjectRule> object_rules;
    std::string case_eo_qualifier = "event_case";
    std::vector<std::string> attribute_passthrough;

    /// Throws ConfigError when a rule reuses the timestamp key, two rules
    /// share an xes_key, or a required name is empty.
    void validate() const;

    friend bool operator==(const MappingConfig&, const MappingConfig&) = default;
};

/// The BPIC 2013 incident-log mapping: cases, support teams from `org:group`.
MappingConfig default_bpic2013_config();

inline constexpr int kMappingConfigVersion = 1;

/// Loads a YAML mapping file (`config_version: 1`). Keys that are absent keep
/// the values of default_bpic2013_config(). Throws ConfigError.
MappingConfig load_mapping_config(std::string_view yaml_text);
MappingConfig load_mapping_config_file(const std::string& path);
std::string dump_mapping_config(const MappingConfig& config);

struct SkippedEvent {
    std::size_t trace_index;
    std::size_t event_index;
    std::string reason;

    friend bool operator==(const SkippedEvent&, const SkippedEvent&) = default;
};

struct TransformReport {
    std::size_t events_emitted = 0;
    std::size_t objects_emitted = 0;
    std::vector<SkippedEvent> events_skipped;
    std::vector<std::string> warnings;
};

struct TransformResult {
    OcedGraph graph;
    TransformReport report;
};

/// Values at the configured keys joined with "+", absent keys skipped,
/// "unknown" when none is present.
std::string derive_event_type(const xes::Event& event, const MappingConfig& config);

/// Builds the object-centric graph. Never throws on dirty data: events
/// without a usable timestamp are skipped and listed in the report.
TransformResult transform_log(const xes::Log& log, const MappingConfig& config);

} // namespace ocedforge
