#include "ocedforge/transform.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ocedforge/error.hpp"

namespace ocedforge {

void MappingConfig::validate() const {
    if (case_object_type.empty()) throw ConfigError("case_object_type must not be empty");
    if (case_id_key.empty()) throw ConfigError("case_id_key must not be empty");
    if (timestamp_key.empty()) throw ConfigError("timestamp_key must not be empty");
    if (case_eo_qualifier.empty()) throw ConfigError("case_eo_qualifier must not be empty");
    std::set<std::string> keys;
    for (const auto& rule : object_rules) {
        if (rule.xes_key.empty() || rule.object_type.empty() || rule.eo_qualifier.empty()) {
            throw ConfigError("object rule needs xes_key, object_type and eo_qualifier");
        }
        if (rule.oo_qualifier && rule.oo_qualifier->empty()) {
            throw ConfigError("object rule for '" + rule.xes_key + "' has an empty oo_qualifier");
        }
        if (rule.xes_key == timestamp_key) {
            throw ConfigError("timestamp key '" + timestamp_key + "' cannot also be an object rule key");
        }
        if (!keys.insert(rule.xes_key).second) {
            throw ConfigError("duplicate object rule for key '" + rule.xes_key + "'");
        }
    }
}

MappingConfig default_bpic2013_config() {
    MappingConfig config;
    config.object_rules.push_back(ObjectRule{"org:group", "support_team", "handled_by_support_team", "involves_team"});
    config.attribute_passthrough = {"org:resource", "org:role", "impact", "product"};
    return config;
}

namespace {

std::string scalar(const YAML::Node& node, const char* name) {
    if (!node.IsScalar()) {
        throw ConfigError(std::string("'") + name + "' must be a scalar");
    }
    return node.as<std::string>();
}

std::vector<std::string> string_list(const YAML::Node& node, const char* name) {
    if (!node.IsSequence()) {
        throw ConfigError(std::string("'") + name + "' must be a list");
    }
    std::vector<std::string> out;
    for (const auto& item : node) out.push_back(scalar(item, name));
    return out;
}

} // namespace

MappingConfig load_mapping_config(std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("invalid mapping config: ") + e.what());
    }
    if (!root.IsMap()) {
        throw ConfigError("mapping config must be a YAML mapping");
    }

    static const std::set<std::string> known = {
        "config_version",  "case_object_type", "case_id_key",       "event_type_keys",      "timestamp_key",
        "object_rules",    "case_eo_qualifier", "attribute_passthrough"};
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!known.count(key)) throw ConfigError("unknown mapping config key '" + key + "'");
    }

    if (!root["config_version"]) throw ConfigError("mapping config lacks 'config_version'");
    int version = 0;
    try {
        version = root["config_version"].as<int>();
    } catch (const YAML::Exception&) {
        throw ConfigError("'config_version' must be an integer");
    }
    if (version != kMappingConfigVersion) {
        throw ConfigError("unsupported config_version " + std::to_string(version));
    }

    MappingConfig config = default_bpic2013_config();
    if (auto n = root["case_object_type"]) config.case_object_type = scalar(n, "case_object_type");
    if (auto n = root["case_id_key"]) config.case_id_key = scalar(n, "case_id_key");
    if (auto n = root["event_type_keys"]) config.event_type_keys = string_list(n, "event_type_keys");
    if (auto n = root["timestamp_key"]) config.timestamp_key = scalar(n, "timestamp_key");
    if (auto n = root["case_eo_qualifier"]) config.case_eo_qualifier = scalar(n, "case_eo_qualifier");
    if (auto n = root["attribute_passthrough"]) config.attribute_passthrough = string_list(n, "attribute_passthrough");
    if (auto n = root["object_rules"]) {
        if (!n.IsSequence()) throw ConfigError("'object_rules' must be a list");
        config.object_rules.clear();
        for (const auto& item : n) {
            if (!item.IsMap()) throw ConfigError("each object rule must be a mapping");
            ObjectRule rule;
            for (const auto& kv : item) {
                const auto key = kv.first.as<std::string>();
                if (key == "xes_key") rule.xes_key = scalar(kv.second, "xes_key");
                else if (key == "object_type") rule.object_type = scalar(kv.second, "object_type");
                else if (key == "eo_qualifier") rule.eo_qualifier = scalar(kv.second, "eo_qualifier");
                else if (key == "oo_qualifier") {
                    if (!kv.second.IsNull()) rule.oo_qualifier = scalar(kv.second, "oo_qualifier");
                } else {
                    throw ConfigError("unknown object rule key '" + key + "'");
                }
            }
            config.object_rules.push_back(std::move(rule));
        }
    }
    config.validate();
    return config;
}

MappingConfig load_mapping_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mapping config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_mapping_config(ss.str());
}

std::string dump_mapping_config(const MappingConfig& config) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "config_version" << YAML::Value << kMappingConfigVersion;
    out << YAML::Key << "case_object_type" << YAML::Value << config.case_object_type;
    out << YAML::Key << "case_id_key" << YAML::Value << config.case_id_key;
    out << YAML::Key << "event_type_keys" << YAML::Value << YAML::Flow << config.event_type_keys;
    out << YAML::Key << "timestamp_key" << YAML::Value << config.timestamp_key;
    out << YAML::Key << "case_eo_qualifier" << YAML::Value << config.case_eo_qualifier;
    out << YAML::Key << "object_rules" << YAML::Value << YAML::BeginSeq;
    for (const auto& rule : config.object_rules) {
        out << YAML::BeginMap;
        out << YAML::Key << "xes_key" << YAML::Value << rule.xes_key;
        out << YAML::Key << "object_type" << YAML::Value << rule.object_type;
        out << YAML::Key << "eo_qualifier" << YAML::Value << rule.eo_qualifier;
        if (rule.oo_qualifier) out << YAML::Key << "oo_qualifier" << YAML::Value << *rule.oo_qualifier;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "attribute_passthrough" << YAML::Value << YAML::Flow << config.attribute_passthrough;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string derive_event_type(const xes::Event& event, const MappingConfig& config) {
    std::string type;
    for (const auto& key : config.event_type_keys) {
        if (const auto* attr = event.find(key)) {
            if (!type.empty()) type += '+';
            type += value_to_string(attr->value);
        }
    }
    return type.empty() ? "unknown" : type;
}

namespace {

class GraphBuilder {
public:
    GraphBuilder(const MappingConfig& config, TransformReport& report) : config_(config), report_(report) {}

    OcedGraph take() { return std::move(graph_); }

    EntityId case_object(const xes::Trace& trace, std::size_t trace_index) {
        std::string raw = "trace_" + std::to_string(trace_index);
        if (const auto* attr = trace.find(config_.case_id_key)) {
            raw = value_to_string(attr->value);
            if (raw.empty()) raw = "trace_" + std::to_string(trace_index);
        } else {
            report_.warnings.push_back("trace " + std::to_string(trace_index) + " has no '" + config_.case_id_key +
                                       "'; using '" + raw + "'");
        }
        EntityId id = EntityId::from_raw(raw);
        if (const auto* existing = graph_.find_object(id)) {
            if (existing->object_type == config_.case_object_type) {
                report_.warnings.push_back("trace " + std::to_string(trace_index) + " repeats case id '" + raw +
                                           "'; events are merged into the existing case");
                return id;
            }
            id = fresh_id("trace_" + std::to_string(trace_index));
            report_.warnings.push_back("case id '" + raw + "' clashes with an object of type '" +
                                       existing->object_type + "'; using '" + id.str() + "'");
        }
        graph_.add_object(OcedObject{id, config_.case_object_type, {}});
        return id;
    }

    EntityId shared_object(const std::string& object_type, const std::string& value) {
        auto key = std::make_pair(object_type, value);
        if (auto it = shared_.find(key); it != shared_.end()) return it->second;
        EntityId id = fresh_id(object_type + "_" + value);
        graph_.add_object(OcedObject{id, object_type, {}});
        shared_.emplace(std::move(key), id);
        return id;
    }

    void emit(const xes::Event& event, const EntityId& case_id, Timestamp at) {
        EntityId event_id("e" + std::to_string(++event_ordinal_));
        OcedEvent oced{event_id, derive_event_type(event, config_), at, {}};
        for (const auto& key : config_.attribute_passthrough) {
            if (const auto* attr = event.find(key)) oced.attributes.emplace(key, attr->value);
        }
        graph_.add_event(std::move(oced));
        graph_.relate_event_object(event_id, case_id, config_.case_eo_qualifier);

        for (const auto& rule : config_.object_rules) {
            const auto* attr = event.find(rule.xes_key);
            if (!attr) continue;
            EntityId object_id = shared_object(rule.object_type, value_to_string(attr->value));
            graph_.relate_event_object(event_id, object_id, rule.eo_qualifier);
            if (rule.oo_qualifier && object_id != case_id &&
                linked_.insert(std::make_tuple(case_id, object_id, *rule.oo_qualifier)).second) {
                graph_.relate_objects(case_id, object_id, *rule.oo_qualifier);
            }
        }
    }

private:
    EntityId fresh_id(const std::string& raw) {
        EntityId id = EntityId::from_raw(raw);
        for (int suffix = 2; graph_.has_object(id); ++suffix) {
            id = EntityId::from_raw(raw + "_" + std::to_string(suffix));
        }
        return id;
    }

    const MappingConfig& config_;
    TransformReport& report_;
    OcedGraph graph_;
    std::size_t event_ordinal_ = 0;
    std::map<std::pair<std::string, std::string>, EntityId> shared_;
    std::set<std::tuple<EntityId, EntityId, std::string>> linked_;
};

} // namespace

TransformResult transform_log(const xes::Log& log, const MappingConfig& config) {
    config.validate();
    TransformReport report;
    GraphBuilder builder(config, report);

    for (std::size_t t = 0; t < log.traces.size(); ++t) {
        const xes::Trace& trace = log.traces[t];
        const EntityId case_id = builder.case_object(trace, t);
        for (std::size_t e = 0; e < trace.events.size(); ++e) {
            const xes::Event& event = trace.events[e];
            const auto* ts_attr = event.find(config.timestamp_key);
            if (!ts_attr) {
                report.events_skipped.push_back({t, e, "missing timestamp"});
                continue;
            }
            std::optional<Timestamp> at;
            if (const auto* ts = std::get_if<Timestamp>(&ts_attr->value)) {
                at = *ts;
            } else if (const auto* s = std::get_if<std::string>(&ts_attr->value)) {
                at = Timestamp::parse(*s);
            }
            if (!at) {
                report.events_skipped.push_back({t, e, "invalid timestamp"});
                continue;
            }
            builder.emit(event, case_id, *at);
            ++report.events_emitted;
        }
    }

    TransformResult result{builder.take(), std::move(report)};
    result.report.objects_emitted = result.graph.objects().size();
    return result;
}

} // namespace ocedforge
