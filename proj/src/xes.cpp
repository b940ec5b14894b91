#include "ocedforge/xes.hpp"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <cstring>
#include <exception>
#include <memory>
#include <set>
#include <sstream>

#include "ocedforge/error.hpp"

namespace ocedforge::xes {

const Attribute* find_attribute(const std::vector<Attribute>& attributes, std::string_view key) {
    auto it = std::find_if(attributes.begin(), attributes.end(), [&](const Attribute& a) { return a.key == key; });
    return it == attributes.end() ? nullptr : &*it;
}

std::size_t Log::event_count() const {
    std::size_t n = 0;
    for (const auto& trace : traces) {
        n += trace.events.size();
    }
    return n;
}

namespace {

bool is_attribute_element(std::string_view name) {
    return name == "string" || name == "date" || name == "int" || name == "float" || name == "boolean" ||
           name == "id";
}

const char* find_xml_attr(const XML_Char** atts, const char* name) {
    for (int i = 0; atts[i] != nullptr; i += 2) {
        if (std::strcmp(atts[i], name) == 0) {
            return atts[i + 1];
        }
    }
    return nullptr;
}

std::vector<std::string> split_classifier_keys(std::string_view text) {
    std::vector<std::string> keys;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
        if (i >= text.size()) break;
        if (text[i] == '\'') {
            std::size_t end = text.find('\'', i + 1);
            if (end == std::string_view::npos) end = text.size();
            keys.emplace_back(text.substr(i + 1, end - i - 1));
            i = end + 1;
        } else {
            std::size_t end = i;
            while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != '\n' &&
                   text[end] != '\r')
                ++end;
            keys.emplace_back(text.substr(i, end - i));
            i = end;
        }
    }
    return keys;
}

Value parse_typed_value(std::string_view type, const std::string& key, const std::string& raw) {
    if (type == "string") {
        return raw;
    }
    if (type == "id") {
        return UuidValue{raw};
    }
    if (type == "date") {
        if (auto ts = Timestamp::parse(raw)) {
            return *ts;
        }
        throw StructuralError("unparseable date for key '" + key + "': '" + raw + "'");
    }
    if (type == "int") {
        std::int64_t v = 0;
        auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size()) {
            throw StructuralError("unparseable int for key '" + key + "': '" + raw + "'");
        }
        return v;
    }
    if (type == "float") {
        double v = 0;
        auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size()) {
            throw StructuralError("unparseable float for key '" + key + "': '" + raw + "'");
        }
        return v;
    }
    // boolean
    if (raw == "true" || raw == "1") return true;
    if (raw == "false" || raw == "0") return false;
    throw StructuralError("unparseable boolean for key '" + key + "': '" + raw + "'");
}

/// Receives expat callbacks and builds the Log. Exceptions cannot cross the
/// C callbacks, so the first failure is parked and the parser stopped.
class Builder {
public:
    explicit Builder(XML_Parser parser) : parser_(parser) {}

    Log take() { return std::move(log_); }
    std::exception_ptr failure() const { return failure_; }

    static void on_start(void* self, const XML_Char* name, const XML_Char** atts) {
        static_cast<Builder*>(self)->guard([&](Builder& b) { b.start(name, atts); });
    }
    static void on_end(void* self, const XML_Char* name) {
        static_cast<Builder*>(self)->guard([&](Builder& b) { b.end(name); });
    }

private:
    enum class Frame { Log, Extension, Global, Classifier, Trace, Event, Attribute, Skip };

    template <class F>
    void guard(F&& f) {
        if (failure_) return;
        try {
            f(*this);
        } catch (...) {
            failure_ = std::current_exception();
            XML_StopParser(parser_, XML_FALSE);
        }
    }

    std::string location() const {
        return " (line " + std::to_string(XML_GetCurrentLineNumber(parser_)) + ", column " +
               std::to_string(XML_GetCurrentColumnNumber(parser_) + 1) + ")";
    }

    void skip(std::string_view name) {
        log_.warnings.push_back("skipped unknown element <" + std::string(name) + ">" + location());
        frames_.push_back(Frame::Skip);
    }

    void start(std::string_view name, const XML_Char** atts) {
        if (frames_.empty()) {
            if (name != "log") {
                throw StructuralError("root element is <" + std::string(name) + ">, expected <log>");
            }
            if (const char* v = find_xml_attr(atts, "xes.version")) log_.xes_version = v;
            targets_.push_back(&log_.attributes);
            frames_.push_back(Frame::Log);
            return;
        }
        const Frame parent = frames_.back();
        if (parent == Frame::Skip) {
            frames_.push_back(Frame::Skip);
            return;
        }
        if (name == "list" || name == "values") {
            throw StructuralError("<" + std::string(name) + "> attributes are not supported" + location());
        }
        if (is_attribute_element(name)) {
            if (parent == Frame::Extension || parent == Frame::Classifier) {
                skip(name);
                return;
            }
            start_attribute(name, atts);
            return;
        }
        if (parent == Frame::Log) {
            if (name == "extension") {
                start_extension(atts);
                return;
            }
            if (name == "global") {
                const char* scope = find_xml_attr(atts, "scope");
                const std::string_view s = scope ? scope : "event";
                if (s != "trace" && s != "event") {
                    throw StructuralError("unknown global scope '" + std::string(s) + "'" + location());
                }
                targets_.push_back(s == "trace" ? &log_.globals.trace : &log_.globals.event);
                frames_.push_back(Frame::Global);
                return;
            }
            if (name == "classifier") {
                Classifier c;
                if (const char* v = find_xml_attr(atts, "name")) c.name = v;
                if (const char* v = find_xml_attr(atts, "keys")) c.keys = split_classifier_keys(v);
                log_.classifiers.push_back(std::move(c));
                frames_.push_back(Frame::Classifier);
                return;
            }
            if (name == "trace") {
                log_.traces.emplace_back();
                targets_.push_back(&log_.traces.back().attributes);
                frames_.push_back(Frame::Trace);
                return;
            }
        }
        if (parent == Frame::Trace && name == "event") {
            auto& events = log_.traces.back().events;
            events.emplace_back();
            targets_.push_back(&events.back().attributes);
            frames_.push_back(Frame::Event);
            return;
        }
        skip(name);
    }

    void start_extension(const XML_Char** atts) {
        Extension ext;
        if (const char* v = find_xml_attr(atts, "name")) ext.name = v;
        if (const char* v = find_xml_attr(atts, "prefix")) ext.prefix = v;
        if (const char* v = find_xml_attr(atts, "uri")) ext.uri = v;
        for (const auto& other : log_.extensions) {
            if (other.prefix == ext.prefix) {
                throw StructuralError("duplicate extension prefix '" + ext.prefix + "'" + location());
            }
        }
        log_.extensions.push_back(std::move(ext));
        frames_.push_back(Frame::Extension);
    }

    void start_attribute(std::string_view type, const XML_Char** atts) {
        const char* key = find_xml_attr(atts, "key");
        if (key == nullptr || *key == '\0') {
            throw StructuralError("<" + std::string(type) + "> attribute without a key" + location());
        }
        const char* raw = find_xml_attr(atts, "value");
        if (raw == nullptr) {
            throw StructuralError("attribute '" + std::string(key) + "' has no value" + location());
        }
        std::vector<Attribute>* target = targets_.back();
        target->push_back(Attribute{key, parse_typed_value(type, key, raw), {}});
        targets_.push_back(&target->back().children);
        frames_.push_back(Frame::Attribute);
    }

    void end(std::string_view) {
        const Frame frame = frames_.back();
        frames_.pop_back();
        switch (frame) {
        case Frame::Event:
            check_unique_keys(*targets_.back());
            [[fallthrough]];
        case Frame::Log:
        case Frame::Global:
        case Frame::Trace:
        case Frame::Attribute:
            targets_.pop_back();
            break;
        default:
            break;
        }
    }

    void check_unique_keys(const std::vector<Attribute>& attributes) {
        std::set<std::string_view> seen;
        for (const auto& a : attributes) {
            if (!seen.insert(a.key).second) {
                throw StructuralError("duplicate key '" + a.key + "' in event " +
                                      std::to_string(log_.traces.back().events.size() - 1) + " of trace " +
                                      std::to_string(log_.traces.size() - 1) + location());
            }
        }
    }

    XML_Parser parser_;
    Log log_;
    std::vector<Frame> frames_;
    std::vector<std::vector<Attribute>*> targets_;
    std::exception_ptr failure_;
};

struct ParserDeleter {
    void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

void write_escaped(std::ostream& out, std::string_view text) {
    for (char c : text) {
        switch (c) {
        case '&': out << "&amp;"; break;
        case '<': out << "&lt;"; break;
        case '>': out << "&gt;"; break;
        case '"': out << "&quot;"; break;
        case '\n': out << "&#10;"; break;
        case '\r': out << "&#13;"; break;
        case '\t': out << "&#9;"; break;
        default: out << c;
        }
    }
}

void write_attributes(std::ostream& out, const std::vector<Attribute>& attributes, int depth) {
    for (const auto& a : attributes) {
        out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << '<' << value_type_name(a.value) << " key=\"";
        write_escaped(out, a.key);
        out << "\" value=\"";
        write_escaped(out, value_to_string(a.value));
        if (a.children.empty()) {
            out << "\"/>\n";
        } else {
            out << "\">\n";
            write_attributes(out, a.children, depth + 1);
            out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "</" << value_type_name(a.value)
                << ">\n";
        }
    }
}

} // namespace

Log parse(std::string_view document) {
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
    if (!parser) {
        throw Error("cannot allocate XML parser");
    }
    Builder builder(parser.get());
    XML_SetUserData(parser.get(), &builder);
    XML_SetElementHandler(parser.get(), &Builder::on_start, &Builder::on_end);

    const auto status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
    if (builder.failure()) {
        std::rethrow_exception(builder.failure());
    }
    if (status != XML_STATUS_OK) {
        throw ParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                         XML_GetCurrentLineNumber(parser.get()), XML_GetCurrentColumnNumber(parser.get()) + 1);
    }
    return builder.take();
}

std::string write(const Log& log) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<log";
    if (!log.xes_version.empty()) {
        out << " xes.version=\"";
        write_escaped(out, log.xes_version);
        out << '"';
    }
    out << ">\n";
    for (const auto& ext : log.extensions) {
        out << "  <extension name=\"";
        write_escaped(out, ext.name);
        out << "\" prefix=\"";
        write_escaped(out, ext.prefix);
        out << "\" uri=\"";
        write_escaped(out, ext.uri);
        out << "\"/>\n";
    }
    const std::pair<const char*, const std::vector<Attribute>*> scopes[] = {{"trace", &log.globals.trace},
                                                                            {"event", &log.globals.event}};
    for (const auto& [scope, attrs] : scopes) {
        if (attrs->empty()) continue;
        out << "  <global scope=\"" << scope << "\">\n";
        write_attributes(out, *attrs, 2);
        out << "  </global>\n";
    }
    for (const auto& c : log.classifiers) {
        out << "  <classifier name=\"";
        write_escaped(out, c.name);
        out << "\" keys=\"";
        for (std::size_t i = 0; i < c.keys.size(); ++i) {
            if (i) out << ' ';
            const bool quote = c.keys[i].find_first_of(" \t\r\n") != std::string::npos;
            if (quote) out << '\'';
            write_escaped(out, c.keys[i]);
            if (quote) out << '\'';
        }
        out << "\"/>\n";
    }
    write_attributes(out, log.attributes, 1);
    for (const auto& trace : log.traces) {
        out << "  <trace>\n";
        write_attributes(out, trace.attributes, 2);
        for (const auto& event : trace.events) {
            out << "    <event>\n";
            write_attributes(out, event.attributes, 3);
            out << "    </event>\n";
        }
        out << "  </trace>\n";
    }
    out << "</log>\n";
    return std::move(out).str();
}

std::vector<GlobalViolation> validate_globals(const Log& log) {
    std::vector<GlobalViolation> violations;
    for (std::size_t t = 0; t < log.traces.size(); ++t) {
        const Trace& trace = log.traces[t];
        for (const auto& g : log.globals.trace) {
            if (!trace.find(g.key)) {
                violations.push_back({Scope::Trace, t, std::nullopt, g.key});
            }
        }
        for (std::size_t e = 0; e < trace.events.size(); ++e) {
            for (const auto& g : log.globals.event) {
                if (!trace.events[e].find(g.key)) {
                    violations.push_back({Scope::Event, t, e, g.key});
                }
            }
        }
    }
    return violations;
}

std::vector<std::string> unknown_classifier_keys(const Log& log) {
    std::set<std::string> known;
    for (const auto& g : log.globals.event) known.insert(g.key);
    for (const auto& g : log.globals.trace) known.insert(g.key);
    for (const auto& trace : log.traces) {
        for (const auto& event : trace.events) {
            for (const auto& a : event.attributes) known.insert(a.key);
        }
    }
    std::vector<std::string> missing;
    for (const auto& c : log.classifiers) {
        for (const auto& k : c.keys) {
            if (!known.count(k) && std::find(missing.begin(), missing.end(), k) == missing.end()) {
                missing.push_back(k);
            }
        }
    }
    return missing;
}

} // namespace ocedforge::xes
