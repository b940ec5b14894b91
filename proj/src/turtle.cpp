#include "ocedforge/turtle.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "ocedforge/error.hpp"

namespace ocedforge::turtle {

using query::TripleStore;
using rdf::Term;
using rdf::Triple;
namespace vocab = rdf::vocab;

std::string entity_iri(const EntityId& id) { return vocab::ex(id.str()); }
std::string event_type_iri(std::string_view event_type) { return vocab::ext("EventType_" + escape_id(event_type)); }
std::string object_type_iri(std::string_view object_type) {
    return vocab::ext("ObjectType_" + escape_id(object_type));
}
std::string attribute_iri(std::string_view key) { return vocab::ext("attr_" + escape_id(key)); }
std::string qualifier_iri(std::string_view qualifier) { return vocab::ext(escape_id(qualifier)); }

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Term literal(const Value& value) {
    return std::visit(
        overloaded{
            [](const std::string& s) { return Term::plain(s); },
            [](const Timestamp& t) { return Term::typed(t.to_utc_iso(), vocab::kXsdDateTime); },
            [](std::int64_t i) { return Term::typed(std::to_string(i), vocab::kXsdInteger); },
            [](double d) {
                if (std::isnan(d)) return Term::typed("NaN", vocab::kXsdDouble);
                if (std::isinf(d)) return Term::typed(d > 0 ? "INF" : "-INF", vocab::kXsdDouble);
                return Term::typed(value_to_string(d), vocab::kXsdDouble);
            },
            [](bool b) { return Term::typed(b ? "true" : "false", vocab::kXsdBoolean); },
            [](const UuidValue& u) { return Term::plain(u.text); },
        },
        value);
}

void check_qualifier(const std::string& qualifier) {
    static const std::set<std::string> reserved = {"event", "object", "classifier", "event_type", "object_type",
                                                    "EventObject"};
    if (reserved.count(qualifier) || qualifier.rfind("attr_", 0) == 0 || qualifier.rfind("EventType_", 0) == 0 ||
        qualifier.rfind("ObjectType_", 0) == 0) {
        throw SerializationError("qualifier '" + qualifier + "' collides with a reserved vocabulary name");
    }
}

} // namespace

TripleStore graph_to_triples(const OcedGraph& graph) {
    std::map<std::string, std::string> owners;
    auto claim = [&](const EntityId& id, const char* kind) {
        auto [it, inserted] = owners.emplace(id.str(), kind);
        if (!inserted) {
            throw SerializationError("id '" + id.str() + "' is used by both an " + it->second + " and an " + kind +
                                     "; their IRIs would coincide");
        }
    };
    for (const auto& [id, e] : graph.events()) claim(id, "event");
    for (const auto& [id, o] : graph.objects()) claim(id, "object");
    for (const auto& rel : graph.event_object_relations()) claim(rel.id, "event-object relation");

    TripleStore store;
    auto add = [&](const std::string& s, const std::string& p, Term o) {
        store.insert(Triple{Term::iri(s), Term::iri(p), std::move(o)});
    };

    for (const auto& [id, event] : graph.events()) {
        const std::string s = entity_iri(id);
        add(s, vocab::kRdfType, Term::iri(event_type_iri(event.event_type)));
        add(s, vocab::kObservedAt, Term::typed(event.observed_at.to_utc_iso(), vocab::kXsdDateTime));
        add(s, vocab::kEventType, Term::plain(event.event_type));
        for (const auto& [key, value] : event.attributes) add(s, attribute_iri(key), literal(value));
    }
    for (const auto& [id, object] : graph.objects()) {
        const std::string s = entity_iri(id);
        add(s, vocab::kRdfType, Term::iri(object_type_iri(object.object_type)));
        add(s, vocab::kObjectType, Term::plain(object.object_type));
        for (const auto& [key, value] : object.attributes) add(s, attribute_iri(key), literal(value));
    }
    for (const auto& rel : graph.event_object_relations()) {
        const std::string node = entity_iri(rel.id);
        add(node, vocab::kRdfType, Term::iri(vocab::kEventObject));
        add(node, vocab::kEvent, Term::iri(entity_iri(rel.event)));
        add(node, vocab::kObject, Term::iri(entity_iri(rel.object)));
        if (rel.qualifier) {
            check_qualifier(*rel.qualifier);
            add(node, vocab::kClassifier, Term::plain(*rel.qualifier));
            add(entity_iri(rel.event), qualifier_iri(*rel.qualifier), Term::iri(entity_iri(rel.object)));
        }
    }
    for (const auto& rel : graph.object_object_relations()) {
        check_qualifier(rel.qualifier);
        add(entity_iri(rel.source), qualifier_iri(rel.qualifier), Term::iri(entity_iri(rel.target)));
    }
    store.freeze();
    return store;
}

namespace {

struct Prefix {
    const char* name;
    std::string_view iri;
};

constexpr Prefix kPrefixes[] = {
    {"ocedo", vocab::kCore}, {"ext", vocab::kExt}, {"xsd", vocab::kXsd}, {"rdf", vocab::kRdf}, {"ex", vocab::kEx},
};

bool is_hex(char c) { return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'F') || (c >= 'a' && c <= 'f'); }

bool safe_local_name(std::string_view local) {
    if (local.empty() || local.front() == '-') return false;
    for (std::size_t i = 0; i < local.size(); ++i) {
        const char c = local[i];
        if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-') {
            continue;
        }
        if (c == '%' && i + 2 < local.size() && is_hex(local[i + 1]) && is_hex(local[i + 2])) {
            i += 2;
            continue;
        }
        return false;
    }
    return true;
}

void write_iri(std::ostream& out, const std::string& iri) {
    for (const auto& prefix : kPrefixes) {
        if (iri.size() > prefix.iri.size() && iri.compare(0, prefix.iri.size(), prefix.iri) == 0) {
            const std::string_view local = std::string_view(iri).substr(prefix.iri.size());
            if (safe_local_name(local)) {
                out << prefix.name << ':' << local;
                return;
            }
        }
    }
    out << '<';
    for (unsigned char c : iri) {
        if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
            c == '`' || c == '\\') {
            char buf[12];
            std::snprintf(buf, sizeof buf, "\\u%04X", c);
            out << buf;
        } else {
            out << static_cast<char>(c);
        }
    }
    out << '>';
}

void write_term(std::ostream& out, const Term& term) {
    if (term.is_iri()) {
        write_iri(out, term.value());
        return;
    }
    out << '"';
    for (char c : term.value()) {
        switch (c) {
        case '\\': out << "\\\\"; break;
        case '"': out << "\\\""; break;
        case '\n': out << "\\n"; break;
        case '\r': out << "\\r"; break;
        case '\t': out << "\\t"; break;
        default: out << c;
        }
    }
    out << '"';
    if (term.kind() == Term::Kind::TypedLiteral) {
        out << "^^";
        write_iri(out, term.datatype());
    } else if (!term.lang().empty()) {
        out << '@' << term.lang();
    }
}

} // namespace

std::string write_turtle(const TripleStore& store) {
    std::ostringstream out;
    for (const auto& prefix : kPrefixes) {
        out << "@prefix " << prefix.name << ": <" << prefix.iri << "> .\n";
    }
    const auto triples = store.sorted_triples();
    if (!triples.empty()) out << '\n';
    for (const auto& t : triples) {
        write_term(out, t.subject);
        out << ' ';
        if (t.predicate.value() == vocab::kRdfType) {
            out << 'a';
        } else {
            write_term(out, t.predicate);
        }
        out << ' ';
        write_term(out, t.object);
        out << " .\n";
    }
    return std::move(out).str();
}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool is_name_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    TripleStore run() {
        skip_ws();
        while (!at_end()) {
            statement();
            skip_ws();
        }
        store_.freeze();
        return std::move(store_);
    }

private:
    // ---- cursor -----------------------------------------------------------

    bool at_end() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column_); }

    [[noreturn]] void unsupported(const std::string& construct) const {
        throw StructuralError("unsupported Turtle construct: " + construct + " at line " + std::to_string(line_) +
                              ", column " + std::to_string(column_));
    }

    void skip_ws() {
        while (!at_end()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    void expect(char c, const char* context) {
        skip_ws();
        if (peek() != c) {
            fail(std::string("expected '") + c + "' " + context +
                 (at_end() ? std::string(", found end of input") : std::string(", found '") + peek() + "'"));
        }
        advance();
    }

    bool keyword_ahead(std::string_view word, bool case_insensitive) const {
        if (pos_ + word.size() > text_.size()) return false;
        for (std::size_t i = 0; i < word.size(); ++i) {
            char a = text_[pos_ + i];
            char b = word[i];
            if (case_insensitive) {
                a = static_cast<char>(std::tolower(static_cast<unsigned char>(a)));
                b = static_cast<char>(std::tolower(static_cast<unsigned char>(b)));
            }
            if (a != b) return false;
        }
        const char next = pos_ + word.size() < text_.size() ? text_[pos_ + word.size()] : '\0';
        return !is_name_char(next) && next != ':';
    }

    void consume(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) advance();
    }

    // ---- grammar ----------------------------------------------------------

    void statement() {
        if (peek() == '@') {
            if (keyword_ahead("@prefix", false)) {
                consume(7);
                prefix_decl();
                expect('.', "after @prefix declaration");
                return;
            }
            if (keyword_ahead("@base", false)) unsupported("@base declaration");
            fail("unknown directive");
        }
        if (keyword_ahead("PREFIX", true)) {
            consume(6);
            prefix_decl();
            return;
        }
        if (keyword_ahead("BASE", true)) unsupported("BASE declaration");
        if (keyword_ahead("GRAPH", true) || peek() == '{') unsupported("TriG graph block");

        const Term subject = subject_term();
        predicate_object_list(subject);
        expect('.', "at end of triples");
    }

    void prefix_decl() {
        skip_ws();
        std::string name;
        while (!at_end() && peek() != ':') {
            const char c = peek();
            if (!is_name_char(c)) fail("invalid prefix name");
            name += advance();
        }
        if (at_end()) fail("expected ':' in prefix declaration");
        advance();
        skip_ws();
        if (peek() != '<') fail("expected IRI in prefix declaration");
        prefixes_[name] = iri_ref();
    }

    Term subject_term() {
        skip_ws();
        const char c = peek();
        if (c == '[') unsupported("blank node property list '[ ... ]'");
        if (c == '(') unsupported("collection '( ... )'");
        if (c == '_' && peek(1) == ':') unsupported("blank node label '_:'");
        if (c == '"' || c == '\'') fail("literal in subject position");
        return Term::iri(iri());
    }

    void predicate_object_list(const Term& subject) {
        for (;;) {
            skip_ws();
            Term predicate = verb();
            for (;;) {
                Term object = object_term();
                store_.insert(Triple{subject, predicate, std::move(object)});
                skip_ws();
                if (peek() != ',') break;
                advance();
            }
            skip_ws();
            if (peek() != ';') return;
            while (peek() == ';') {
                advance();
                skip_ws();
            }
            if (peek() == '.' || peek() == ']' || at_end()) return;
        }
    }

    Term verb() {
        if (peek() == 'a' && keyword_ahead("a", false)) {
            advance();
            return Term::iri(vocab::kRdfType);
        }
        if (peek() == '"' || peek() == '\'') fail("literal in predicate position");
        if (peek() == '_' && peek(1) == ':') unsupported("blank node label '_:'");
        if (peek() == '{') unsupported("TriG graph block");
        if (peek() == '[') unsupported("blank node property list '[ ... ]'");
        return Term::iri(iri());
    }

    Term object_term() {
        skip_ws();
        const char c = peek();
        if (c == '[') unsupported("blank node property list '[ ... ]'");
        if (c == '(') unsupported("collection '( ... )'");
        if (c == '_' && peek(1) == ':') unsupported("blank node label '_:'");
        if (c == '"' || c == '\'') return string_literal();
        if ((c >= '0' && c <= '9') || c == '+' || c == '-' || (c == '.' && peek(1) >= '0' && peek(1) <= '9')) {
            return numeric_literal();
        }
        if (keyword_ahead("true", false)) {
            consume(4);
            return Term::typed("true", vocab::kXsdBoolean);
        }
        if (keyword_ahead("false", false)) {
            consume(5);
            return Term::typed("false", vocab::kXsdBoolean);
        }
        return Term::iri(iri());
    }

    std::string iri() {
        skip_ws();
        if (peek() == '<') return iri_ref();
        return prefixed_name();
    }

    std::string iri_ref() {
        advance(); // '<'
        std::string out;
        for (;;) {
            if (at_end()) fail("unterminated IRI");
            const char c = advance();
            if (c == '>') break;
            if (c == '\\') {
                const char kind = at_end() ? '\0' : advance();
                if (kind != 'u' && kind != 'U') fail("invalid escape in IRI");
                append_utf8(out, hex_code(kind == 'u' ? 4 : 8));
                continue;
            }
            if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
                c == '^' || c == '`') {
                fail("invalid character in IRI");
            }
            out += c;
        }
        if (out.find(':') == std::string::npos) unsupported("relative IRI <" + out + ">");
        return out;
    }

    std::uint32_t hex_code(int digits) {
        std::uint32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            if (at_end() || !is_hex(peek())) fail("invalid unicode escape");
            const char h = advance();
            cp = cp * 16 + static_cast<std::uint32_t>(h <= '9' ? h - '0' : (h | 0x20) - 'a' + 10);
        }
        if (cp > 0x10FFFF) fail("unicode escape out of range");
        return cp;
    }

    std::string prefixed_name() {
        const std::size_t start_line = line_, start_col = column_;
        std::string prefix;
        while (!at_end() && peek() != ':' && is_name_char(peek())) prefix += advance();
        if (peek() != ':') {
            throw ParseError(prefix.empty() ? "expected IRI or prefixed name" : "expected ':' after '" + prefix + "'",
                             start_line, start_col);
        }
        advance();
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) throw ParseError("undefined prefix '" + prefix + ":'", start_line, start_col);

        std::string local;
        for (;;) {
            const char c = peek();
            if (c == '\\') {
                static constexpr std::string_view escapable = "_~.-!$&'()*+,;=/?#@%";
                if (escapable.find(peek(1)) == std::string_view::npos) fail("invalid local name escape");
                advance();
                local += advance();
            } else if (c == '%') {
                if (!is_hex(peek(1)) || !is_hex(peek(2))) fail("invalid percent escape in local name");
                local += advance();
                local += advance();
                local += advance();
            } else if (is_name_char(c) || c == ':' || (c >= '0' && c <= '9')) {
                // A trailing '.' terminates the statement rather than the name.
                if (c == '.' && !(is_name_char(peek(1)) || peek(1) == ':' || peek(1) == '%' || peek(1) == '\\')) break;
                local += advance();
            } else {
                break;
            }
        }
        return it->second + local;
    }

    Term string_literal() {
        const char quote = peek();
        const bool long_form = peek(1) == quote && peek(2) == quote;
        consume(long_form ? 3 : 1);
        std::string value;
        for (;;) {
            if (at_end()) fail("unterminated string literal");
            const char c = peek();
            if (long_form) {
                if (c == quote && peek(1) == quote && peek(2) == quote) {
                    consume(3);
                    break;
                }
            } else {
                if (c == quote) {
                    advance();
                    break;
                }
                if (c == '\n' || c == '\r') fail("line break in string literal");
            }
            advance();
            if (c != '\\') {
                value += c;
                continue;
            }
            if (at_end()) fail("unterminated escape");
            const char e = advance();
            switch (e) {
            case 't': value += '\t'; break;
            case 'b': value += '\b'; break;
            case 'n': value += '\n'; break;
            case 'r': value += '\r'; break;
            case 'f': value += '\f'; break;
            case '"': value += '"'; break;
            case '\'': value += '\''; break;
            case '\\': value += '\\'; break;
            case 'u': append_utf8(value, hex_code(4)); break;
            case 'U': append_utf8(value, hex_code(8)); break;
            default: fail(std::string("invalid escape '\\") + e + "' in string literal");
            }
        }
        if (peek() == '@') {
            advance();
            std::string lang;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) lang += advance();
            if (lang.empty()) fail("empty language tag");
            return Term::plain(std::move(value), std::move(lang));
        }
        if (peek() == '^' && peek(1) == '^') {
            consume(2);
            return Term::typed(std::move(value), iri());
        }
        return Term::plain(std::move(value));
    }

    Term numeric_literal() {
        std::string lexical;
        if (peek() == '+' || peek() == '-') lexical += advance();
        bool digits = false;
        while (peek() >= '0' && peek() <= '9') {
            lexical += advance();
            digits = true;
        }
        bool decimal = false;
        if (peek() == '.' && peek(1) >= '0' && peek(1) <= '9') {
            decimal = true;
            lexical += advance();
            while (peek() >= '0' && peek() <= '9') lexical += advance();
            digits = true;
        }
        bool exponent = false;
        if (digits && (peek() == 'e' || peek() == 'E')) {
            exponent = true;
            lexical += advance();
            if (peek() == '+' || peek() == '-') lexical += advance();
            if (!(peek() >= '0' && peek() <= '9')) fail("malformed exponent");
            while (peek() >= '0' && peek() <= '9') lexical += advance();
        }
        if (!digits) fail("malformed numeric literal");
        const std::string& dt = exponent ? vocab::kXsdDouble : decimal ? vocab::kXsdDecimal : vocab::kXsdInteger;
        return Term::typed(std::move(lexical), dt);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    std::map<std::string, std::string> prefixes_;
    TripleStore store_;
};

} // namespace

TripleStore parse_turtle(std::string_view text) { return Parser(text).run(); }

} // namespace ocedforge::turtle
