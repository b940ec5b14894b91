#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace ocedforge::rdf {

/// An RDF term: IRI, typed literal, or plain literal (optionally
/// language-tagged). Blank nodes are not modelled.
class Term {
public:
    enum class Kind : unsigned char { Iri, TypedLiteral, PlainLiteral };

    static Term iri(std::string value) { return Term(Kind::Iri, std::move(value), {}); }
    static Term typed(std::string lexical, std::string datatype_iri) {
        return Term(Kind::TypedLiteral, std::move(lexical), std::move(datatype_iri));
    }
    static Term plain(std::string lexical, std::string lang = {}) {
        return Term(Kind::PlainLiteral, std::move(lexical), std::move(lang));
    }

    Kind kind() const noexcept { return kind_; }
    bool is_iri() const noexcept { return kind_ == Kind::Iri; }
    bool is_literal() const noexcept { return kind_ != Kind::Iri; }

    /// IRI string or literal lexical form.
    const std::string& value() const noexcept { return value_; }
    /// Datatype IRI of a typed literal, empty otherwise.
    const std::string& datatype() const noexcept {
        return kind_ == Kind::TypedLiteral ? extra_ : empty();
    }
    /// Language tag of a plain literal, empty otherwise.
    const std::string& lang() const noexcept { return kind_ == Kind::PlainLiteral ? extra_ : empty(); }

    friend auto operator<=>(const Term&, const Term&) = default;
    friend bool operator==(const Term&, const Term&) = default;

    /// N-Triples style rendering, for diagnostics and test output.
    std::string to_string() const;

private:
    Term(Kind kind, std::string value, std::string extra)
        : kind_(kind), value_(std::move(value)), extra_(std::move(extra)) {}

    static const std::string& empty() {
        static const std::string e;
        return e;
    }

    Kind kind_;
    std::string value_;
    std::string extra_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept {
        std::size_t h = std::hash<std::string>{}(t.value());
        h ^= std::hash<std::string>{}(t.datatype().empty() ? t.lang() : t.datatype()) + 0x9e3779b97f4a7c15ULL +
             (h << 6) + (h >> 2);
        return h ^ static_cast<std::size_t>(t.kind());
    }
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend auto operator<=>(const Triple&, const Triple&) = default;
    friend bool operator==(const Triple&, const Triple&) = default;
};

/// Namespaces and fixed names of the OCEDO vocabulary and friends.
namespace vocab {

inline constexpr std::string_view kCore = "https://w3id.org/ocedo/core#";
inline constexpr std::string_view kExt = "https://w3id.org/ocedo/ext#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
/// Namespace of instance data (events, objects, relation nodes).
inline constexpr std::string_view kEx = "http://example.org/oced/";

inline std::string core(std::string_view local) { return std::string(kCore) + std::string(local); }
inline std::string ext(std::string_view local) { return std::string(kExt) + std::string(local); }
inline std::string xsd(std::string_view local) { return std::string(kXsd) + std::string(local); }
inline std::string rdf(std::string_view local) { return std::string(kRdf) + std::string(local); }
inline std::string ex(std::string_view local) { return std::string(kEx) + std::string(local); }

inline const std::string kRdfType = rdf("type");
inline const std::string kObservedAt = core("observed_at");
inline const std::string kEvent = ext("event");
inline const std::string kObject = ext("object");
inline const std::string kEventCase = ext("event_case");
inline const std::string kHandledBySupportTeam = ext("handled_by_support_team");
inline const std::string kEventType = ext("event_type");
inline const std::string kObjectType = ext("object_type");
inline const std::string kClassifier = ext("classifier");
inline const std::string kEventObject = ext("EventObject");

inline const std::string kXsdDateTime = xsd("dateTime");
inline const std::string kXsdString = xsd("string");
inline const std::string kXsdInteger = xsd("integer");
inline const std::string kXsdDecimal = xsd("decimal");
inline const std::string kXsdDouble = xsd("double");
inline const std::string kXsdBoolean = xsd("boolean");

} // namespace vocab

} // namespace ocedforge::rdf
