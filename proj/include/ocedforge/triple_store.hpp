#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "ocedforge/rdf.hpp"

namespace ocedforge::query {

using rdf::Term;
using rdf::Triple;

/// Dictionary-encoded set of triples with subject, predicate, object and
/// (predicate, object) indexes. Built by a single writer, then frozen; a
/// frozen store is immutable and safe for concurrent readers.
class TripleStore {
public:
    using TermId = std::uint32_t;
    static constexpr TermId kNoTerm = ~TermId{0};

    struct IdTriple {
        TermId s, p, o;
        friend bool operator==(const IdTriple&, const IdTriple&) = default;
    };

    /// Set semantics: returns false when the triple was already present.
    /// Throws std::logic_error on a frozen store or a non-IRI subject/predicate.
    bool insert(const Triple& triple);
    void freeze() noexcept { frozen_ = true; }
    bool frozen() const noexcept { return frozen_; }

    std::size_t size() const noexcept { return triples_.size(); }
    bool empty() const noexcept { return triples_.empty(); }
    bool contains(const Triple& triple) const;

    /// All triples in (subject, predicate, object) order.
    std::vector<Triple> sorted_triples() const;

    std::optional<TermId> lookup(const Term& term) const;
    const Term& term(TermId id) const { return terms_[id]; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    const std::vector<IdTriple>& id_triples() const noexcept { return triples_; }
    Triple decode(const IdTriple& t) const { return {terms_[t.s], terms_[t.p], terms_[t.o]}; }

    /// Positions (into id_triples()) of a superset of the triples matching
    /// the given constants (kNoTerm = wildcard), taken from the narrowest
    /// applicable index. Callers still check every constant.
    std::span<const std::uint32_t> candidates(TermId s, TermId p, TermId o) const;
    /// Size of the narrowest index list for the given constants.
    std::size_t cardinality(TermId s, TermId p, TermId o) const;
    /// Average number of triples per distinct value at a position (0=s, 1=p, 2=o).
    double average_fanout(int position) const;

private:
    struct IdTripleHash {
        std::size_t operator()(const IdTriple& t) const noexcept {
            std::uint64_t h = t.s;
            h = h * 0x9E3779B97F4A7C15ULL ^ t.p;
            h = h * 0x9E3779B97F4A7C15ULL ^ t.o;
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };

    TermId intern(const Term& term);

    std::vector<Term> terms_;
    std::unordered_map<Term, TermId, rdf::TermHash> term_ids_;
    std::vector<IdTriple> triples_;
    std::unordered_set<IdTriple, IdTripleHash> present_;
    std::unordered_map<TermId, std::vector<std::uint32_t>> by_s_, by_p_, by_o_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_po_;
    std::vector<std::uint32_t> all_;
    bool frozen_ = false;
};

struct Variable {
    std::string name;
    friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;
};

inline PatternTerm var(std::string name) { return Variable{std::move(name)}; }
inline PatternTerm iri(std::string value) { return Term::iri(std::move(value)); }

using BindingSet = std::map<std::string, Term>;

/// One binding set per matching triple. Repeated variables must bind to the
/// same term; an all-constant pattern yields one empty binding set if present.
std::vector<BindingSet> match_pattern(const TripleStore& store, const TriplePattern& pattern);

/// Natural join of the patterns (index nested-loop, most selective first).
/// An empty pattern list yields a single empty solution.
std::vector<BindingSet> match_bgp(const TripleStore& store, std::span<const TriplePattern> patterns);

/// Left outer join: each required solution is extended by every compatible
/// solution of each optional group in turn, or kept unextended if none.
std::vector<BindingSet> match_optional(const TripleStore& store, std::span<const TriplePattern> required,
                                       std::span<const std::vector<TriplePattern>> optional_groups);

/// Orders two terms of the same comparable class: xsd:dateTime by instant,
/// numerics by value, booleans, and simple strings lexically. Two IRIs are
/// equivalent when identical and unordered otherwise. Anything else throws
/// TermTypeError.
std::partial_ordering compare_terms(const Term& a, const Term& b);

/// compare_terms with the type error mapped to nullopt, the filter convention.
std::optional<std::partial_ordering> try_compare_terms(const Term& a, const Term& b);

} // namespace ocedforge::query
