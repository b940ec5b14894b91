#include "ocedforge/triple_store.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "ocedforge/error.hpp"
#include "ocedforge/timestamp.hpp"

namespace ocedforge::query {

namespace {

std::uint64_t po_key(TripleStore::TermId p, TripleStore::TermId o) {
    return (static_cast<std::uint64_t>(p) << 32) | o;
}

const std::vector<std::uint32_t>* find_list(const std::unordered_map<TripleStore::TermId, std::vector<std::uint32_t>>& m,
                                            TripleStore::TermId id) {
    auto it = m.find(id);
    return it == m.end() ? nullptr : &it->second;
}

} // namespace

TripleStore::TermId TripleStore::intern(const Term& term) {
    auto [it, inserted] = term_ids_.try_emplace(term, static_cast<TermId>(terms_.size()));
    if (inserted) {
        if (terms_.size() >= kNoTerm) throw std::length_error("term dictionary is full");
        terms_.push_back(term);
    }
    return it->second;
}

bool TripleStore::insert(const Triple& triple) {
    if (frozen_) throw std::logic_error("insert into a frozen triple store");
    if (!triple.subject.is_iri() || !triple.predicate.is_iri()) {
        throw std::invalid_argument("triple subject and predicate must be IRIs: " + triple.subject.to_string() + " " +
                                    triple.predicate.to_string());
    }
    const IdTriple t{intern(triple.subject), intern(triple.predicate), intern(triple.object)};
    if (!present_.insert(t).second) return false;
    const auto index = static_cast<std::uint32_t>(triples_.size());
    triples_.push_back(t);
    by_s_[t.s].push_back(index);
    by_p_[t.p].push_back(index);
    by_o_[t.o].push_back(index);
    by_po_[po_key(t.p, t.o)].push_back(index);
    all_.push_back(index);
    return true;
}

std::optional<TripleStore::TermId> TripleStore::lookup(const Term& term) const {
    auto it = term_ids_.find(term);
    if (it == term_ids_.end()) return std::nullopt;
    return it->second;
}

bool TripleStore::contains(const Triple& triple) const {
    auto s = lookup(triple.subject), p = lookup(triple.predicate), o = lookup(triple.object);
    return s && p && o && present_.count(IdTriple{*s, *p, *o});
}

std::vector<Triple> TripleStore::sorted_triples() const {
    std::vector<Triple> out;
    out.reserve(triples_.size());
    for (const auto& t : triples_) out.push_back(decode(t));
    std::sort(out.begin(), out.end());
    return out;
}

std::span<const std::uint32_t> TripleStore::candidates(TermId s, TermId p, TermId o) const {
    const std::vector<std::uint32_t>* best = &all_;
    auto consider = [&](const std::vector<std::uint32_t>* list) {
        static const std::vector<std::uint32_t> none;
        if (!list) list = &none;
        if (list->size() < best->size()) best = list;
    };
    if (p != kNoTerm && o != kNoTerm) {
        auto it = by_po_.find(po_key(p, o));
        consider(it == by_po_.end() ? nullptr : &it->second);
    }
    if (s != kNoTerm) consider(find_list(by_s_, s));
    if (o != kNoTerm) consider(find_list(by_o_, o));
    if (p != kNoTerm) consider(find_list(by_p_, p));
    return {best->data(), best->size()};
}

std::size_t TripleStore::cardinality(TermId s, TermId p, TermId o) const { return candidates(s, p, o).size(); }

double TripleStore::average_fanout(int position) const {
    const auto& index = position == 0 ? by_s_ : position == 1 ? by_p_ : by_o_;
    return index.empty() ? 0.0 : static_cast<double>(triples_.size()) / static_cast<double>(index.size());
}

namespace {

using TermId = TripleStore::TermId;
constexpr TermId kUnbound = TripleStore::kNoTerm;
/// A constant that does not occur in the store: the pattern cannot match.
constexpr TermId kAbsent = TripleStore::kNoTerm - 1;

struct Slot {
    bool is_var = false;
    TermId constant = kUnbound;
    int var = -1;
};

struct CompiledPattern {
    Slot pos[3];
};

using Row = std::vector<TermId>;

class Compiler {
public:
    explicit Compiler(const TripleStore& store) : store_(store) {}

    CompiledPattern compile(const TriplePattern& pattern) {
        CompiledPattern c;
        const PatternTerm* parts[3] = {&pattern.subject, &pattern.predicate, &pattern.object};
        for (int i = 0; i < 3; ++i) {
            if (const auto* v = std::get_if<Variable>(parts[i])) {
                c.pos[i].is_var = true;
                c.pos[i].var = slot_of(v->name);
            } else {
                auto id = store_.lookup(std::get<Term>(*parts[i]));
                c.pos[i].constant = id ? *id : kAbsent;
            }
        }
        return c;
    }

    std::size_t width() const { return names_.size(); }

    BindingSet to_bindings(const Row& row) const {
        BindingSet out;
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (row[i] != kUnbound) out.emplace(names_[i], store_.term(row[i]));
        }
        return out;
    }

private:
    int slot_of(const std::string& name) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == name) return static_cast<int>(i);
        }
        names_.push_back(name);
        return static_cast<int>(names_.size() - 1);
    }

    const TripleStore& store_;
    std::vector<std::string> names_;
};

/// Greedy plan: patterns connected to already-bound variables first, then by
/// estimated cardinality, then by original position.
std::vector<std::size_t> plan(const TripleStore& store, const std::vector<CompiledPattern>& patterns,
                              std::vector<bool> bound) {
    std::vector<std::size_t> order;
    std::vector<bool> used(patterns.size(), false);
    for (std::size_t step = 0; step < patterns.size(); ++step) {
        std::size_t best = patterns.size();
        bool best_connected = false;
        double best_estimate = 0;
        const bool any_bound = std::find(bound.begin(), bound.end(), true) != bound.end();
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            if (used[i]) continue;
            const auto& pos = patterns[i].pos;
            TermId ids[3];
            bool connected = !any_bound;
            bool has_var = false;
            for (int k = 0; k < 3; ++k) {
                ids[k] = pos[k].is_var ? kUnbound : pos[k].constant;
                if (pos[k].is_var) {
                    has_var = true;
                    if (bound[static_cast<std::size_t>(pos[k].var)]) connected = true;
                }
            }
            if (!has_var) connected = true;
            double estimate;
            if (ids[0] == kAbsent || ids[1] == kAbsent || ids[2] == kAbsent) {
                estimate = 0;
            } else {
                estimate = static_cast<double>(store.cardinality(ids[0], ids[1], ids[2]));
                for (int k = 0; k < 3; ++k) {
                    if (pos[k].is_var && bound[static_cast<std::size_t>(pos[k].var)]) {
                        estimate = std::min(estimate, store.average_fanout(k));
                    }
                }
            }
            if (best == patterns.size() || (connected && !best_connected) ||
                (connected == best_connected && estimate < best_estimate)) {
                best = i;
                best_connected = connected;
                best_estimate = estimate;
            }
        }
        used[best] = true;
        order.push_back(best);
        for (const auto& slot : patterns[best].pos) {
            if (slot.is_var) bound[static_cast<std::size_t>(slot.var)] = true;
        }
    }
    return order;
}

class Evaluator {
public:
    Evaluator(const TripleStore& store, const std::vector<CompiledPattern>& patterns, std::vector<Row>& out)
        : store_(store), patterns_(patterns), out_(out) {}

    void run(Row seed) {
        std::vector<bool> bound(seed.size());
        for (std::size_t i = 0; i < seed.size(); ++i) bound[i] = seed[i] != kUnbound;
        auto it = plans_.find(bound);
        if (it == plans_.end()) it = plans_.emplace(bound, plan(store_, patterns_, bound)).first;
        order_ = &it->second;
        row_ = std::move(seed);
        step(0);
    }

private:
    void step(std::size_t depth) {
        if (depth == order_->size()) {
            out_.push_back(row_);
            return;
        }
        const CompiledPattern& pattern = patterns_[(*order_)[depth]];
        TermId want[3];
        for (int k = 0; k < 3; ++k) {
            const Slot& slot = pattern.pos[k];
            want[k] = slot.is_var ? row_[static_cast<std::size_t>(slot.var)] : slot.constant;
            if (want[k] == kAbsent) return;
        }
        const auto& triples = store_.id_triples();
        for (std::uint32_t index : store_.candidates(want[0], want[1], want[2])) {
            const auto& t = triples[index];
            const TermId got[3] = {t.s, t.p, t.o};
            if ((want[0] != kUnbound && got[0] != want[0]) || (want[1] != kUnbound && got[1] != want[1]) ||
                (want[2] != kUnbound && got[2] != want[2])) {
                continue;
            }
            int newly[3];
            int n_new = 0;
            bool ok = true;
            for (int k = 0; k < 3 && ok; ++k) {
                const Slot& slot = pattern.pos[k];
                if (!slot.is_var) continue;
                TermId& cell = row_[static_cast<std::size_t>(slot.var)];
                if (cell == kUnbound) {
                    cell = got[k];
                    newly[n_new++] = slot.var;
                } else if (cell != got[k]) {
                    ok = false;
                }
            }
            if (ok) step(depth + 1);
            for (int i = 0; i < n_new; ++i) row_[static_cast<std::size_t>(newly[i])] = kUnbound;
        }
    }

    const TripleStore& store_;
    const std::vector<CompiledPattern>& patterns_;
    std::vector<Row>& out_;
    std::map<std::vector<bool>, std::vector<std::size_t>> plans_;
    const std::vector<std::size_t>* order_ = nullptr;
    Row row_;
};

std::vector<CompiledPattern> compile_all(Compiler& compiler, std::span<const TriplePattern> patterns) {
    std::vector<CompiledPattern> out;
    out.reserve(patterns.size());
    for (const auto& p : patterns) out.push_back(compiler.compile(p));
    return out;
}

} // namespace

std::vector<BindingSet> match_pattern(const TripleStore& store, const TriplePattern& pattern) {
    return match_bgp(store, std::span<const TriplePattern>(&pattern, 1));
}

std::vector<BindingSet> match_bgp(const TripleStore& store, std::span<const TriplePattern> patterns) {
    Compiler compiler(store);
    const auto compiled = compile_all(compiler, patterns);
    std::vector<Row> rows;
    Evaluator(store, compiled, rows).run(Row(compiler.width(), kUnbound));
    std::vector<BindingSet> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(compiler.to_bindings(row));
    return out;
}

std::vector<BindingSet> match_optional(const TripleStore& store, std::span<const TriplePattern> required,
                                       std::span<const std::vector<TriplePattern>> optional_groups) {
    Compiler compiler(store);
    const auto compiled_required = compile_all(compiler, required);
    std::vector<std::vector<CompiledPattern>> compiled_groups;
    for (const auto& group : optional_groups) compiled_groups.push_back(compile_all(compiler, group));
    const std::size_t width = compiler.width();

    std::vector<Row> rows;
    Evaluator(store, compiled_required, rows).run(Row(width, kUnbound));

    for (const auto& group : compiled_groups) {
        std::vector<Row> next;
        Evaluator evaluator(store, group, next);
        for (auto& row : rows) {
            const std::size_t before = next.size();
            evaluator.run(row);
            if (next.size() == before) next.push_back(std::move(row));
        }
        rows = std::move(next);
    }

    std::vector<BindingSet> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(compiler.to_bindings(row));
    return out;
}

namespace {

enum class LiteralClass { DateTime, Numeric, Boolean, String, Other };

bool is_numeric_datatype(const std::string& dt) {
    static const std::string names[] = {"integer", "decimal", "double", "float", "long", "int", "short", "byte",
                                        "nonNegativeInteger", "nonPositiveInteger", "negativeInteger",
                                        "positiveInteger", "unsignedLong", "unsignedInt", "unsignedShort",
                                        "unsignedByte"};
    if (dt.rfind(rdf::vocab::kXsd, 0) != 0) return false;
    const std::string_view local = std::string_view(dt).substr(rdf::vocab::kXsd.size());
    return std::find(std::begin(names), std::end(names), local) != std::end(names);
}

LiteralClass classify(const Term& t) {
    if (t.kind() == Term::Kind::PlainLiteral) return LiteralClass::String;
    const auto& dt = t.datatype();
    if (dt == rdf::vocab::kXsdDateTime) return LiteralClass::DateTime;
    if (dt == rdf::vocab::kXsdString) return LiteralClass::String;
    if (dt == rdf::vocab::kXsdBoolean) return LiteralClass::Boolean;
    if (is_numeric_datatype(dt)) return LiteralClass::Numeric;
    return LiteralClass::Other;
}

[[noreturn]] void type_error(const Term& a, const Term& b) {
    throw TermTypeError("cannot compare " + a.to_string() + " with " + b.to_string());
}

std::optional<bool> parse_bool(const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    return std::nullopt;
}

} // namespace

std::partial_ordering compare_terms(const Term& a, const Term& b) {
    if (a.is_iri() || b.is_iri()) {
        if (!a.is_iri() || !b.is_iri()) type_error(a, b);
        return a.value() == b.value() ? std::partial_ordering::equivalent : std::partial_ordering::unordered;
    }
    const LiteralClass ca = classify(a);
    const LiteralClass cb = classify(b);
    if (ca != cb) type_error(a, b);
    switch (ca) {
    case LiteralClass::DateTime: {
        auto ta = Timestamp::parse(a.value());
        auto tb = Timestamp::parse(b.value());
        if (!ta || !tb) type_error(a, b);
        return *ta <=> *tb;
    }
    case LiteralClass::Numeric: {
        std::int64_t ia = 0, ib = 0;
        const auto& sa = a.value();
        const auto& sb = b.value();
        auto ra = std::from_chars(sa.data(), sa.data() + sa.size(), ia);
        auto rb = std::from_chars(sb.data(), sb.data() + sb.size(), ib);
        if (ra.ec == std::errc{} && ra.ptr == sa.data() + sa.size() && rb.ec == std::errc{} &&
            rb.ptr == sb.data() + sb.size()) {
            return ia <=> ib;
        }
        double da = 0, db = 0;
        auto fa = std::from_chars(sa.data(), sa.data() + sa.size(), da);
        auto fb = std::from_chars(sb.data(), sb.data() + sb.size(), db);
        if (fa.ec != std::errc{} || fa.ptr != sa.data() + sa.size() || fb.ec != std::errc{} ||
            fb.ptr != sb.data() + sb.size()) {
            type_error(a, b);
        }
        return da <=> db;
    }
    case LiteralClass::Boolean: {
        auto ba = parse_bool(a.value());
        auto bb = parse_bool(b.value());
        if (!ba || !bb) type_error(a, b);
        return *ba <=> *bb;
    }
    case LiteralClass::String:
        if (a.lang() != b.lang()) type_error(a, b);
        return a.value() <=> b.value();
    case LiteralClass::Other:
        if (a == b) return std::partial_ordering::equivalent;
        type_error(a, b);
    }
    type_error(a, b);
}

std::optional<std::partial_ordering> try_compare_terms(const Term& a, const Term& b) {
    try {
        return compare_terms(a, b);
    } catch (const TermTypeError&) {
        return std::nullopt;
    }
}

} // namespace ocedforge::query
