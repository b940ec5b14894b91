#include <gtest/gtest.h>

#include <sstream>

#include "ocedforge/error.hpp"
#include "ocedforge/turtle.hpp"

#include "generators.hpp"

using namespace ocedforge;
using rdf::Term;
using rdf::Triple;
namespace vocab = rdf::vocab;

namespace {

const std::string kHeader =
    "@prefix ocedo: <https://w3id.org/ocedo/core#> .\n"
    "@prefix ext: <https://w3id.org/ocedo/ext#> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
    "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
    "@prefix ex: <http://example.org/oced/> .\n";

const std::string kEx = "http://example.org/oced/";
const std::string kExtNs = "https://w3id.org/ocedo/ext#";

OcedGraph one_event_graph(bool qualified) {
    OcedGraph g;
    g.add_event({EntityId("e1"), "Accepted", *Timestamp::parse("2012-01-01T10:00:00.000+01:00"), {}});
    g.add_object({EntityId("case_1"), "case", {}});
    if (qualified) {
        g.relate_event_object(EntityId("e1"), EntityId("case_1"), std::string("event_case"));
    } else {
        g.relate_event_object(EntityId("e1"), EntityId("case_1"));
    }
    return g;
}

Triple t(const std::string& s, const std::string& p, Term o) { return {Term::iri(s), Term::iri(p), std::move(o)}; }

} // namespace

TEST(GraphToTriples, ObservedAtIsUtc) {
    auto store = turtle::graph_to_triples(one_event_graph(true));
    EXPECT_TRUE(store.frozen());
    EXPECT_TRUE(store.contains(t(kEx + "e1", std::string(vocab::kObservedAt),
                                 Term::typed("2012-01-01T09:00:00.000Z", std::string(vocab::kXsdDateTime)))));
}

TEST(GraphToTriples, DualEmissionOfQualifiedRelation) {
    auto store = turtle::graph_to_triples(one_event_graph(true));
    const std::string node = kEx + "eo_1";
    EXPECT_TRUE(store.contains(t(node, std::string(vocab::kRdfType), Term::iri(std::string(vocab::kEventObject)))));
    EXPECT_TRUE(store.contains(t(node, std::string(vocab::kEvent), Term::iri(kEx + "e1"))));
    EXPECT_TRUE(store.contains(t(node, std::string(vocab::kObject), Term::iri(kEx + "case_1"))));
    EXPECT_TRUE(store.contains(t(node, std::string(vocab::kClassifier), Term::plain("event_case"))));
    EXPECT_TRUE(store.contains(t(kEx + "e1", kExtNs + "event_case", Term::iri(kEx + "case_1"))));
}

TEST(GraphToTriples, HandEnumeratedOneEventGraph) {
    auto store = turtle::graph_to_triples(one_event_graph(false));
    // event: type, observed_at, event_type; object: type, object_type;
    // unqualified relation node: type, event, object
    EXPECT_EQ(store.size(), 8u);
    EXPECT_TRUE(store.contains(t(kEx + "e1", std::string(vocab::kRdfType), Term::iri(kExtNs + "EventType_Accepted"))));
    EXPECT_TRUE(store.contains(t(kEx + "case_1", std::string(vocab::kObjectType), Term::plain("case"))));
}

TEST(GraphToTriples, EmptyGraph) {
    auto store = turtle::graph_to_triples(OcedGraph{});
    EXPECT_EQ(store.size(), 0u);
    EXPECT_EQ(turtle::write_turtle(store), kHeader);
}

TEST(GraphToTriples, AttributesAreTyped) {
    OcedGraph g;
    g.add_event({EntityId("e1"), "X", Timestamp(0), {{"n", std::int64_t{4}}, {"f", 0.25}, {"b", false}, {"s", std::string("v")}}});
    auto store = turtle::graph_to_triples(g);
    EXPECT_TRUE(store.contains(t(kEx + "e1", kExtNs + "attr_n", Term::typed("4", std::string(vocab::kXsdInteger)))));
    EXPECT_TRUE(store.contains(t(kEx + "e1", kExtNs + "attr_f", Term::typed("0.25", std::string(vocab::kXsdDouble)))));
    EXPECT_TRUE(store.contains(t(kEx + "e1", kExtNs + "attr_b", Term::typed("false", std::string(vocab::kXsdBoolean)))));
    EXPECT_TRUE(store.contains(t(kEx + "e1", kExtNs + "attr_s", Term::plain("v"))));
}

TEST(GraphToTriples, CollidingIdsAndReservedQualifiers) {
    OcedGraph g;
    g.add_event({EntityId("x"), "X", Timestamp(0), {}});
    g.add_object({EntityId("x"), "case", {}});
    EXPECT_THROW(turtle::graph_to_triples(g), SerializationError);

    OcedGraph h;
    h.add_event({EntityId("e1"), "X", Timestamp(0), {}});
    h.add_object({EntityId("o1"), "case", {}});
    h.relate_event_object(EntityId("e1"), EntityId("o1"), std::string("object"));
    EXPECT_THROW(turtle::graph_to_triples(h), SerializationError);
}

TEST(WriteTurtle, SingleTripleLine) {
    query::TripleStore s;
    s.insert(t(kEx + "e1", std::string(vocab::kEvent), Term::iri(kEx + "o1")));
    EXPECT_EQ(turtle::write_turtle(s), kHeader + "\nex:e1 ext:event ex:o1 .\n");
}

TEST(WriteTurtle, EscapesAndFallbackIris) {
    query::TripleStore s;
    s.insert(t("http://other.org/a b", std::string(vocab::kEventType), Term::plain("q\"\\\n\r\t", "en")));
    s.insert(t(kEx + "-lead", std::string(vocab::kRdfType), Term::typed("1", "http://other.org/dt")));
    const std::string text = turtle::write_turtle(s);
    EXPECT_NE(text.find("<http://other.org/a\\u0020b> ext:event_type \"q\\\"\\\\\\n\\r\\t\"@en ."), std::string::npos)
        << text;
    EXPECT_NE(text.find("<http://example.org/oced/-lead> a \"1\"^^<http://other.org/dt> ."), std::string::npos)
        << text;
    auto back = turtle::parse_turtle(text);
    EXPECT_EQ(back.sorted_triples(), s.sorted_triples());
}

TEST(WriteTurtle, SortedAndDeterministic) {
    testsupport::Rng rng(11);
    auto g = testsupport::random_graph(rng);
    auto a = turtle::write_turtle(turtle::graph_to_triples(g));
    auto b = turtle::write_turtle(turtle::graph_to_triples(g));
    EXPECT_EQ(a, b);
    std::istringstream in(a);
    std::string line, prev;
    int n = 0;
    while (std::getline(in, line)) {
        if (++n <= 6) continue;
        EXPECT_EQ(line.substr(line.size() - 2), " .");
    }
}

TEST(ParseTurtle, AExpansion) {
    auto s = turtle::parse_turtle("@prefix ex: <http://example.org/oced/> .\n"
                                  "@prefix ext: <https://w3id.org/ocedo/ext#> .\nex:e1 a ext:EventObject .\n");
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.sorted_triples()[0].predicate, Term::iri(std::string(vocab::kRdfType)));
    EXPECT_TRUE(s.frozen());
}

TEST(ParseTurtle, BlankNodesAndCollectionsUnsupported) {
    const std::string pre = "@prefix ex: <http://example.org/> .\n";
    for (const std::string body : {"ex:a ex:p [ ex:q ex:b ] .", "ex:a ex:p ( ex:b ) .", "_:b ex:p ex:c .",
                                   "@base <http://x/> .", "ex:g { ex:a ex:p ex:b }", "<rel> ex:p ex:b ."}) {
        try {
            turtle::parse_turtle(pre + body);
            FAIL() << body;
        } catch (const StructuralError& e) {
            EXPECT_NE(std::string(e.what()).find("unsupported Turtle construct"), std::string::npos) << e.what();
        }
    }
}

TEST(ParseTurtle, SyntaxErrorsHaveLocation) {
    try {
        turtle::parse_turtle("@prefix ex: <http://example.org/> .\nex:a ex:p \"unterminated .\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(turtle::parse_turtle("nope:a nope:b nope:c ."), ParseError);
    EXPECT_THROW(turtle::parse_turtle("<http://a> <http://b> <http://c>"), ParseError);
}

TEST(ParseTurtle, GrammarSubset) {
    auto s = turtle::parse_turtle(R"(PREFIX ex: <http://example.org/>
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
# comment
ex:a ex:p 1, 2.5, -3e2, true ;
     ex:q """long
string""", 'single', "x"^^xsd:string, "ét\U0001F600"@fr-BE ;
.
)");
    using rdf::vocab::kXsdInteger;
    const std::string a = "http://example.org/a";
    EXPECT_TRUE(s.contains(t(a, "http://example.org/p", Term::typed("1", std::string(kXsdInteger)))));
    EXPECT_TRUE(s.contains(t(a, "http://example.org/p", Term::typed("2.5", std::string(vocab::kXsdDecimal)))));
    EXPECT_TRUE(s.contains(t(a, "http://example.org/p", Term::typed("-3e2", std::string(vocab::kXsdDouble)))));
    EXPECT_TRUE(s.contains(t(a, "http://example.org/p", Term::typed("true", std::string(vocab::kXsdBoolean)))));
    EXPECT_TRUE(s.contains(t(a, "http://example.org/q", Term::plain("long\nstring"))));
    EXPECT_TRUE(s.contains(t(a, "http://example.org/q", Term::plain("single"))));
    EXPECT_TRUE(s.contains(t(a, "http://example.org/q", Term::typed("x", std::string(vocab::kXsdString)))));
    EXPECT_TRUE(s.contains(t(a, "http://example.org/q", Term::plain("\xC3\xA9t\xF0\x9F\x98\x80", "fr-BE"))));
    EXPECT_EQ(s.size(), 8u);
}

TEST(RoundTrip, FixtureGraphs) {
    testsupport::Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        auto store = turtle::graph_to_triples(testsupport::random_graph(rng));
        auto back = turtle::parse_turtle(turtle::write_turtle(store));
        ASSERT_EQ(back.sorted_triples(), store.sorted_triples());
    }
}
