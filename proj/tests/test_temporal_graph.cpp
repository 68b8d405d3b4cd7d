#include "doctest.h"

#include <sstream>

#include "tnest/temporal_graph.hpp"

using namespace tnest;

TEST_CASE("parser handles comments, blanks, labels, and duplicates") {
    std::istringstream in(
        "# header comment\n"
        "alice bob 3\n"
        "\n"
        "bob carol 5 # trailing comment\n"
        "alice bob 5\n"
        "alice bob 3\n");
    const ParseResult res = parse_edge_list(in, true);
    const TemporalGraph& g = res.graph;
    CHECK(res.duplicate_contacts == 1);
    CHECK(g.node_count() == 3);
    CHECK(g.label(0) == "alice");
    CHECK(g.label(1) == "bob");
    CHECK(g.label(2) == "carol");
    CHECK(g.time_count() == 2);
    CHECK(g.timestamp(0) == 3);
    CHECK(g.timestamp(1) == 5);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_edge(0, 1, 0));
    CHECK(g.has_edge(1, 2, 1));
    CHECK(!g.has_edge(1, 0, 0));
}

TEST_CASE("parser rejects malformed lines with a line number") {
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return parse_edge_list(in, true);
    };
    CHECK_THROWS_WITH_AS(parse("a a 1\n"), "line 1: self-loop", std::runtime_error);
    CHECK_THROWS_WITH_AS(parse("a b 1\nc d\n"), "line 2: expected 'u v t'",
                         std::runtime_error);
    CHECK_THROWS_AS(parse("a b one\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("a b 1 extra\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("# only comments\n"), std::runtime_error);
}

TEST_CASE("undirected parsing stores both directions") {
    std::istringstream in("a b 1\n");
    const TemporalGraph g = parse_edge_list(in, false).graph;
    CHECK(g.edge_count() == 2);
    CHECK(!g.directed());
    CHECK(g.has_edge(0, 1, 0));
    CHECK(g.has_edge(1, 0, 0));
}

TEST_CASE("timestamps are sorted and slices are never empty") {
    const TemporalGraph g = TemporalGraph::from_contacts(
        3, {{0, 1, 50}, {1, 2, -7}, {0, 2, 50}}, true);
    REQUIRE(g.time_count() == 2);
    CHECK(g.timestamp(0) == -7);
    CHECK(g.timestamp(1) == 50);
    CHECK(g.slice(0).edges.size() == 1);
    CHECK(g.slice(1).edges.size() == 2);
}

TEST_CASE("successors are nested and sorted by time then node") {
    // e sends to d and c at times 1 and later; successors at an early
    // time must contain every later successor set.
    std::istringstream in(
        "e d 1\n"
        "e c 1\n"
        "a b 1\n"
        "e d 2\n"
        "a f 2\n"
        "e c 3\n");
    const TemporalGraph g = parse_edge_list(in, true).graph;
    const NodeId e = 0, d = 1, c = 2, a = 3;
    const auto s0 = g.successors(e, 0);
    REQUIRE(s0.size() == 4);
    CHECK(s0[0] == TemporalNode{d, 0});
    CHECK(s0[1] == TemporalNode{c, 0});
    CHECK(s0[2] == TemporalNode{d, 1});
    CHECK(s0[3] == TemporalNode{c, 2});
    const auto s1 = g.successors(e, 1);
    REQUIRE(s1.size() == 2);
    CHECK(s1[0] == TemporalNode{d, 1});
    CHECK(s1[1] == TemporalNode{c, 2});
    CHECK(g.successors(a, 2).empty());
    CHECK_THROWS_AS(g.successors(e, 99), std::invalid_argument);

    const TemporalGraph::SliceNodeSets sets = g.classify_nodes(0);
    CHECK(sets.sending == std::vector<NodeId>{e, a});
    CHECK(sets.active == std::vector<NodeId>{e, d, c, a, 4});

    CHECK(g.aggregated().multiplicity(e, d) == 2);
    CHECK(g.aggregated().multiplicity(e, c) == 2);
    CHECK(g.aggregated().multiplicity(d, e) == 0);
}

TEST_CASE("causal completion mirrors successor queries") {
    const TemporalGraph g = TemporalGraph::from_contacts(
        4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {0, 2, 3}}, true);
    const CausalCompletion cc = g.causal_completion();
    CHECK(cc.order() == 4 * 3);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (TimeIndex t = 0; t < g.time_count(); ++t) {
            std::vector<std::uint32_t> expect;
            for (const TemporalNode& s : g.successors(v, t)) {
                expect.push_back(cc.id(s.node, s.time));
            }
            CHECK(cc.out[cc.id(v, t)] == expect);
        }
    }
    CHECK_THROWS_AS(g.causal_completion(5), std::length_error);
}

TEST_CASE("assemble drops empty slices together with their timestamps") {
    const TemporalGraph like = TemporalGraph::from_contacts(
        3, {{0, 1, 10}, {1, 2, 20}}, true);
    const TemporalGraph g = TemporalGraph::assemble(
        like, {10, 20, 30}, {{{0, 1}}, {}, {{2, 0}}});
    REQUIRE(g.time_count() == 2);
    CHECK(g.timestamp(0) == 10);
    CHECK(g.timestamp(1) == 30);
    CHECK(g.has_edge(2, 0, 1));
}

TEST_CASE("serialization round-trips and collapse halves undirected output") {
    std::istringstream in("a b 2\nb c 1\n");
    const TemporalGraph g = parse_edge_list(in, false).graph;
    std::ostringstream full, collapsed;
    write_edge_list(full, g);
    write_edge_list(collapsed, g, true);
    CHECK(full.str() == "b c 1\nc b 1\na b 2\nb a 2\n");
    CHECK(collapsed.str() == "b c 1\na b 2\n");

    std::istringstream back(collapsed.str());
    CHECK(parse_edge_list(back, false).graph.equivalent(g));
}

TEST_CASE("equivalence compares labeled contacts, not id layout") {
    auto parse = [](const char* text, bool directed) {
        std::istringstream in(text);
        return parse_edge_list(in, directed).graph;
    };
    CHECK(parse("a b 1\nc d 2\n", true).equivalent(parse("c d 2\na b 1\n", true)));
    CHECK(!parse("a b 1\n", true).equivalent(parse("b a 1\n", true)));
    CHECK(parse("a b 1\n", false).equivalent(parse("b a 1\n", false)));
    CHECK(!parse("a b 1\n", true).equivalent(parse("a b 2\n", true)));
    CHECK(!parse("a b 1\n", true).equivalent(parse("a b 1\n", false)));
}
