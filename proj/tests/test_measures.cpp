#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "tnest/measures.hpp"
#include "tnest/oracle.hpp"
#include "tnest/random_graph.hpp"
#include "tnest/temporal_graph.hpp"

using namespace tnest;

TEST_CASE("persistence of one repeated undirected contact is one half") {
    const TemporalGraph g =
        TemporalGraph::from_contacts(2, {{0, 1, 1}, {0, 1, 2}}, false);
    // Both nodes persist perfectly across the single transition: the sum
    // of cosine similarities is 2, normalized by E = 4.
    CHECK(edge_persistence(g) == 0.5);
}

TEST_CASE("triangle densities on the two cycle toys") {
    const TemporalGraph same_slice =
        TemporalGraph::from_contacts(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}, true);
    CHECK(triangle_density(same_slice) == 1.0 / 3.0);
    CHECK(causal_triangle_density(same_slice) == 0.0);

    const TemporalGraph spread =
        TemporalGraph::from_contacts(3, {{0, 1, 1}, {1, 2, 2}, {2, 0, 3}}, true);
    CHECK(triangle_density(spread) == 1.0 / 9.0);
    CHECK(causal_triangle_density(spread) == 1.0 / 9.0);
}

TEST_CASE("undirected triangle in one slice counts once per triple") {
    const TemporalGraph g =
        TemporalGraph::from_contacts(3, {{0, 1, 5}, {1, 2, 5}, {0, 2, 5}}, false);
    CHECK(triangle_density(g) == 1.0 / 3.0);
    CHECK(causal_triangle_density(g) == 0.0);  // needs pairwise distinct times
}

TEST_CASE("burstiness pools raw timestamp gaps and uses population sigma") {
    const TemporalGraph g = TemporalGraph::from_contacts(
        2, {{0, 1, 1}, {0, 1, 3}, {0, 1, 7}}, false);
    // Gaps per node are {2,4}; pooled mean 3, population sigma 1.
    const double expect = (1.0 - 3.0) / (1.0 + 3.0);
    CHECK(burstiness(g, EventKind::Active) == expect);
    CHECK(burstiness(g, EventKind::Send) == expect);
    CHECK(burstiness(g, EventKind::Receive) == expect);

    const TemporalGraph single = TemporalGraph::from_contacts(2, {{0, 1, 1}}, true);
    CHECK_THROWS_AS(burstiness(single, EventKind::Active), std::domain_error);
    const MeasureReport rep = measure_all(single);
    CHECK(!rep.burstiness_active.has_value());
}

TEST_CASE("temporal katz on a single edge and its divergence guard") {
    const TemporalGraph edge = TemporalGraph::from_contacts(2, {{0, 1, 1}}, true);
    const std::vector<double> katz = temporal_katz(edge, 0.1);
    CHECK(katz[0] == doctest::Approx(1.1).epsilon(1e-14));
    CHECK(katz[1] == doctest::Approx(1.0).epsilon(1e-14));

    std::vector<Contact> star;
    for (NodeId v = 1; v <= 10; ++v) star.push_back({0, v, 1});
    const TemporalGraph hub = TemporalGraph::from_contacts(11, star, true);
    CHECK_THROWS_AS(temporal_katz(hub, 0.1), std::domain_error);  // alpha*deg = 1
    CHECK(temporal_katz(hub, 0.09).front() == doctest::Approx(1.9).epsilon(1e-12));
}

TEST_CASE("communicability of a single directed edge is exp(beta A) row sums") {
    const TemporalGraph edge = TemporalGraph::from_contacts(2, {{0, 1, 1}}, true);
    const std::vector<double> com = communicability(edge, 1.0);
    CHECK(com[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(com[1] == doctest::Approx(1.0).epsilon(1e-14));
    const std::vector<double> warm = communicability(edge, 2.0);
    CHECK(warm[0] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("sum absolute error applies its floor") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const std::vector<double> b{1.5, 2.0, 3.0};
    CHECK(sum_absolute_error(a, b) == 0.5);
    CHECK(sum_absolute_error(a, a) == 1e-16);
    CHECK(sum_absolute_error(a, a, 1e-9) == 1e-9);
}

TEST_CASE("scalar measures agree with dense oracles on random graphs") {
    for (std::uint64_t seed : {301, 302, 303, 304}) {
        const TemporalGraph g =
            random_temporal_graph(7, 4, 0.35, seed % 2 == 0, seed);
        CAPTURE(seed);
        CHECK(edge_persistence(g) ==
              doctest::Approx(oracle::naive_persistence(g)).epsilon(1e-12));
        const auto tri = oracle::naive_triangles(g);
        const double vt = 7.0 * static_cast<double>(g.time_count());
        CHECK(triangle_density(g) == doctest::Approx(tri.all / vt).epsilon(1e-12));
        CHECK(causal_triangle_density(g) ==
              doctest::Approx(tri.causal / vt).epsilon(1e-12));
        const auto katz = temporal_katz(g, 0.05);
        const auto block = oracle::block_katz(g, 0.05);
        for (std::size_t v = 0; v < katz.size(); ++v) {
            CHECK(katz[v] == doctest::Approx(block[v]).epsilon(1e-10));
        }
    }
}
