#include <doctest.h>

#include <random>
#include <sstream>

#include "generators.hpp"
#include "topicnet/error.hpp"
#include "topicnet/network_io.hpp"

using namespace topicnet;

namespace {

TopicNetwork small() {
    std::vector<NetworkNode> nodes{{TreeCode::parse("C01.100"), "Alpha, the first", 5},
                                   {TreeCode::parse("C04.588"), "Beta & <Gamma>", 3},
                                   {TreeCode::parse("C10.228"), "Delta", 2}};
    return {nodes, {{0, 1, 0.08}, {1, 2, 0.0799999}, {0, 2, 1.0 / 3.0}}, {"I", 1999, 7}};
}

}  // namespace

TEST_CASE("network validation") {
    std::vector<NetworkNode> nodes{{TreeCode::parse("C01.100"), "a", 1}, {TreeCode::parse("C04.588"), "b", 1}};
    CHECK_THROWS_AS(TopicNetwork(nodes, {{0, 0, 0.5}}), DataError);
    CHECK_THROWS_AS(TopicNetwork(nodes, {{0, 1, 0.0}}), DataError);
    CHECK_THROWS_AS(TopicNetwork(nodes, {{0, 1, 1.5}}), DataError);
    CHECK_THROWS_AS(TopicNetwork(nodes, {{0, 1, 0.5}, {1, 0, 0.5}}), DataError);
    CHECK_THROWS_AS(TopicNetwork({nodes[1], nodes[0]}, {}), DataError);
    const TopicNetwork swapped(nodes, {{1, 0, 0.5}});
    CHECK(swapped.edges()[0].u == 0);
    CHECK(swapped.weight(1, 0) == 0.5);
}

TEST_CASE("threshold is inclusive") {
    const auto net = small();
    const auto kept = net.threshold(0.080);
    CHECK(kept.edge_count() == 2);
    CHECK(kept.node_count() == 3);
    CHECK(kept.weight(1, 2) == 0.0);
    std::ostringstream csv;
    write_edge_csv(csv, net, 0.080);
    CHECK(csv.str() == "source,target,weight\nC01.100,C04.588,0.080000000000000002\nC01.100,C10.228,0.33333333333333331\n");
}

TEST_CASE("CSV round-trips bit-exactly") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto net = gen::random_network(rng, 15, 0.4);
        std::ostringstream e, n;
        write_edge_csv(e, net);
        write_node_csv(n, net);
        std::istringstream ei(e.str()), ni(n.str());
        const auto back = read_network_csv(ei, ni, net.provenance());
        CHECK(back == net);
    }
    const auto net = small();
    std::ostringstream e, n;
    write_edge_csv(e, net);
    write_node_csv(n, net);
    std::istringstream ei(e.str()), ni(n.str());
    CHECK(read_network_csv(ei, ni, net.provenance()) == net);
}

TEST_CASE("GraphML round-trips") {
    const auto net = small();
    std::ostringstream out;
    write_graphml(out, net);
    std::istringstream in(out.str());
    const auto back = read_graphml(in);
    CHECK(back.nodes() == net.nodes());
    CHECK(back.edges() == net.edges());
    CHECK(back.provenance().label == "I");
}

TEST_CASE("CSV errors carry line numbers") {
    std::istringstream edges("source,target,weight\nC01.100,C04.588,abc\n");
    std::istringstream nodes("code,label,c_ii\nC01.100,a,1\nC04.588,b,1\n");
    try {
        read_network_csv(edges, nodes);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::istringstream dangling("source,target,weight\nC01.100,C99.999,0.5\n");
    std::istringstream nodes2("code,label,c_ii\nC01.100,a,1\n");
    CHECK_THROWS_AS(read_network_csv(dangling, nodes2), DataError);
}

TEST_CASE("induced subnetwork keeps only listed nodes") {
    const auto net = small();
    const auto sub = net.induced({TreeCode::parse("C01.100"), TreeCode::parse("C10.228")});
    CHECK(sub.node_count() == 2);
    CHECK(sub.edge_count() == 1);
    CHECK(sub.weight(0, 1) == 1.0 / 3.0);
}
