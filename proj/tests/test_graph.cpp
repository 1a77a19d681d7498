#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <vector>

#include "boardsim/graph.hpp"

using namespace boardsim;

TEST_SUITE("graph")
{
    TEST_CASE("adjacency is symmetric and sorted")
    {
        const std::vector<Edge> edges{{2, 0}, {0, 1}, {3, 2}};
        const FirmGraph g(4, edges);
        CHECK(g.node_count() == 4);
        CHECK(g.edge_count() == 3);
        CHECK(g.degree(0) == 2);
        CHECK(g.degree(2) == 2);
        CHECK(g.has_edge(0, 2));
        CHECK(g.has_edge(2, 0));
        CHECK_FALSE(g.has_edge(1, 3));
        const auto nb = g.neighbors(0);
        CHECK(std::vector<NodeId>(nb.begin(), nb.end()) == std::vector<NodeId>{1, 2});
        CHECK(g.edge_list() == std::vector<Edge>{{0, 1}, {0, 2}, {2, 3}});
        CHECK(g.mean_degree() == doctest::Approx(1.5));
        CHECK(g.min_degree() == 1);
    }

    TEST_CASE("malformed edge lists are rejected")
    {
        const std::vector<Edge> loop{{1, 1}};
        const std::vector<Edge> dup{{0, 1}, {1, 0}};
        const std::vector<Edge> range{{0, 4}};
        CHECK_THROWS_AS(FirmGraph(3, loop), std::invalid_argument);
        CHECK_THROWS_AS(FirmGraph(3, dup), std::invalid_argument);
        CHECK_THROWS_AS(FirmGraph(3, range), std::invalid_argument);
    }

    TEST_CASE("edge csv dump")
    {
        const std::vector<Edge> edges{{1, 0}, {1, 2}};
        std::ostringstream out;
        write_edge_csv(out, FirmGraph(3, edges));
        CHECK(out.str() == "src,dst\n0,1\n1,2\n");
    }
}
