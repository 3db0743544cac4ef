#include <gtest/gtest.h>

#include <random>

#include "routecog/error.hpp"
#include "routecog/routing.hpp"
#include "test_support.hpp"

namespace routecog {
namespace {

using testing::build_graph;
using testing::GraphSpec;

std::vector<std::vector<std::string>> ids(const Network& net, const std::vector<Route>& routes) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : routes) out.push_back(route_edge_ids(net, r));
  return out;
}

TEST(KShortest, SinglePathGraph) {
  const Network net = build_graph({{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {"a", "c"}});
  const std::vector<double> costs(net.edges().size(), 1.0);
  const auto routes = k_shortest_routes(net, {0, 1, 5, costs});
  ASSERT_EQ(routes.size(), 1u);
  EXPECT_EQ(route_edge_ids(net, routes[0]),
            (std::vector<std::string>{"eCa-a", "ea-b", "eb-c", "ec-Cc"}));
  EXPECT_EQ(brute_force_routes(net, 0, 1).size(), 1u);
}

TEST(KShortest, DiamondInCostOrder) {
  const Network net =
      build_graph({{"s", "l", "r", "t"}, {{"s", "l"}, {"l", "t"}, {"s", "r"}, {"r", "t"}}, {"s", "t"}});
  std::vector<double> costs(net.edges().size(), 0.0);
  costs[*net.find_edge("es-l")] = 5;
  costs[*net.find_edge("el-t")] = 7;
  costs[*net.find_edge("es-r")] = 5;
  costs[*net.find_edge("er-t")] = 5;
  const auto routes = k_shortest_routes(net, {0, 1, 2, costs});
  ASSERT_EQ(routes.size(), 2u);
  EXPECT_EQ(route_general_cost(net, routes[0], costs), 10.0);
  EXPECT_EQ(route_general_cost(net, routes[1], costs), 12.0);
  EXPECT_EQ(brute_force_routes(net, 0, 1).size(), 2u);
}

TEST(KShortest, TiesBreakByEdgeIds) {
  const Network net =
      build_graph({{"s", "b", "a", "t"}, {{"s", "b"}, {"b", "t"}, {"s", "a"}, {"a", "t"}}, {"s", "t"}});
  const std::vector<double> costs(net.edges().size(), 1.0);
  const auto routes = k_shortest_routes(net, {0, 1, 2, costs});
  EXPECT_EQ(ids(net, routes),
            (std::vector<std::vector<std::string>>{{"eCs-s", "es-a", "ea-t", "et-Ct"},
                                                   {"eCs-s", "es-b", "eb-t", "et-Ct"}}));
}

TEST(KShortest, Errors) {
  const Network net = build_graph({{"a", "b", "c"}, {{"a", "b"}}, {"a", "c"}});
  const std::vector<double> costs(net.edges().size(), 1.0);
  try {
    k_shortest_routes(net, {0, 1, 3, costs});
    FAIL();
  } catch (const RoutingError& e) {
    EXPECT_STREQ(e.what(), "no route from Za to Zc");
  }
  EXPECT_THROW(k_shortest_routes(net, {0, 0, 3, costs}), RoutingError);
  EXPECT_THROW(k_shortest_routes(net, {0, 1, 0, costs}), RoutingError);
  std::vector<double> negative(net.edges().size(), -1.0);
  EXPECT_THROW(k_shortest_routes(net, {0, 1, 3, negative}), RoutingError);
  EXPECT_THROW(k_shortest_routes(net, {0, 1, 3, std::span(costs).first(1)}), RoutingError);
}

TEST(KShortest, AgreesWithEnumerationOnRandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_graph(rng);
    const auto expected = testing::cheapest_by_enumeration(g.network, g.costs, 0, 1, 4);
    if (expected.empty()) {
      EXPECT_THROW(k_shortest_routes(g.network, {0, 1, 4, g.costs}), RoutingError);
      continue;
    }
    const auto got = k_shortest_routes(g.network, {0, 1, 4, g.costs});
    ASSERT_EQ(ids(g.network, got), ids(g.network, expected)) << "trial " << trial;
  }
}

TEST(KShortest, PrefixStableInK) {
  const Network& net = fixture_network();
  std::vector<double> costs;
  for (EdgeIndex e = 0; e < net.edges().size(); ++e) costs.push_back(net.edge_length(e));
  const auto eight = k_shortest_routes(net, {2, 9, 8, costs});
  for (std::size_t k = 1; k <= 8; ++k) {
    const auto fewer = k_shortest_routes(net, {2, 9, k, costs});
    ASSERT_EQ(fewer.size(), k);
    EXPECT_TRUE(std::equal(fewer.begin(), fewer.end(), eight.begin()));
  }
  for (std::size_t i = 0; i + 1 < eight.size(); ++i) {
    EXPECT_TRUE(route_order_less(net, costs, eight[i], eight[i + 1]));
    EXPECT_TRUE(validate_route(net, eight[i]).empty());
  }
}

TEST(BruteForce, GuardAborts) {
  EXPECT_THROW(brute_force_routes(fixture_network(), 0, 6, 1000), EnumerationLimitError);
}

}  // namespace
}  // namespace routecog
