#include <stdexcept>
#include <random>

#include "doctest.h"
#include "pccl/mesh_router.hpp"

using namespace pccl;

TEST_CASE("single pair routes along a Manhattan-shortest path") {
  MeshGraph g = make_mesh(8, 8);
  auto routes = route_all(g, {{0, 8 * 7 + 7, 0}});
  REQUIRE(routes.size() == 1);
  CHECK(routes[0].routed);
  CHECK(routes[0].path.size() == 15);  // 14 hops for (7,7) from (0,0)
  for (const auto& [key, c] : g.edge_counts) CHECK(c <= 1);
  CHECK(validate_routes(g, routes));
}

TEST_CASE("edge-disjoint corner pairs both route at shortest length") {
  MeshGraph g = make_mesh(8, 8);
  // Top edge left-to-right and bottom edge right-to-left.
  std::vector<RouteRequest> reqs = {{0, 7, 0}, {63, 56, 0}};
  auto routes = route_all(g, reqs);
  CHECK(routes[0].routed);
  CHECK(routes[1].routed);
  CHECK(routes[0].path.size() == 8);
  CHECK(routes[1].path.size() == 8);
  CHECK(validate_routes(g, routes));
}

TEST_CASE("width-1 cut admits one circuit per wavelength") {
  // A 5x1 path mesh: the second same-wavelength request cannot detour.
  MeshGraph g = make_mesh(5, 1);
  auto routes = route_all(g, {{0, 4, 0}, {1, 3, 0}});
  CHECK(routes[0].routed);
  CHECK_FALSE(routes[1].routed);
  CHECK(validate_routes(g, routes));

  // A different wavelength shares the waveguides freely.
  MeshGraph g2 = make_mesh(5, 1);
  auto routes2 = route_all(g2, {{0, 4, 0}, {1, 3, 1}});
  CHECK(routes2[0].routed);
  CHECK(routes2[1].routed);

  // With a second row, the blocked request detours instead.
  MeshGraph g3 = make_mesh(5, 2);
  auto routes3 = route_all(g3, {{0, 4, 0}, {1, 3, 0}});
  CHECK(routes3[0].routed);
  CHECK(routes3[1].routed);
  CHECK(routes3[1].path.size() > 3);  // forced off the direct row
  CHECK(validate_routes(g3, routes3));
}

TEST_CASE("validator rejects manual overlap") {
  MeshGraph g = make_mesh(4, 1);
  std::vector<RouteResult> routes(2);
  routes[0] = {{0, 3, 0}, {0, 1, 2, 3}, true};
  routes[1] = {{0, 3, 0}, {0, 1, 2, 3}, true};
  CHECK_FALSE(validate_routes(g, routes, 1));
  CHECK(validate_routes(g, routes, 2));
  // Disconnected walk.
  std::vector<RouteResult> broken = {{{0, 3, 0}, {0, 2, 3}, true}};
  CHECK_FALSE(validate_routes(g, broken, 1));
}

TEST_CASE("routing is deterministic") {
  std::mt19937 rng(21);
  std::vector<RouteRequest> reqs;
  for (int i = 0; i < 40; ++i)
    reqs.push_back({static_cast<int>(rng() % 256),
                    static_cast<int>(rng() % 256), 0});
  MeshGraph a = make_mesh(16, 16), b = make_mesh(16, 16);
  auto ra = route_all(a, reqs);
  auto rb = route_all(b, reqs);
  REQUIRE(ra.size() == rb.size());
  for (size_t i = 0; i < ra.size(); ++i) {
    CHECK(ra[i].routed == rb[i].routed);
    CHECK(ra[i].path == rb[i].path);
  }
}

TEST_CASE("parameter validation") {
  MeshGraph g = make_mesh(4, 4);
  CHECK_THROWS_AS(route_all(g, {{0, 99, 0}}), std::invalid_argument);
  std::vector<RouteRequest> ok = {{0, 1, 0}};
  CHECK_THROWS_AS(route_all(g, ok, 0), std::invalid_argument);
  CHECK_THROWS_AS(route_all(g, ok, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(route_all(g, ok, 1, 2.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_mesh(0, 3), std::invalid_argument);
}
