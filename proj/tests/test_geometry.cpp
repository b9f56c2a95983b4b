#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "smallscat/errors.hpp"
#include "smallscat/geometry.hpp"
#include "smallscat/mesh.hpp"

using namespace smallscat;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::shared_ptr<const SurfaceMesh> sphere(int level) {
  return std::make_shared<SurfaceMesh>(make_sphere_mesh(level));
}
}  // namespace

TEST_CASE("icosphere combinatorics and area") {
  const SurfaceMesh level0 = make_sphere_mesh(0);
  CHECK(level0.panel_count() == 20);
  CHECK(level0.vertices().size() == 12);

  const SurfaceMesh level3 = make_sphere_mesh(3);
  CHECK(level3.panel_count() == 1280);

  // Unit diameter: area converges to 4*pi*(1/2)^2 = pi from below.
  const SurfaceMesh level4 = make_sphere_mesh(4);
  CHECK(level4.total_area() == doctest::Approx(kPi).epsilon(1e-3));
  CHECK(level4.total_area() < kPi);
  CHECK(level3.total_area() < level4.total_area());

  CHECK(level3.diameter() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(make_sphere_mesh(-1), ConfigError);
  CHECK_THROWS_AS(make_sphere_mesh(7), ConfigError);
}

TEST_CASE("mesh validation rejects broken inputs") {
  const SurfaceMesh good = make_sphere_mesh(1);

  SUBCASE("missing panel breaks closedness") {
    auto tris = good.triangles();
    tris.pop_back();
    CHECK_THROWS_AS(SurfaceMesh(good.vertices(), tris), ConfigError);
  }
  SUBCASE("flipped panel breaks consistent orientation") {
    auto tris = good.triangles();
    std::swap(tris[0][0], tris[0][1]);
    CHECK_THROWS_AS(SurfaceMesh(good.vertices(), tris), ConfigError);
  }
  SUBCASE("globally inverted mesh is not outward") {
    auto tris = good.triangles();
    for (auto& t : tris) std::swap(t[0], t[1]);
    CHECK_THROWS_AS(SurfaceMesh(good.vertices(), tris), ConfigError);
  }
  SUBCASE("index out of range") {
    auto tris = good.triangles();
    tris[0][0] = 9999;
    CHECK_THROWS_AS(SurfaceMesh(good.vertices(), tris), ConfigError);
  }
}

TEST_CASE("cube mesh: closed, outward, exact area") {
  const SurfaceMesh cube = make_cube_mesh(4);
  CHECK(cube.panel_count() == 12 * 16);
  CHECK(cube.total_area() == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(cube.diameter() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("mesh file round trip") {
  const SurfaceMesh mesh = make_sphere_mesh(2);
  const std::string path = "roundtrip_mesh.txt";
  save_mesh(mesh, path);
  const SurfaceMesh loaded = load_mesh(path);
  REQUIRE(loaded.vertices().size() == mesh.vertices().size());
  REQUIRE(loaded.triangles() == mesh.triangles());
  for (std::size_t i = 0; i < mesh.vertices().size(); ++i)
    CHECK((loaded.vertices()[i] - mesh.vertices()[i]).norm() == 0.0);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_mesh("no_such_mesh_file.txt"), ConfigError);
}

TEST_CASE("ritter bounding sphere contains the points and stays tight") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 60; ++i) pts.emplace_back(coord(rng), coord(rng), coord(rng));
    const BoundingSphere s = ritter_bounding_sphere(pts);
    double diam = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK((pts[i] - s.center).norm() <= s.radius * (1.0 + 1e-12));
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        diam = std::max(diam, (pts[i] - pts[j]).norm());
    }
    CHECK(s.radius >= 0.5 * diam * (1.0 - 1e-12));
    CHECK(s.radius <= 0.75 * diam);
  }
}

TEST_CASE("stats: single unit-diameter sphere") {
  Obstacle ob{Vec3::Zero(), sphere(3), 1.0};
  const GeometryStats stats = compute_stats({ob});
  CHECK(stats.count == 1);
  CHECK(stats.a == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::isinf(stats.d));
  CHECK(stats.diam_omega == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("stats: two unit spheres two apart") {
  auto shape = sphere(3);
  Obstacle a{Vec3(0, 0, 0), shape, 1.0};
  Obstacle b{Vec3(2, 0, 0), shape, 1.0};
  const GeometryStats stats = compute_stats({a, b});
  CHECK(stats.count == 2);
  // exact surface gap is 1; centroid distance underestimates by O(panel size)
  CHECK(stats.d == doctest::Approx(1.0).epsilon(0.05));
  CHECK(stats.diam_omega >= 3.0 * (1.0 - 1e-9));
  CHECK(stats.diam_omega <= 3.3);
}

TEST_CASE("stats: scaling by powers of two is exact") {
  auto shape = sphere(2);
  Obstacle a{Vec3(0, 0, 0), shape, 1.0};
  Obstacle b{Vec3(4, 0, 0), shape, 1.0};
  const GeometryStats base = compute_stats({a, b});
  for (double eps : {0.5, 0.25, 0.125}) {
    Obstacle sa{eps * a.center, shape, eps * a.scale};
    Obstacle sb{eps * b.center, shape, eps * b.scale};
    const GeometryStats scaled_stats = compute_stats({sa, sb});
    CHECK(scaled_stats.a == eps * base.a);
    CHECK(scaled_stats.d == eps * base.d);
  }
}

TEST_CASE("stats: overlapping obstacles are rejected") {
  auto shape = sphere(2);
  Obstacle a{Vec3(0, 0, 0), shape, 1.0};
  Obstacle b{Vec3(0.5, 0, 0), shape, 1.0};
  CHECK_THROWS_AS(compute_stats({a, b}), ConfigError);
  CHECK_THROWS_AS(compute_stats({}), ConfigError);
}

TEST_CASE("mesh refinement approaches the true diameter from below") {
  double prev = 0.0;
  for (int level = 0; level <= 3; ++level) {
    const double d = make_sphere_mesh(level).diameter();
    CHECK(d <= 1.0 + 1e-12);
    CHECK(d >= prev - 1e-12);
    prev = d;
  }
}
