#include "pdc/point_cloud.hpp"

#include "pdc/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

using namespace pdc;

namespace {

int count_role(const PointCloud& c, Role r) { return c.count(r); }

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("uniform grid without collar") {
  const PointCloud c = generate_uniform_grid(Vec2(-1, -1), Vec2(1, 1), 0.2, 0.0);
  CHECK(c.size() == 100);
  CHECK(count_role(c, Role::bulk) == 100);
  for (const auto& nd : c.nodes) CHECK(nd.V == doctest::Approx(0.04).epsilon(1e-14));
  CHECK(c.h_avg == 0.2);
  c.validate();
}

TEST_CASE("uniform grid collar nodes are dirichlet") {
  const PointCloud c = generate_uniform_grid(Vec2(-1, -1), Vec2(1, 1), 0.2, 0.5);
  CHECK(count_role(c, Role::bulk) == 100);
  for (const auto& nd : c.nodes) {
    const bool inside = nd.X.x() > -1.0 && nd.X.x() < 1.0 && nd.X.y() > -1.0 && nd.X.y() < 1.0;
    if (inside)
      CHECK(nd.role == Role::bulk);
    else
      CHECK(nd.role == Role::dirichlet);
    // collar rule: within 0.5 of the box
    CHECK(std::max({-1.0 - nd.X.x(), nd.X.x() - 1.0, -1.0 - nd.X.y(), nd.X.y() - 1.0}) <=
          0.5 + 1e-12);
  }
}

TEST_CASE("fine uniform grid bulk count by enumeration") {
  // oracle: count lattice cells of a (2/0.025)^2 grid
  int expect = 0;
  const int n = static_cast<int>(std::lround(2.0 / 0.025));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ++expect;
  CHECK(expect == 6400);
  const PointCloud c = generate_uniform_grid(Vec2(-1, -1), Vec2(1, 1), 0.025, 0.0);
  CHECK(count_role(c, Role::bulk) == expect);
}

TEST_CASE("uniform grid argument validation") {
  CHECK_THROWS_AS(generate_uniform_grid(Vec2(-1, -1), Vec2(1, 1), -0.1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(generate_uniform_grid(Vec2(-1, -1), Vec2(1, 1), 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(generate_uniform_grid(Vec2(1, 1), Vec2(-1, -1), 0.1, 0.0), InvalidArgument);
}

TEST_CASE("volume partition of generated grids") {
  const PointCloud c = generate_uniform_grid(Vec2(-1, -1), Vec2(1, 1), 0.1, 0.35);
  // rings = floor(3.5 + 0.5) = 4 -> covered square side 2 + 8*0.1
  const double side = 2.0 + 2.0 * 4 * 0.1;
  const double total = c.volume(Role::bulk) + c.volume(Role::dirichlet);
  CHECK(total == doctest::Approx(side * side).epsilon(1e-10));
}

TEST_CASE("perturbation is deterministic and zero-sigma is exact") {
  const PointCloud base = generate_uniform_grid(Vec2(-1, -1), Vec2(1, 1), 0.2, 0.5);
  const auto zero = perturb_then_refine(base, 0.0, 0, 99);
  REQUIRE(zero.size() == 1);
  REQUIRE(zero[0].size() == base.size());
  for (int i = 0; i < base.size(); ++i) {
    CHECK(zero[0].nodes[i].X == base.nodes[i].X);
    CHECK(zero[0].nodes[i].role == base.nodes[i].role);
  }

  const auto a = perturb_then_refine(base, 0.03, 2, 1234);
  const auto b = perturb_then_refine(base, 0.03, 2, 1234);
  for (std::size_t lvl = 0; lvl < a.size(); ++lvl)
    for (int i = 0; i < a[lvl].size(); ++i) CHECK(a[lvl].nodes[i].X == b[lvl].nodes[i].X);

  const auto c = perturb_then_refine(base, 0.03, 0, 4321);
  CHECK(c[0].nodes[5].X != a[0].nodes[5].X);  // different seed, different cloud

  CHECK_THROWS_AS(perturb_then_refine(base, 0.03, -1, 1), InvalidArgument);
  CHECK_THROWS_AS(perturb_then_refine(base, -0.2, 1, 1), InvalidArgument);
}

TEST_CASE("refinement nests parent positions and preserves volume") {
  const PointCloud base = generate_uniform_grid(Vec2(-1, -1), Vec2(1, 1), 0.2, 0.7);
  const auto levels = perturb_then_refine(base, 0.03, 3, 2024);
  REQUIRE(levels.size() == 4);

  const double total0 = levels[0].volume(Role::bulk) + levels[0].volume(Role::dirichlet);
  for (const auto& lvl : levels) {
    const double total = lvl.volume(Role::bulk) + lvl.volume(Role::dirichlet);
    CHECK(total == doctest::Approx(total0).epsilon(1e-12));
  }

  // spacing ladder ~ {0.2, 0.1, 0.05, 0.025}
  for (std::size_t k = 0; k < levels.size(); ++k)
    CHECK(levels[k].h_avg == doctest::Approx(0.2 / (1 << k)).epsilon(0.06));

  // every level-k node position set contains level-(k-1)'s
  for (std::size_t k = 1; k < levels.size(); ++k) {
    std::set<std::pair<double, double>> fine;
    for (const auto& nd : levels[k].nodes) fine.insert({nd.X.x(), nd.X.y()});
    int missing = 0;
    for (const auto& nd : levels[k - 1].nodes)
      if (!fine.count({nd.X.x(), nd.X.y()})) ++missing;
    CHECK(missing == 0);
  }

  // level 0 bulk nodes keep the base bulk count
  CHECK(levels[0].count(Role::bulk) == 100);
}

TEST_CASE("midpoint refinement puts new nodes on midpoints") {
  const PointCloud base = generate_uniform_grid(Vec2(-1, -1), Vec2(1, 1), 0.5, 0.0);
  const auto levels = perturb_then_refine(base, 0.05, 1, 5);
  const auto& l0 = levels[0];
  const auto& l1 = levels[1];
  // l0 is a 4x4 lattice; l1 a 7x7 one. Check an edge midpoint and a center.
  const auto at0 = [&](int i, int j) { return l0.nodes[j * 4 + i].X; };
  const auto at1 = [&](int i, int j) { return l1.nodes[j * 7 + i].X; };
  CHECK((at1(1, 0) - 0.5 * (at0(0, 0) + at0(1, 0))).norm() < 1e-15);
  CHECK((at1(1, 1) - 0.25 * (at0(0, 0) + at0(1, 0) + at0(0, 1) + at0(1, 1))).norm() < 1e-15);
  CHECK((at1(2, 2) - at0(1, 1)).norm() == 0.0);
}

TEST_CASE("polar grid covers the plate area") {
  const double a = 1.0, L = 4.0;
  const PointCloud c = generate_polar_grid(a, L, 20, 20, 0);
  const double area = L * L - std::numbers::pi * a * a / 4.0;
  CHECK(c.volume(Role::bulk) == doctest::Approx(area).epsilon(0.02));
  CHECK(count_role(c, Role::free_surface) == 0);
  CHECK(c.has_parametric());
}

TEST_CASE("polar grid parametric lattice and roles") {
  const PointCloud c = generate_polar_grid(1.0, 4.0, 20, 16, 3);
  // adjacent parametric spacing exactly 1
  const auto& n0 = c.nodes[0];
  const auto& n1 = c.nodes[1];
  CHECK((*n1.P - *n0.P).norm() == 1.0);

  int fs = 0;
  for (const auto& nd : c.nodes) {
    if (nd.P->x() < 0) {
      CHECK(nd.role == Role::free_surface);
      CHECK(nd.X.norm() < 1.0);  // inside the hole
      ++fs;
    } else if (nd.role == Role::bulk) {
      CHECK(nd.X.norm() > 1.0);
    }
  }
  CHECK(fs == 3 * 16);
  c.validate();

  CHECK_THROWS_AS(generate_polar_grid(4.0, 1.0, 10, 10, 0), InvalidArgument);
  CHECK_THROWS_AS(generate_polar_grid(1.0, 4.0, 1, 10, 0), InvalidArgument);
  // collar so deep it crosses the hole center
  CHECK_THROWS_AS(generate_polar_grid(1.0, 4.0, 12, 10, 3), InvalidArgument);
}

TEST_CASE("pointset csv round trip and import of a triangle mesh") {
  // triangulate the quarter plate coarsely: polar quads split into triangles
  const double a = 1.0, L = 3.0;
  const int nr = 6, nt = 8;
  const double half_pi = std::numbers::pi / 2.0;
  const auto R = [&](double th) { return th <= half_pi / 2 ? L / std::cos(th) : L / std::sin(th); };
  const auto vert = [&](int i, int j) {
    const double th = half_pi * j / nt;
    const double r = a + (R(th) - a) * i / nr;
    return Vec2(r * std::cos(th), r * std::sin(th));
  };
  PointCloud tri;
  double mesh_area = 0.0;
  int id = 0;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      const Vec2 v00 = vert(i, j), v10 = vert(i + 1, j), v11 = vert(i + 1, j + 1),
                 v01 = vert(i, j + 1);
      for (const auto& t : {std::array<Vec2, 3>{v00, v10, v11}, std::array<Vec2, 3>{v00, v11, v01}}) {
        const double area =
            0.5 * std::abs((t[1].x() - t[0].x()) * (t[2].y() - t[0].y()) -
                           (t[2].x() - t[0].x()) * (t[1].y() - t[0].y()));
        Node nd;
        nd.id = id++;
        nd.X = (t[0] + t[1] + t[2]) / 3.0;
        nd.V = area;
        nd.role = Role::bulk;
        tri.nodes.push_back(nd);
        mesh_area += area;
      }
    }
  tri.h_avg = std::sqrt(mesh_area / tri.size());

  const auto path = temp_file("pdc_tri.csv");
  save_pointcloud(tri, path);
  const PointCloud back = load_pointcloud(path);
  CHECK(back.size() == tri.size());
  CHECK(back.volume(Role::bulk) == doctest::Approx(mesh_area).epsilon(1e-10));
  CHECK(back.h_avg == doctest::Approx(tri.h_avg).epsilon(1e-12));
  for (int i = 0; i < tri.size(); ++i) CHECK((back.nodes[i].X - tri.nodes[i].X).norm() < 1e-15);
  std::filesystem::remove(path);
}

TEST_CASE("pointset csv error reporting") {
  const auto path = temp_file("pdc_bad.csv");

  {
    std::ofstream out(path);
    out << "id,x,y,volume,role\n0,0.0,0.0,1.0,bulk\n1,1.0,oops,1.0,bulk\n";
  }
  CHECK_THROWS_WITH_AS(static_cast<void>(load_pointcloud(path)),
                       doctest::Contains("line 3"), ParseError);

  {
    std::ofstream out(path);
    out << "id,x,y,volume,role\n0,0.0,0.0,1.0,bulk\n0,1.0,0.0,1.0,bulk\n";
  }
  CHECK_THROWS_AS(static_cast<void>(load_pointcloud(path)), ValidationError);

  {
    std::ofstream out(path);
    out << "id,x,y,volume,role\n0,0.0,0.0,-1.0,bulk\n";
  }
  CHECK_THROWS_AS(static_cast<void>(load_pointcloud(path)), ValidationError);

  {
    std::ofstream out(path);
    out << "id,x,y\n0,0.0,0.0\n";
  }
  CHECK_THROWS_AS(static_cast<void>(load_pointcloud(path)), ParseError);

  // minimal valid file
  {
    std::ofstream out(path);
    out << "id,x,y,volume,role\n0,0,0,0.5,bulk\n1,1,0,0.5,dirichlet\n2,0,1,0.5,free_surface\n";
  }
  const PointCloud c = load_pointcloud(path);
  CHECK(c.size() == 3);
  CHECK(c.nodes[2].role == Role::free_surface);
  std::filesystem::remove(path);
}
