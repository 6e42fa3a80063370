#pragma once

#include "pdc/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pdc {

enum class Role { bulk, dirichlet, free_surface };

const char* to_string(Role r);
Role role_from_string(std::string_view s);

struct Node {
  int id = -1;
  Vec2 X = Vec2::Zero();   // reference position
  double V = 0.0;          // nodal volume (area in 2D)
  Role role = Role::bulk;
  std::optional<Vec2> P;   // parametric position, when built with one
};

/// Logical-lattice bookkeeping kept on generated square grids so that
/// midpoint refinement can carry perturbations through the lattice map.
struct GridInfo {
  Vec2 lo = Vec2::Zero();  // physical box the bulk nodes tile
  Vec2 hi = Vec2::Zero();
  double h = 0.0;          // cell size at this level
  int rings = 0;           // dirichlet rings outside the box
  int nx = 0, ny = 0;      // interior cell counts
  int level = 0;           // refinement level (0 = base)
};

struct PointCloud {
  static constexpr int dim = 2;

  std::vector<Node> nodes;
  double h_avg = 0.0;
  std::string domain_tag;
  std::optional<GridInfo> grid;

  int size() const { return static_cast<int>(nodes.size()); }
  bool has_parametric() const;
  int count(Role r) const;
  double volume(Role r) const;
  void validate() const;  // ids dense, volumes positive, parametric all-or-none
};

/// Cell-centered grid covering [lo,hi] with spacing h; lattice continued
/// outward, nodes within `collar` outside the box become dirichlet.
PointCloud generate_uniform_grid(const Vec2& lo, const Vec2& hi, double h, double collar);

/// Level 0: base positions plus i.i.d. normal perturbation (std dev sigma).
/// Levels k>0: midpoint refinement of the level-(k-1) node lattice (edge
/// midpoints and cell centers of the perturbed lattice), so each level
/// contains the previous level's positions. Per-level volumes are uniform
/// with the total preserved. Returns levels+1 clouds.
std::vector<PointCloud> perturb_then_refine(const PointCloud& base, double sigma, int levels,
                                            std::uint64_t seed);

/// Quarter plate of side L with a quarter hole of radius a, discretized by
/// quadrilateral cells laid out along polar coordinates (one node per cell
/// centroid, V = cell area). Parametric coordinates are the (i,j) cell
/// indices, giving unit spacing between adjacent nodes. The outer
/// `collar_cells` rings (radial and angular) are dirichlet; the hole is
/// filled with `collar_cells` rings of fictitious free-surface nodes that
/// continue the host pattern inward.
PointCloud generate_polar_grid(double a, double L, int n_r, int n_theta, int collar_cells);

/// CSV schema: header `id,x,y,volume,role[,px,py]`,
/// role in {bulk,dirichlet,free_surface}.
PointCloud load_pointcloud(const std::filesystem::path& path);
void save_pointcloud(const PointCloud& cloud, const std::filesystem::path& path);

}  // namespace pdc
