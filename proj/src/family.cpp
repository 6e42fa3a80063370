#include "pdc/family.hpp"

#include "pdc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace pdc {

namespace {

// uniform-bin fixed-radius search; exact closed-ball filter afterwards
struct BinGrid {
  double cell;
  Vec2 origin;
  int nx = 0, ny = 0;
  std::unordered_map<long long, std::vector<int>> bins;

  BinGrid(const std::vector<Vec2>& pts, double delta) : cell(delta) {
    Vec2 lo = pts.front(), hi = pts.front();
    for (const auto& p : pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    origin = lo;
    nx = static_cast<int>((hi.x() - lo.x()) / cell) + 1;
    ny = static_cast<int>((hi.y() - lo.y()) / cell) + 1;
    for (std::size_t k = 0; k < pts.size(); ++k) bins[key_of(pts[k])].push_back(static_cast<int>(k));
  }

  long long key(int ix, int iy) const { return static_cast<long long>(iy) * (nx + 2) + ix; }
  long long key_of(const Vec2& p) const {
    const int ix = static_cast<int>((p.x() - origin.x()) / cell);
    const int iy = static_cast<int>((p.y() - origin.y()) / cell);
    return key(ix, iy);
  }

  template <class F>
  void for_candidates(const Vec2& p, F&& f) const {
    const int ix = static_cast<int>((p.x() - origin.x()) / cell);
    const int iy = static_cast<int>((p.y() - origin.y()) / cell);
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        auto it = bins.find(key(ix + dx, iy + dy));
        if (it == bins.end()) continue;
        for (int k : it->second) f(k);
      }
  }
};

}  // namespace

Vec2 FamilyGraph::metric_bond(const PointCloud& cloud, int i, int j) const {
  if (space == FamilySpace::physical) return cloud.nodes[j].X - cloud.nodes[i].X;
  return *cloud.nodes[j].P - *cloud.nodes[i].P;
}

FamilyGraph build_families(const PointCloud& cloud, double delta, FamilySpace space) {
  if (!(delta > 0.0)) throw InvalidArgument("horizon must be positive");
  if (space == FamilySpace::parametric && !cloud.has_parametric())
    throw InvalidArgument("parametric families require parametric coordinates");
  cloud.validate();

  const int n = cloud.size();
  std::vector<Vec2> pts(n);
  for (int i = 0; i < n; ++i)
    pts[i] = space == FamilySpace::physical ? cloud.nodes[i].X : *cloud.nodes[i].P;

  FamilyGraph fam;
  fam.delta = delta;
  fam.space = space;
  fam.kinematic.resize(n);
  fam.force.resize(n);

  const BinGrid grid(pts, delta);
  const double d2 = delta * delta;
  for (int i = 0; i < n; ++i) {
    auto& force = fam.force[i];
    grid.for_candidates(pts[i], [&](int j) {
      if (j == i) return;
      if ((pts[j] - pts[i]).squaredNorm() <= d2) force.push_back(j);
    });
    std::sort(force.begin(), force.end());
    if (cloud.nodes[i].role == Role::free_surface) continue;
    auto& kin = fam.kinematic[i];
    kin.reserve(force.size());
    for (int j : force)
      if (cloud.nodes[j].role != Role::free_surface) kin.push_back(j);
  }
  return fam;
}

}  // namespace pdc
