#include "pdc/point_cloud.hpp"

#include "pdc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace pdc {

const char* to_string(Role r) {
  switch (r) {
    case Role::bulk: return "bulk";
    case Role::dirichlet: return "dirichlet";
    case Role::free_surface: return "free_surface";
  }
  return "?";
}

Role role_from_string(std::string_view s) {
  if (s == "bulk") return Role::bulk;
  if (s == "dirichlet") return Role::dirichlet;
  if (s == "free_surface") return Role::free_surface;
  throw InvalidArgument("unknown role: " + std::string(s));
}

bool PointCloud::has_parametric() const {
  return !nodes.empty() && nodes.front().P.has_value();
}

int PointCloud::count(Role r) const {
  int n = 0;
  for (const auto& nd : nodes) n += (nd.role == r);
  return n;
}

double PointCloud::volume(Role r) const {
  double v = 0.0;
  for (const auto& nd : nodes) v += (nd.role == r) ? nd.V : 0.0;
  return v;
}

void PointCloud::validate() const {
  const bool parametric = has_parametric();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& nd = nodes[i];
    if (nd.id != static_cast<int>(i))
      throw ValidationError("node ids must be dense 0..N-1 (node " + std::to_string(nd.id) +
                            " at position " + std::to_string(i) + ")");
    if (!(nd.V > 0.0))
      throw ValidationError("node " + std::to_string(nd.id) + ": volume must be positive");
    if (nd.P.has_value() != parametric)
      throw ValidationError("node " + std::to_string(nd.id) +
                            ": parametric coordinates must be present on all nodes or none");
  }
}

PointCloud generate_uniform_grid(const Vec2& lo, const Vec2& hi, double h, double collar) {
  if (!(h > 0.0)) throw InvalidArgument("grid spacing must be positive");
  if (collar < 0.0) throw InvalidArgument("collar must be non-negative");
  if (!(hi.x() > lo.x()) || !(hi.y() > lo.y()))
    throw InvalidArgument("box must satisfy hi > lo componentwise");

  const auto cells = [&](double len) {
    const double q = len / h;
    const int n = static_cast<int>(std::lround(q));
    if (n < 1 || std::abs(q - n) > 1e-9 * std::max(1.0, q))
      throw InvalidArgument("box extent must be an integer multiple of h");
    return n;
  };
  const int nx = cells(hi.x() - lo.x());
  const int ny = cells(hi.y() - lo.y());

  // outside node centers sit at depth (j - 1/2) h for ring j
  const int rings = static_cast<int>(std::floor(collar / h + 0.5 + 1e-9));

  PointCloud cloud;
  cloud.nodes.reserve(static_cast<std::size_t>(nx + 2 * rings) * (ny + 2 * rings));
  int id = 0;
  for (int j = -rings; j < ny + rings; ++j) {
    for (int i = -rings; i < nx + rings; ++i) {
      Node nd;
      nd.id = id++;
      nd.X = lo + Vec2((i + 0.5) * h, (j + 0.5) * h);
      nd.V = h * h;
      const bool inside = i >= 0 && i < nx && j >= 0 && j < ny;
      nd.role = inside ? Role::bulk : Role::dirichlet;
      cloud.nodes.push_back(nd);
    }
  }
  cloud.h_avg = h;
  cloud.grid = GridInfo{lo, hi, h, rings, nx, ny, 0};
  char tag[128];
  std::snprintf(tag, sizeof tag, "uniform[%g,%g]x[%g,%g]@h=%g", lo.x(), hi.x(), lo.y(), hi.y(), h);
  cloud.domain_tag = tag;
  return cloud;
}

std::vector<PointCloud> perturb_then_refine(const PointCloud& base, double sigma, int levels,
                                            std::uint64_t seed) {
  if (!base.grid || base.grid->level != 0)
    throw InvalidArgument("perturb_then_refine requires a base-level uniform grid");
  if (sigma < 0.0) throw InvalidArgument("sigma must be non-negative");
  if (levels < 0) throw InvalidArgument("levels must be non-negative");

  const GridInfo& gi = *base.grid;
  const int Mx = gi.nx + 2 * gi.rings;  // node-lattice extents
  const int My = gi.ny + 2 * gi.rings;
  if (base.size() != Mx * My) throw InvalidArgument("base cloud does not match its lattice");

  // perturbed positions on the base node lattice, in node id (row-major) order
  std::vector<Vec2> p0(base.nodes.size());
  {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma > 0.0 ? sigma : 1.0);
    for (std::size_t k = 0; k < base.nodes.size(); ++k) {
      Vec2 eta = Vec2::Zero();
      if (sigma > 0.0) {
        eta.x() = gauss(rng);
        eta.y() = gauss(rng);
      }
      p0[k] = base.nodes[k].X + eta;
    }
  }
  const auto base_at = [&](int i, int j) { return p0[static_cast<std::size_t>(j) * Mx + i]; };

  const double total_volume = static_cast<double>(Mx) * My * gi.h * gi.h;

  std::vector<PointCloud> out;
  out.reserve(static_cast<std::size_t>(levels) + 1);
  for (int level = 0; level <= levels; ++level) {
    const int scale = 1 << level;
    const int Lx = (Mx - 1) * scale + 1;
    const int Ly = (My - 1) * scale + 1;
    PointCloud cloud;
    cloud.nodes.reserve(static_cast<std::size_t>(Lx) * Ly);
    const double inv = 1.0 / scale;
    int id = 0;
    for (int q = 0; q < Ly; ++q) {
      for (int p = 0; p < Lx; ++p) {
        // dyadic logical coordinates on the base node lattice
        const double s = p * inv;
        const double t = q * inv;
        const int i0 = std::min(static_cast<int>(s), Mx - 2);
        const int j0 = std::min(static_cast<int>(t), My - 2);
        const double fx = s - i0;
        const double fy = t - j0;
        const Vec2 pos = (1 - fx) * (1 - fy) * base_at(i0, j0) +
                         fx * (1 - fy) * base_at(i0 + 1, j0) +
                         (1 - fx) * fy * base_at(i0, j0 + 1) + fx * fy * base_at(i0 + 1, j0 + 1);
        // role from the unperturbed image of the logical point
        const Vec2 flat = gi.lo + Vec2((s - gi.rings + 0.5) * gi.h, (t - gi.rings + 0.5) * gi.h);
        const double tol = 1e-12 * gi.h;
        const bool inside = flat.x() >= gi.lo.x() - tol && flat.x() <= gi.hi.x() + tol &&
                            flat.y() >= gi.lo.y() - tol && flat.y() <= gi.hi.y() + tol;
        Node nd;
        nd.id = id++;
        nd.X = pos;
        nd.role = inside ? Role::bulk : Role::dirichlet;
        cloud.nodes.push_back(nd);
      }
    }
    const double v = total_volume / cloud.size();
    for (auto& nd : cloud.nodes) nd.V = v;
    cloud.h_avg = std::sqrt(v);
    char tag[160];
    std::snprintf(tag, sizeof tag, "%s|perturbed(sigma=%g,seed=%llu)L%d", base.domain_tag.c_str(),
                  sigma, static_cast<unsigned long long>(seed), level);
    cloud.domain_tag = tag;
    out.push_back(std::move(cloud));
  }
  return out;
}

namespace {

struct Quad {
  Vec2 v[4];  // counter-clockwise
  double area() const {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
      const Vec2& p = v[k];
      const Vec2& q = v[(k + 1) % 4];
      s += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * s;
  }
  Vec2 centroid() const {
    double s = 0.0;
    Vec2 c = Vec2::Zero();
    for (int k = 0; k < 4; ++k) {
      const Vec2& p = v[k];
      const Vec2& q = v[(k + 1) % 4];
      const double w = p.x() * q.y() - q.x() * p.y();
      s += w;
      c += w * (p + q);
    }
    return c / (3.0 * s);
  }
};

}  // namespace

PointCloud generate_polar_grid(double a, double L, int n_r, int n_theta, int collar_cells) {
  if (!(a > 0.0) || a >= L) throw InvalidArgument("polar grid requires L > a > 0");
  if (n_r < 2 || n_theta < 2) throw InvalidArgument("polar grid requires n_r, n_theta >= 2");
  if (collar_cells < 0) throw InvalidArgument("collar_cells must be non-negative");

  const double half_pi = std::numbers::pi / 2.0;
  const auto outer_radius = [&](double theta) {
    return theta <= half_pi / 2.0 ? L / std::cos(theta) : L / std::sin(theta);
  };
  const auto vertex = [&](int i, int j) {
    const double theta = half_pi * j / n_theta;
    const double r = a + (outer_radius(theta) - a) * static_cast<double>(i) / n_r;
    if (!(r > 0.0))
      throw InvalidArgument("free-surface collar reaches past the hole center; "
                            "reduce collar_cells or refine");
    return Vec2(r * std::cos(theta), r * std::sin(theta));
  };

  PointCloud cloud;
  cloud.nodes.reserve(static_cast<std::size_t>(n_r + collar_cells) * n_theta);
  int id = 0;
  for (int i = -collar_cells; i < n_r; ++i) {
    for (int j = 0; j < n_theta; ++j) {
      const Quad cell{{vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1), vertex(i, j + 1)}};
      Node nd;
      nd.id = id++;
      nd.X = cell.centroid();
      nd.V = cell.area();
      nd.P = Vec2(static_cast<double>(i), static_cast<double>(j));
      if (i < 0)
        nd.role = Role::free_surface;
      else if (i >= n_r - collar_cells || j < collar_cells || j >= n_theta - collar_cells)
        nd.role = Role::dirichlet;
      else
        nd.role = Role::bulk;
      cloud.nodes.push_back(nd);
    }
  }
  double vol = 0.0;
  int cnt = 0;
  for (const auto& nd : cloud.nodes)
    if (nd.role != Role::free_surface) {
      vol += nd.V;
      ++cnt;
    }
  cloud.h_avg = cnt > 0 ? std::sqrt(vol / cnt) : 0.0;
  char tag[160];
  std::snprintf(tag, sizeof tag, "polar(a=%g,L=%g,%dx%d,collar=%d)", a, L, n_r, n_theta,
                collar_cells);
  cloud.domain_tag = tag;
  cloud.validate();
  return cloud;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_number(const std::string& s, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ParseError("malformed number '" + s + "'", line_no);
  return v;
}

}  // namespace

PointCloud load_pointcloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open pointset file: " + path.string());

  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty pointset file", 1);
  ++line_no;
  const auto header = split_csv(line);
  bool parametric = false;
  if (header.size() == 5 && header[0] == "id" && header[1] == "x" && header[2] == "y" &&
      header[3] == "volume" && header[4] == "role") {
    parametric = false;
  } else if (header.size() == 7 && header[0] == "id" && header[1] == "x" && header[2] == "y" &&
             header[3] == "volume" && header[4] == "role" && header[5] == "px" &&
             header[6] == "py") {
    parametric = true;
  } else {
    throw ParseError("expected header id,x,y,volume,role[,px,py]", line_no);
  }

  std::vector<Node> nodes;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(f.size()),
                       line_no);
    Node nd;
    const double idv = parse_number(f[0], line_no);
    nd.id = static_cast<int>(idv);
    if (nd.id != idv) throw ParseError("non-integer id", line_no);
    nd.X = Vec2(parse_number(f[1], line_no), parse_number(f[2], line_no));
    nd.V = parse_number(f[3], line_no);
    try {
      nd.role = role_from_string(f[4]);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no);
    }
    if (parametric) nd.P = Vec2(parse_number(f[5], line_no), parse_number(f[6], line_no));
    nodes.push_back(nd);
  }
  if (nodes.empty()) throw ParseError("pointset file has no rows", line_no);

  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (nodes[i].id == nodes[i + 1].id)
      throw ValidationError("duplicate node id " + std::to_string(nodes[i].id));

  PointCloud cloud;
  cloud.nodes = std::move(nodes);
  cloud.domain_tag = "file:" + path.filename().string();
  cloud.validate();
  double vol = 0.0;
  int cnt = 0;
  for (const auto& nd : cloud.nodes)
    if (nd.role != Role::free_surface) {
      vol += nd.V;
      ++cnt;
    }
  cloud.h_avg = cnt > 0 ? std::sqrt(vol / cnt) : 0.0;
  return cloud;
}

void save_pointcloud(const PointCloud& cloud, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write pointset file: " + path.string());
  const bool parametric = cloud.has_parametric();
  out << (parametric ? "id,x,y,volume,role,px,py\n" : "id,x,y,volume,role\n");
  char buf[256];
  for (const auto& nd : cloud.nodes) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%s", nd.id, nd.X.x(), nd.X.y(), nd.V,
                  to_string(nd.role));
    out << buf;
    if (parametric) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", nd.P->x(), nd.P->y());
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace pdc
