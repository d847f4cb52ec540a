#include "cfss/goldberg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "cfss/constants.hpp"

namespace cfss {

namespace {

using Eigen::Vector3d;

struct IcosaMesh {
  std::vector<Vector3d> verts;
  std::vector<std::array<int, 3>> faces;
};

IcosaMesh icosahedron_vertex_at_pole() {
  IcosaMesh mesh;
  const double zu = 1.0 / std::sqrt(5.0);
  const double ru = 2.0 / std::sqrt(5.0);
  mesh.verts.push_back({0.0, 0.0, 1.0});
  for (int k = 0; k < 5; ++k) {
    const double a = 2.0 * kPi * k / 5.0;
    mesh.verts.push_back({ru * std::cos(a), ru * std::sin(a), zu});
  }
  for (int k = 0; k < 5; ++k) {
    const double a = 2.0 * kPi * k / 5.0 + kPi / 5.0;
    mesh.verts.push_back({ru * std::cos(a), ru * std::sin(a), -zu});
  }
  mesh.verts.push_back({0.0, 0.0, -1.0});

  for (int k = 0; k < 5; ++k) mesh.faces.push_back({0, 1 + k, 1 + (k + 1) % 5});
  for (int k = 0; k < 5; ++k) {
    mesh.faces.push_back({1 + k, 6 + k, 1 + (k + 1) % 5});
    mesh.faces.push_back({1 + (k + 1) % 5, 6 + k, 6 + (k + 1) % 5});
  }
  for (int k = 0; k < 5; ++k) mesh.faces.push_back({11, 6 + (k + 1) % 5, 6 + k});
  return mesh;
}

struct QuantKey {
  long long x, y, z;
  bool operator==(const QuantKey&) const = default;
};

struct QuantKeyHash {
  size_t operator()(const QuantKey& k) const {
    size_t h = std::hash<long long>()(k.x);
    h = h * 1000003u ^ std::hash<long long>()(k.y);
    h = h * 1000003u ^ std::hash<long long>()(k.z);
    return h;
  }
};

QuantKey quantize(const Vector3d& p, double scale) {
  return {std::llround(p.x() * scale), std::llround(p.y() * scale), std::llround(p.z() * scale)};
}

// Nearest-seed lookup over a uniform spatial hash.
class SeedIndex {
 public:
  SeedIndex(const std::vector<Vector3d>& seeds, double bucket) : seeds_(seeds), h_(bucket) {
    for (size_t i = 0; i < seeds.size(); ++i) {
      grid_[quantize(seeds[i], 1.0 / h_)].push_back(static_cast<int>(i));
    }
  }

  int find_within(const Vector3d& p, double tol) const {
    const QuantKey c = quantize(p, 1.0 / h_);
    int best = -1;
    double best_d = tol;
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy)
        for (long long dz = -1; dz <= 1; ++dz) {
          const auto it = grid_.find({c.x + dx, c.y + dy, c.z + dz});
          if (it == grid_.end()) continue;
          for (int i : it->second) {
            const double d = (seeds_[i] - p).norm();
            if (d <= best_d) {
              best_d = d;
              best = i;
            }
          }
        }
    return best;
  }

 private:
  const std::vector<Vector3d>& seeds_;
  double h_;
  std::unordered_map<QuantKey, std::vector<int>, QuantKeyHash> grid_;
};

void order_polygon_ccw(TessCell& cell, const std::vector<Vector3d>& points) {
  const Vector3d n = cell.seed.normalized();
  Vector3d ref = std::abs(n.z()) < 0.9 ? Vector3d(0, 0, 1) : Vector3d(1, 0, 0);
  const Vector3d t0 = n.cross(ref).normalized();
  const Vector3d t1 = n.cross(t0);
  std::vector<std::pair<double, int>> keyed;
  keyed.reserve(cell.vertex_ids.size());
  for (int vid : cell.vertex_ids) {
    const Vector3d d = points[vid] - cell.seed;
    keyed.emplace_back(std::atan2(d.dot(t1), d.dot(t0)), vid);
  }
  std::sort(keyed.begin(), keyed.end());
  cell.vertex_ids.clear();
  for (auto& [a, vid] : keyed) cell.vertex_ids.push_back(vid);

  // Make the winding CCW as seen from outside (Newell normal along +seed).
  Vector3d newell = Vector3d::Zero();
  const size_t nv = cell.vertex_ids.size();
  for (size_t i = 0; i < nv; ++i) {
    const Vector3d& a = points[cell.vertex_ids[i]];
    const Vector3d& b = points[cell.vertex_ids[(i + 1) % nv]];
    newell += a.cross(b);
  }
  if (newell.dot(cell.seed) < 0.0) {
    std::reverse(cell.vertex_ids.begin(), cell.vertex_ids.end());
  }
}

void resolve_cell_geometry(TessCell& cell, const std::vector<Vector3d>& points) {
  cell.vertices.clear();
  cell.vertices.reserve(cell.vertex_ids.size());
  Vector3d c = Vector3d::Zero();
  for (int vid : cell.vertex_ids) {
    cell.vertices.push_back(points[vid]);
    c += points[vid];
  }
  cell.centroid = c / static_cast<double>(cell.vertex_ids.size());
  cell.kind = cell.vertex_ids.size() == 5 ? CellKind::pentagon : CellKind::hexagon;
  if (cell.kind == CellKind::hexagon) cell.p2_mm = cell_p2(cell);
}

void rebuild_edges_and_counts(GoldbergTessellation& tess) {
  std::map<std::pair<int, int>, std::array<int, 2>> edge_map;
  for (const TessCell& cell : tess.cells) {
    const size_t nv = cell.vertex_ids.size();
    for (size_t i = 0; i < nv; ++i) {
      int a = cell.vertex_ids[i];
      int b = cell.vertex_ids[(i + 1) % nv];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = edge_map.try_emplace({a, b}, std::array<int, 2>{cell.id, -1});
      if (!inserted) {
        if (it->second[1] != -1) throw std::runtime_error("edge shared by more than two cells");
        it->second[1] = cell.id;
      }
    }
  }
  tess.edges.clear();
  tess.edges.reserve(edge_map.size());
  for (const auto& [key, cells] : edge_map) {
    tess.edges.push_back({key.first, key.second, cells[0], cells[1]});
  }
  tess.pentagon_count = 0;
  tess.hexagon_count = 0;
  for (const TessCell& c : tess.cells) {
    if (c.kind == CellKind::pentagon) {
      ++tess.pentagon_count;
    } else {
      ++tess.hexagon_count;
    }
  }
}

void assign_symmetry_classes(GoldbergTessellation& tess) {
  const auto ops = symmetry_ops();
  const size_t n = tess.cells.size();
  std::vector<Vector3d> seeds(n);
  for (size_t i = 0; i < n; ++i) seeds[i] = tess.cells[i].seed;

  const double pitch = 2.0 * kPi * tess.spec.radius_mm / (5.0 * tess.spec.m);
  SeedIndex index(seeds, std::max(pitch, 1e-6));
  const double tol = 1e-3 * std::max(1.0, tess.spec.radius_mm / 75.0);

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  for (size_t i = 0; i < n; ++i) {
    for (const auto& op : ops) {
      const Vector3d image = op.matrix * seeds[i];
      const int j = index.find_within(image, tol);
      if (j >= 0) unite(static_cast<int>(i), j);
    }
  }

  std::unordered_map<int, int> class_of_root;
  int next_class = 0;
  for (size_t i = 0; i < n; ++i) {
    const int root = find(static_cast<int>(i));
    auto [it, inserted] = class_of_root.try_emplace(root, next_class);
    if (inserted) ++next_class;
    tess.cells[i].symmetry_class = it->second;
  }
}

void finalize(GoldbergTessellation& tess) {
  for (size_t i = 0; i < tess.cells.size(); ++i) {
    tess.cells[i].id = static_cast<int>(i);
    resolve_cell_geometry(tess.cells[i], tess.points);
  }
  rebuild_edges_and_counts(tess);
  assign_symmetry_classes(tess);
}

double wrap_angle(double a) {
  while (a < 0.0) a += 2.0 * kPi;
  while (a >= 2.0 * kPi) a -= 2.0 * kPi;
  return a;
}

} // namespace

GoldbergTessellation build_goldberg(const GoldbergSpec& spec) {
  if (spec.m < 1) throw std::domain_error("GP(m,0) requires m >= 1");
  if (spec.n != 0) throw std::domain_error("only class-I GP(m,0) is supported");
  if (!(spec.radius_mm > 0.0)) throw std::domain_error("radius must be positive");

  const IcosaMesh icosa = icosahedron_vertex_at_pole();
  const int m = spec.m;
  const double r = spec.radius_mm;

  // Subdivide each face into m^2 triangles and dedupe the shared vertices.
  std::unordered_map<QuantKey, int, QuantKeyHash> seen;
  std::vector<Vector3d> geo_verts;
  auto add_vertex = [&](const Vector3d& p) {
    const Vector3d q = p.normalized();
    const QuantKey key = quantize(q, 1e7);
    auto [it, inserted] = seen.try_emplace(key, static_cast<int>(geo_verts.size()));
    if (inserted) geo_verts.push_back(q);
    return it->second;
  };

  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<size_t>(20) * m * m);
  for (const auto& face : icosa.faces) {
    const Vector3d a = icosa.verts[face[0]];
    const Vector3d b = icosa.verts[face[1]];
    const Vector3d c = icosa.verts[face[2]];
    std::vector<int> grid((m + 1) * (m + 2) / 2);
    auto at = [&](int i, int j) -> int& { return grid[i * (m + 1) - i * (i - 1) / 2 + j]; };
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; j <= m - i; ++j) {
        const int k = m - i - j;
        at(i, j) = add_vertex((i * a + j * b + k * c) / m);
      }
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m - i; ++j) {
        tris.push_back({at(i, j), at(i + 1, j), at(i, j + 1)});
        if (j < m - i - 1) tris.push_back({at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
      }
    }
  }

  GoldbergTessellation tess;
  tess.spec = spec;
  tess.points.reserve(tris.size());
  std::vector<std::vector<int>> incident(geo_verts.size());
  for (size_t t = 0; t < tris.size(); ++t) {
    const Vector3d& a = geo_verts[tris[t][0]];
    const Vector3d& b = geo_verts[tris[t][1]];
    const Vector3d& c = geo_verts[tris[t][2]];
    Vector3d u = (b - a).cross(c - a).normalized();
    if (u.dot(a) < 0.0) u = -u;
    tess.points.push_back(u * r);
    for (int v : tris[t]) incident[v].push_back(static_cast<int>(t));
  }

  tess.cells.reserve(geo_verts.size());
  for (size_t v = 0; v < geo_verts.size(); ++v) {
    TessCell cell;
    cell.seed = geo_verts[v] * r;
    cell.vertex_ids = incident[v];
    cell.surface = SurfaceKind::sphere;
    order_polygon_ccw(cell, tess.points);
    tess.cells.push_back(std::move(cell));
  }

  finalize(tess);
  return tess;
}

double cell_p2(const TessCell& cell) {
  if (cell.kind != CellKind::hexagon || cell.vertices.size() != 6)
    throw std::invalid_argument("p2 is defined for hexagonal cells");
  for (size_t i = 0; i < 6; ++i) {
    if ((cell.vertices[i] - cell.vertices[(i + 1) % 6]).norm() < 1e-9)
      throw std::runtime_error("degenerate hexagon with repeated vertices");
  }
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vector3d m0 = 0.5 * (cell.vertices[i] + cell.vertices[(i + 1) % 6]);
    const Vector3d m1 = 0.5 * (cell.vertices[i + 3] + cell.vertices[(i + 4) % 6]);
    sum += (m0 - m1).norm();
  }
  return sum / 3.0;
}

GoldbergTessellation hemisphere_with_skirt(const GoldbergTessellation& tess,
                                           double skirt_height_mm) {
  if (!tess.spec.vertex_at_pole)
    throw std::invalid_argument("hemisphere bisection requires the vertex-at-pole orientation");
  if (skirt_height_mm < 0.0) throw std::domain_error("skirt height must be >= 0");
  if (tess.hemisphere) throw std::invalid_argument("tessellation is already bisected");

  const double r = tess.spec.radius_mm;
  const double z_tol = 1e-9 * r;

  GoldbergTessellation out;
  out.spec = tess.spec;
  out.hemisphere = true;
  out.skirt_height_mm = skirt_height_mm;
  out.points = tess.points;

  // The equatorial ring is kept whole: membership is decided by the seed
  // (cell-center) height, which is exactly zero on the ring, rather than by
  // the centroid whose sign wobbles there at the 0.03 mm level.
  std::vector<int> ring;
  for (const TessCell& cell : tess.cells) {
    if (cell.seed.z() >= -z_tol) {
      TessCell kept = cell;
      kept.symmetry_class = -1;
      out.cells.push_back(std::move(kept));
      if (std::abs(cell.seed.z()) <= z_tol) ring.push_back(static_cast<int>(out.cells.size()) - 1);
    }
  }

  if (skirt_height_mm > 0.0) {
    if (ring.empty())
      throw std::runtime_error("no equatorial cell ring (skirt supported for even m only)");

    // Wrap every sub-equator point used by kept cells onto the cylinder:
    // azimuth preserved, meridian arc length continued as depth.
    std::vector<char> used(out.points.size(), 0);
    for (const TessCell& c : out.cells)
      for (int vid : c.vertex_ids) used[vid] = 1;
    for (size_t i = 0; i < out.points.size(); ++i) {
      if (!used[i] || out.points[i].z() >= 0.0) continue;
      const Vector3d& p = out.points[i];
      const double az = std::atan2(p.y(), p.x());
      const double s = r * std::asin(std::clamp(p.z() / r, -1.0, 1.0));
      out.points[i] = Vector3d(r * std::cos(az), r * std::sin(az), s);
    }

    // Ring cells ordered by azimuth; identify the boundary zigzag.
    const int n_ring = static_cast<int>(ring.size());
    std::sort(ring.begin(), ring.end(), [&](int a, int b) {
      const Vector3d& sa = out.cells[a].seed;
      const Vector3d& sb = out.cells[b].seed;
      return wrap_angle(std::atan2(sa.y(), sa.x())) < wrap_angle(std::atan2(sb.y(), sb.x()));
    });

    auto below_ids = [&](int cell_idx) {
      std::vector<int> ids;
      for (int vid : out.cells[cell_idx].vertex_ids) {
        if (out.points[vid].z() < 0.0) ids.push_back(vid);
      }
      return ids;
    };

    std::vector<int> shoulder(n_ring, -1); // shared lower vertex of ring j and j+1
    std::vector<int> tip(n_ring, -1);      // lowest vertex of ring cell j
    for (int j = 0; j < n_ring; ++j) {
      const auto a = below_ids(ring[j]);
      const auto b = below_ids(ring[(j + 1) % n_ring]);
      if (a.size() != 3 || b.size() != 3)
        throw std::runtime_error("unexpected equatorial cell shape");
      for (int va : a) {
        if (std::find(b.begin(), b.end(), va) != b.end()) shoulder[j] = va;
      }
      if (shoulder[j] < 0) throw std::runtime_error("equatorial ring is not edge-connected");
    }
    for (int j = 0; j < n_ring; ++j) {
      for (int v : below_ids(ring[j])) {
        if (v != shoulder[j] && v != shoulder[(j + n_ring - 1) % n_ring]) tip[j] = v;
      }
      if (tip[j] < 0) throw std::runtime_error("equatorial cell has no bottom vertex");
    }

    const double hex_side = 2.0 * kPi * r / n_ring / std::sqrt(3.0);
    const double row_pitch = 1.5 * hex_side;
    const int n_rows = static_cast<int>(std::ceil(skirt_height_mm / row_pitch - 1e-9));

    auto azimuth_of = [&](int vid) {
      return std::atan2(out.points[vid].y(), out.points[vid].x());
    };
    auto add_point = [&](double az, double s) {
      out.points.emplace_back(r * std::cos(az), r * std::sin(az), s);
      return static_cast<int>(out.points.size()) - 1;
    };

    // Row k cells hang below the previous zigzag: the shallow nodes become
    // the new top tips, the deep nodes the upper shoulders. Generated rows
    // take the ring-mean depth so the skirt keeps the mirror symmetry that
    // per-column depths (boundary wobble ~0.05 mm) would break.
    std::vector<int> shallow(shoulder); // ring lower shoulders
    std::vector<int> deep(tip);
    double row_depth = 0.0;
    for (int j = 0; j < n_ring; ++j) row_depth += out.points[shallow[j]].z();
    row_depth /= n_ring;
    for (int k = 0; k < n_rows; ++k) {
      std::vector<int> new_shoulder(n_ring);
      std::vector<int> new_tip(n_ring);
      for (int j = 0; j < n_ring; ++j) {
        new_shoulder[j] = add_point(azimuth_of(deep[j]), row_depth - 1.5 * hex_side);
        new_tip[j] = add_point(azimuth_of(shallow[j]), row_depth - 2.0 * hex_side);
      }
      for (int j = 0; j < n_ring; ++j) {
        // Cell below shallow[j], between deep[j] and deep[j+1].
        const int jn = (j + 1) % n_ring;
        TessCell cell;
        cell.surface = SurfaceKind::cylinder;
        cell.vertex_ids = {shallow[j],      deep[jn],   new_shoulder[jn],
                           new_tip[j],      new_shoulder[j], deep[j]};
        const double az_c = azimuth_of(shallow[j]);
        cell.seed = Vector3d(r * std::cos(az_c), r * std::sin(az_c), row_depth - hex_side);
        out.cells.push_back(std::move(cell));
      }
      shallow = std::move(new_shoulder);
      deep = std::move(new_tip);
      row_depth -= 1.5 * hex_side;
      // The new shoulders take the deep azimuths, swapping the roles; the
      // rotation restores the invariant that deep[j] sits left of shallow[j].
      std::rotate(deep.begin(), deep.end() - 1, deep.end());
    }
  }

  finalize(out);
  return out;
}

std::vector<SymmetryOp> symmetry_ops() {
  std::vector<SymmetryOp> ops;
  for (int mirror = 0; mirror < 2; ++mirror) {
    for (int k = 0; k < 5; ++k) {
      SymmetryOp op;
      op.mirror = mirror != 0;
      op.rotation_index = k;
      Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
      if (op.mirror) m(1, 1) = -1.0; // reflect across the xz meridian plane
      const double a = 2.0 * kPi * k / 5.0;
      Eigen::Matrix3d rot;
      rot << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0, 0.0, 1.0;
      op.matrix = rot * m;
      ops.push_back(op);
    }
  }
  return ops;
}

IrreducibleSection irreducible_section(const GoldbergTessellation& tess) {
  if (!tess.hemisphere)
    throw std::invalid_argument("irreducible section is defined for the bisected tessellation");

  // Verify the 5-fold symmetry before slicing.
  std::vector<Eigen::Vector3d> seeds;
  seeds.reserve(tess.cells.size());
  for (const TessCell& c : tess.cells) seeds.push_back(c.seed);
  const double pitch = 2.0 * kPi * tess.spec.radius_mm / (5.0 * tess.spec.m);
  SeedIndex index(seeds, std::max(pitch, 1e-6));
  const double tol = 1e-3;
  const auto ops = symmetry_ops();
  for (const TessCell& c : tess.cells) {
    if (index.find_within(ops[1].matrix * c.seed, tol) < 0)
      throw std::runtime_error("tessellation lacks 5-fold symmetry");
  }

  // Closed 36-degree wedge bounded by the xz meridian (a mirror plane) and
  // the meridian 36 degrees up. Cells sitting exactly on either meridian are
  // included; reconstruction dedupes their duplicate images.
  IrreducibleSection section;
  section.ops = ops;
  const double eps = 1e-9;
  for (const TessCell& c : tess.cells) {
    const double rho = std::hypot(c.centroid.x(), c.centroid.y());
    double az = rho < 1e-12 ? 0.0 : wrap_angle(std::atan2(c.centroid.y(), c.centroid.x()));
    if (az > 2.0 * kPi - eps) az = 0.0;
    if (az <= kPi / 5.0 + eps) section.cell_ids.push_back(c.id);
  }
  return section;
}

std::vector<GoldbergTessellation> layer_tessellations(std::span<const double> radii_mm, int m) {
  std::vector<GoldbergTessellation> layers;
  double prev = 0.0;
  for (double r : radii_mm) {
    if (!(r > prev)) throw std::invalid_argument("layer radii must be positive and increasing");
    prev = r;
    GoldbergSpec spec;
    spec.m = m;
    spec.radius_mm = r;
    layers.push_back(build_goldberg(spec));
  }
  return layers;
}

} // namespace cfss
