#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "cfss/constants.hpp"
#include "cfss/goldberg.hpp"

using namespace cfss;
using Eigen::Vector3d;

namespace {

GoldbergTessellation build(int m, double radius) {
  GoldbergSpec spec;
  spec.m = m;
  spec.radius_mm = radius;
  return build_goldberg(spec);
}

} // namespace

TEST_CASE("GP(1,0) is the dodecahedron") {
  const GoldbergTessellation t = build(1, 10.0);
  CHECK(t.pentagon_count == 12);
  CHECK(t.hexagon_count == 0);
  CHECK(t.vertex_count() == 20);
  CHECK(t.edge_count() == 30);
  CHECK(t.face_count() == 12);
  CHECK(t.vertex_count() - t.edge_count() + t.face_count() == 2);
}

TEST_CASE("GP(2,0) is the chamfered dodecahedron") {
  const GoldbergTessellation t = build(2, 10.0);
  CHECK(t.pentagon_count == 12);
  CHECK(t.hexagon_count == 30);
  CHECK(t.face_count() == 42);
  CHECK(t.vertex_count() == 80);
  CHECK(t.edge_count() == 120);
  CHECK(t.vertex_count() - t.edge_count() + t.face_count() == 2);
}

TEST_CASE("invalid specs are rejected") {
  GoldbergSpec spec;
  spec.m = 0;
  CHECK_THROWS_AS(build_goldberg(spec), std::domain_error);
  spec.m = 2;
  spec.n = 1;
  CHECK_THROWS_AS(build_goldberg(spec), std::domain_error);
}

TEST_CASE("GP(20,0) counts and invariants") {
  const GoldbergTessellation t = build(20, 75.0);
  CHECK(t.pentagon_count == 12);
  CHECK(t.hexagon_count == 3990);
  CHECK(t.face_count() == 4002);
  CHECK(t.vertex_count() == 8000);
  CHECK(t.edge_count() == 12000);
  CHECK(t.vertex_count() - t.edge_count() + t.face_count() == 2);

  for (const TessEdge& e : t.edges) CHECK(e.cell_b >= 0); // closed surface

  SUBCASE("vertices on the sphere and near-planar cells") {
    for (const TessCell& c : t.cells) {
      for (const Vector3d& v : c.vertices) {
        CHECK(std::abs(v.norm() - 75.0) <= 1e-9 * 75.0);
      }
      // planarity: max deviation from the centroid plane below 2% of p2
      Vector3d n = Vector3d::Zero();
      const size_t nv = c.vertices.size();
      for (size_t i = 0; i < nv; ++i) n += c.vertices[i].cross(c.vertices[(i + 1) % nv]);
      n.normalize();
      double dev = 0.0;
      for (const Vector3d& v : c.vertices) dev = std::max(dev, std::abs((v - c.centroid).dot(n)));
      if (c.kind == CellKind::hexagon) CHECK(dev <= 0.02 * c.p2_mm);
    }
  }

  SUBCASE("facet area covers the sphere within 0.5%") {
    double total = 0.0;
    for (const TessCell& c : t.cells) {
      const size_t nv = c.vertices.size();
      for (size_t i = 0; i < nv; ++i) {
        total += 0.5 * (c.vertices[i] - c.centroid)
                           .cross(c.vertices[(i + 1) % nv] - c.centroid)
                           .norm();
      }
    }
    const double sphere = 4.0 * kPi * 75.0 * 75.0;
    CHECK(std::abs(total / sphere - 1.0) < 0.005);
  }
}

TEST_CASE("cell_p2") {
  SUBCASE("regular hexagon of side 2.598 has p2 = 4.5") {
    TessCell cell;
    cell.kind = CellKind::hexagon;
    const double a = 2.598;
    for (int k = 0; k < 6; ++k) {
      const double ang = kPi / 3.0 * k;
      cell.vertices.push_back({a * std::cos(ang), a * std::sin(ang), 0.0});
    }
    CHECK(cell_p2(cell) == doctest::Approx(std::sqrt(3.0) * a).epsilon(1e-12));
    CHECK(cell_p2(cell) == doctest::Approx(4.5).epsilon(1e-3));
  }
  SUBCASE("pentagon input is a kind error") {
    TessCell cell;
    cell.kind = CellKind::pentagon;
    cell.vertices.resize(5, Vector3d::Zero());
    CHECK_THROWS_AS(cell_p2(cell), std::invalid_argument);
  }
  SUBCASE("repeated vertices are a geometry error") {
    TessCell cell;
    cell.kind = CellKind::hexagon;
    cell.vertices.assign(6, Vector3d(1.0, 0.0, 0.0));
    CHECK_THROWS_AS(cell_p2(cell), std::runtime_error);
  }
}

TEST_CASE("p2 scales with radius") {
  const GoldbergTessellation a = build(4, 50.0);
  const GoldbergTessellation b = build(4, 100.0);
  for (size_t i = 0; i < a.cells.size(); ++i) {
    if (a.cells[i].kind != CellKind::hexagon) continue;
    CHECK(b.cells[i].p2_mm / a.cells[i].p2_mm == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("GP(20,0) p2 statistics across the three layers") {
  double lo = 1e30, hi = 0.0;
  for (double r : kDefaultLayerRadiiMm) {
    const GoldbergTessellation t = build(20, r);
    for (const TessCell& c : t.cells) {
      if (c.kind != CellKind::hexagon) continue;
      lo = std::min(lo, c.p2_mm);
      hi = std::max(hi, c.p2_mm);
    }
  }
  // Frozen values of this construction (projected-circumcenter dual).
  CHECK(lo == doctest::Approx(3.5797).epsilon(1e-3));
  CHECK(hi == doctest::Approx(4.9475).epsilon(1e-3));
}

TEST_CASE("hemisphere and skirt") {
  const GoldbergTessellation sphere = build(20, 75.0);

  SUBCASE("zero skirt is the bare hemisphere with 6 pentagons") {
    const GoldbergTessellation hemi = hemisphere_with_skirt(sphere, 0.0);
    CHECK(hemi.pentagon_count == 6);
    CHECK(hemi.hemisphere);
    // every edge borders at most two cells, boundary edges exactly one
    int boundary = 0;
    for (const TessEdge& e : hemi.edges) {
      if (e.cell_b < 0) ++boundary;
    }
    CHECK(boundary > 0);
  }

  SUBCASE("pentagons split 6 above and 6 below the equator") {
    int above = 0;
    for (const TessCell& c : sphere.cells) {
      if (c.kind == CellKind::pentagon && c.seed.z() > 0.0) ++above;
    }
    CHECK(above == 6);
    CHECK(sphere.pentagon_count - above == 6);
  }

  SUBCASE("25 mm skirt adds complete rings of cylinder cells") {
    const GoldbergTessellation hemi = hemisphere_with_skirt(sphere, 25.0);
    CHECK(hemi.pentagon_count == 6);

    int ring_cells = 0;
    double min_z = 0.0;
    for (const TessCell& c : hemi.cells) {
      if (c.surface != SurfaceKind::cylinder) continue;
      ++ring_cells;
      for (const Vector3d& v : c.vertices) {
        min_z = std::min(min_z, v.z());
        CHECK(std::abs(std::hypot(v.x(), v.y()) - 75.0) <= 1e-6 * 75.0);
      }
    }
    // 100 equatorial columns for m = 20; complete rings cover the 25 mm
    const int n_ring = 100;
    CHECK(ring_cells % n_ring == 0);
    const int rows = ring_cells / n_ring;
    const double side = 2.0 * kPi * 75.0 / n_ring / std::sqrt(3.0);
    CHECK(rows == static_cast<int>(std::ceil(25.0 / (1.5 * side) - 1e-9)));
    CHECK(min_z <= -25.0);

    // skirt cells are hexagons with sane p2
    for (const TessCell& c : hemi.cells) {
      if (c.surface == SurfaceKind::cylinder) {
        CHECK(c.kind == CellKind::hexagon);
        CHECK(c.p2_mm > 3.0);
        CHECK(c.p2_mm < 5.5);
      }
    }

    // seam conformity: every cylinder-cell edge is either shared with
    // another cell or on the bottom boundary
    int dangling = 0;
    for (const TessEdge& e : hemi.edges) {
      if (e.cell_b >= 0) continue;
      const TessCell& c = hemi.cells[e.cell_a];
      const double z0 = hemi.points[e.v0].z();
      const double z1 = hemi.points[e.v1].z();
      const double bottom = min_z + 1.5 * side; // last row depth band
      if (!(z0 <= bottom || z1 <= bottom)) ++dangling;
      (void)c;
    }
    CHECK(dangling == 0);
  }

  SUBCASE("skirt on an unoriented tessellation is rejected") {
    GoldbergTessellation copy = sphere;
    copy.spec.vertex_at_pole = false;
    CHECK_THROWS_AS(hemisphere_with_skirt(copy, 10.0), std::invalid_argument);
  }
}

TEST_CASE("inductive grid stays connected across the skirt seam") {
  const GoldbergTessellation hemi = hemisphere_with_skirt(build(8, 75.0), 25.0);
  // union-find over cells joined by shared edges
  std::vector<int> parent(hemi.cells.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const TessEdge& e : hemi.edges) {
    if (e.cell_b < 0) continue;
    parent[find(e.cell_a)] = find(e.cell_b);
  }
  std::set<int> roots;
  for (size_t i = 0; i < parent.size(); ++i) roots.insert(find(static_cast<int>(i)));
  CHECK(roots.size() == 1);
}

TEST_CASE("irreducible section reconstructs the hemisphere") {
  const GoldbergTessellation hemi = hemisphere_with_skirt(build(20, 75.0), 25.0);
  const IrreducibleSection section = irreducible_section(hemi);
  CHECK(section.ops.size() == 10);

  // wedge size: a tenth of the cells plus those shared across the meridians
  CHECK(section.cell_ids.size() >= hemi.cells.size() / 10);
  CHECK(section.cell_ids.size() <= hemi.cells.size() / 10 + 200);

  // polar pentagon belongs to the wedge and is fixed by rotations
  const TessCell* pole = nullptr;
  for (const TessCell& c : hemi.cells) {
    if (c.kind == CellKind::pentagon && std::hypot(c.seed.x(), c.seed.y()) < 1e-6) pole = &c;
  }
  REQUIRE(pole != nullptr);
  CHECK(std::find(section.cell_ids.begin(), section.cell_ids.end(), pole->id) !=
        section.cell_ids.end());
  for (const SymmetryOp& op : section.ops) {
    if (op.mirror) continue;
    CHECK((op.matrix * pole->centroid - pole->centroid).norm() < 1e-9);
  }

  // applying the ops to the section covers every cell exactly
  std::vector<char> covered(hemi.cells.size(), 0);
  auto match = [&](const Vector3d& p) {
    for (size_t i = 0; i < hemi.cells.size(); ++i) {
      if ((hemi.cells[i].centroid - p).norm() < 1e-6) return static_cast<int>(i);
    }
    return -1;
  };
  // brute-force match is slow; bucket by quantized position instead
  std::map<std::tuple<long, long, long>, std::vector<int>> buckets;
  auto key_of = [](const Vector3d& p) {
    return std::make_tuple(std::lround(p.x()), std::lround(p.y()), std::lround(p.z()));
  };
  for (size_t i = 0; i < hemi.cells.size(); ++i)
    buckets[key_of(hemi.cells[i].centroid)].push_back(static_cast<int>(i));
  auto fast_match = [&](const Vector3d& p) {
    auto [cx, cy, cz] = key_of(p);
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy)
        for (long dz = -1; dz <= 1; ++dz) {
          auto it = buckets.find(std::make_tuple(cx + dx, cy + dy, cz + dz));
          if (it == buckets.end()) continue;
          for (int i : it->second) {
            if ((hemi.cells[i].centroid - p).norm() < 1e-6) return i;
          }
        }
    return -1;
  };
  (void)match;

  int unmatched_images = 0;
  for (int id : section.cell_ids) {
    for (const SymmetryOp& op : section.ops) {
      const int hit = fast_match(op.matrix * hemi.cells[id].centroid);
      if (hit < 0) {
        ++unmatched_images;
      } else {
        covered[hit] = 1;
      }
    }
  }
  CHECK(unmatched_images == 0);
  CHECK(std::count(covered.begin(), covered.end(), 0) == 0);
}

TEST_CASE("layer tessellations") {
  const std::vector<GoldbergTessellation> layers =
      layer_tessellations(std::span<const double>(kDefaultLayerRadiiMm, 3), 4);
  CHECK(layers.size() == 3);
  CHECK(layers[0].spec.radius_mm == 72.5);
  CHECK(layers[1].spec.radius_mm == 73.75);
  CHECK(layers[2].spec.radius_mm == 75.0);
  // spacer consistency: 72.5 + 1.25 = 73.75, 73.75 + 1.25 = 75.0
  CHECK(layers[0].spec.radius_mm + 1.25 == doctest::Approx(layers[1].spec.radius_mm));
  CHECK(layers[1].spec.radius_mm + 1.25 == doctest::Approx(layers[2].spec.radius_mm));

  const double bad[2] = {75.0, 72.5};
  CHECK_THROWS_AS(layer_tessellations(std::span<const double>(bad, 2), 4),
                  std::invalid_argument);

  const double one[1] = {50.0};
  CHECK(layer_tessellations(std::span<const double>(one, 1), 2).size() == 1);
}
