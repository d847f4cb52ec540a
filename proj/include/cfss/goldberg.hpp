#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cfss {

// Class-I Goldberg polyhedron GP(m, 0) on a sphere of the given radius.
// vertex_at_pole places an icosahedron vertex on the +z axis, which puts one
// pentagon at the pole and five in the upper latitude ring.
struct GoldbergSpec {
  int m = 20;
  int n = 0;
  double radius_mm = 75.0;
  bool vertex_at_pole = true;
};

enum class CellKind { hexagon, pentagon };
enum class SurfaceKind { sphere, cylinder };

struct TessCell {
  int id = -1;
  CellKind kind = CellKind::hexagon;
  SurfaceKind surface = SurfaceKind::sphere;
  std::vector<int> vertex_ids;           // indices into GoldbergTessellation::points
  std::vector<Eigen::Vector3d> vertices; // resolved coordinates, mm, outward CCW
  Eigen::Vector3d centroid{0, 0, 0};
  Eigen::Vector3d seed{0, 0, 0}; // generating point (cell center on the surface)
  double p2_mm = 0.0;            // short-diagonal metric; 0 for pentagons
  int symmetry_class = -1;
};

// Unique cell-boundary edge. cell_b is -1 on an open boundary.
struct TessEdge {
  int v0;
  int v1;
  int cell_a;
  int cell_b;
};

struct GoldbergTessellation {
  GoldbergSpec spec;
  bool hemisphere = false;
  double skirt_height_mm = 0.0;
  std::vector<Eigen::Vector3d> points;
  std::vector<TessCell> cells;
  std::vector<TessEdge> edges;
  int pentagon_count = 0;
  int hexagon_count = 0;

  long vertex_count() const { return static_cast<long>(points.size()); }
  long edge_count() const { return static_cast<long>(edges.size()); }
  long face_count() const { return static_cast<long>(cells.size()); }
};

// Rigid motion of the 5-fold symmetry group used for artwork reuse:
// optional mirror across the xz meridian plane followed by a rotation about z.
struct SymmetryOp {
  bool mirror;
  int rotation_index; // rotation angle = rotation_index * 72 degrees
  Eigen::Matrix3d matrix;
};

struct IrreducibleSection {
  std::vector<int> cell_ids;
  std::vector<SymmetryOp> ops;
};

// Geodesic subdivision of the icosahedron (each face split into m^2
// triangles, vertices projected to the sphere) followed by the dual: one cell
// per geodesic vertex with corners at the projected triangle circumcenters.
GoldbergTessellation build_goldberg(const GoldbergSpec& spec);

// Mean of the three chord distances between midpoints of opposite edges.
double cell_p2(const TessCell& cell);

// Bisects the tessellation at the equator, keeping the equatorial cell ring
// whole, and continues the ring pattern down a cylinder of the same radius.
// Points below z = 0 are wrapped onto the cylinder preserving azimuth and
// meridian arc length.
GoldbergTessellation hemisphere_with_skirt(const GoldbergTessellation& tess,
                                           double skirt_height_mm);

// The ten rigid motions {1, mirror} x {0, 72, 144, 216, 288 degrees}.
std::vector<SymmetryOp> symmetry_ops();

// 36-degree wedge through the polar pentagon plus the operation list that
// reconstructs the full hemispherical cell set.
IrreducibleSection irreducible_section(const GoldbergTessellation& tess);

std::vector<GoldbergTessellation> layer_tessellations(std::span<const double> radii_mm,
                                                      int m = 20);

inline constexpr double kDefaultLayerRadiiMm[3] = {72.5, 73.75, 75.0};

} // namespace cfss
