#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfss/goldberg.hpp"
#include "cfss/synthesis.hpp"

namespace cfss {

enum class LayerId { inner_cap, mid_ind, outer_cap };

const char* layer_name(LayerId id);

// One metal trace: a constant-width polyline on the layer surface.
struct TracePrimitive {
  std::vector<Eigen::Vector3d> polyline_mm;
  double width_mm;
  LayerId layer;
  int cell_id;
};

// Fixed pentagonal-cell artwork dimensions.
struct PentagonGeom {
  double trace_width_mm = 0.25;  // w_p
  double gap_mm = 0.38;          // g_p
  double ind_side_mm = 1.51;     // inductive ring side length
  double cap_diag_outer_mm = 2.22;
  double cap_diag_inner_mm = 2.13;
};

struct OverrideRow {
  double p2_mm;
  double g_mm;
  double w_l_mm;
};

// Dimension source for hexagonal cells: the printed scaling laws, or a
// nearest-p2 override table (shipped default reproduces Table I).
struct ArtworkLaws {
  bool use_override_table = false;
  std::vector<OverrideRow> override_table;
  double w_c_mm = 0.25;
  PentagonGeom pentagon;
};

ArtworkLaws table1_override_laws();

struct Provenance {
  double p2_mm;
  double dim_mm; // g for capacitive layers, w_L for the inductive layer
};

struct LayerArtwork {
  LayerId layer_id;
  double radius_mm;
  std::vector<TracePrimitive> traces;
  std::map<int, Provenance> provenance;
};

// Wheel-spoke capacitive patch: rim polygon with its centerline inset by
// (g + w_c)/2 from the cell boundary, plus spokes from the centroid to the
// rim vertices.
std::vector<TracePrimitive> capacitive_cell_artwork(const TessCell& cell, double w_c_mm,
                                                    double g_mm, LayerId layer,
                                                    const GoldbergTessellation& tess);

// Wire-grid traces: one per unique hexagon-hexagon edge, centerline on the
// edge, width from the scaling law at the mean p2 of the two cells.
std::vector<TracePrimitive> inductive_grid_artwork(const GoldbergTessellation& tess,
                                                   const ArtworkLaws& laws);

double edge_wire_width(double p2_a_mm, double p2_b_mm, const ArtworkLaws& laws);

std::vector<TracePrimitive> pentagon_artwork(const TessCell& cell, LayerId layer,
                                             const PentagonGeom& geom,
                                             const GoldbergTessellation& tess);

LayerArtwork build_layer(const GoldbergTessellation& tess, LayerId layer,
                         const ArtworkLaws& laws);

struct DrcWidthViolation {
  int cell_id;
  double width_mm;
};
struct DrcClearanceViolation {
  int cell_a;
  int cell_b;
  double clearance_mm;
};
struct DrcReport {
  std::vector<DrcWidthViolation> width_violations;
  std::vector<DrcClearanceViolation> clearance_violations;
  std::vector<int> self_intersections;
  bool clean() const {
    return width_violations.empty() && clearance_violations.empty() &&
           self_intersections.empty();
  }
};

DrcReport drc_check(const LayerArtwork& artwork, double min_width_mm, double min_gap_mm);

enum class ExportFormat { geometry_json, svg_preview, triangle_mesh };

// geometry-json carries all layers; svg flattens a single layer with the
// azimuthal-equidistant map; the mesh ribbons every trace into triangles.
std::string export_geometry_json(std::span<const LayerArtwork> layers);
std::string export_svg(const LayerArtwork& layer, double skirt_height_mm);
std::string export_mesh(std::span<const LayerArtwork> layers);

// Serialized tessellation (cell records with kind, coordinates, p2 and
// symmetry class, 6 decimal places in mm).
std::string export_tessellation_json(const GoldbergTessellation& tess);

} // namespace cfss
