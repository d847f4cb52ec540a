#include "cfss/artwork.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace cfss {

namespace {

using Eigen::Vector2d;
using Eigen::Vector3d;

double round6(double x) { return std::round(x * 1e6) / 1e6; }

Vector3d surface_outward(const TessCell& cell) {
  if (cell.surface == SurfaceKind::cylinder || cell.centroid.z() < 0.0) {
    return Vector3d(cell.centroid.x(), cell.centroid.y(), 0.0).normalized();
  }
  return cell.centroid.normalized();
}

// Project a point onto the layer surface: sphere above the equator and, when
// a skirt is present, the cylinder below it.
Vector3d project_to_surface(const Vector3d& p, const GoldbergTessellation& tess) {
  const double r = tess.spec.radius_mm;
  if (tess.skirt_height_mm > 0.0 && p.z() < 0.0) {
    const double rho = std::hypot(p.x(), p.y());
    return Vector3d(p.x() * r / rho, p.y() * r / rho, p.z());
  }
  return p * (r / p.norm());
}

struct CellFrame {
  Vector3d origin;
  Vector3d u, v, n;

  Vector2d to_plane(const Vector3d& p) const {
    const Vector3d d = p - origin;
    return {d.dot(u), d.dot(v)};
  }
  Vector3d to_space(const Vector2d& q) const { return origin + q.x() * u + q.y() * v; }
};

CellFrame cell_frame(const TessCell& cell) {
  CellFrame f;
  f.origin = cell.centroid;
  // Newell normal of the polygon, oriented outward.
  Vector3d newell = Vector3d::Zero();
  const size_t nv = cell.vertices.size();
  for (size_t i = 0; i < nv; ++i) {
    newell += cell.vertices[i].cross(cell.vertices[(i + 1) % nv]);
  }
  f.n = newell.normalized();
  if (f.n.dot(surface_outward(cell)) < 0.0) f.n = -f.n;
  const Vector3d ref = std::abs(f.n.z()) < 0.9 ? Vector3d(0, 0, 1) : Vector3d(1, 0, 0);
  f.u = f.n.cross(ref).normalized();
  f.v = f.n.cross(f.u);
  return f;
}

double signed_area(const std::vector<Vector2d>& poly) {
  double a = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vector2d& p = poly[i];
    const Vector2d& q = poly[(i + 1) % poly.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

// Inward offset of a convex CCW polygon by moving every edge line inward.
std::vector<Vector2d> inset_polygon(const std::vector<Vector2d>& poly, double delta) {
  const size_t n = poly.size();
  std::vector<Vector2d> points(n), dirs(n);
  for (size_t i = 0; i < n; ++i) {
    const Vector2d d = poly[(i + 1) % n] - poly[i];
    const double len = d.norm();
    if (len < 1e-12) throw std::runtime_error("degenerate cell edge");
    dirs[i] = d / len;
    const Vector2d inward(-dirs[i].y(), dirs[i].x());
    points[i] = poly[i] + delta * inward;
  }
  std::vector<Vector2d> out(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t prev = (i + n - 1) % n;
    // Intersect line(prev) with line(i).
    const Vector2d& p1 = points[prev];
    const Vector2d& d1 = dirs[prev];
    const Vector2d& p2 = points[i];
    const Vector2d& d2 = dirs[i];
    const double det = d1.x() * d2.y() - d1.y() * d2.x();
    if (std::abs(det) < 1e-12) throw std::runtime_error("infeasible artwork: parallel edges");
    const double t = ((p2.x() - p1.x()) * d2.y() - (p2.y() - p1.y()) * d2.x()) / det;
    out[i] = p1 + t * d1;
  }
  // The inset must not invert: edge directions keep their sense and the
  // polygon keeps positive area.
  for (size_t i = 0; i < n; ++i) {
    const Vector2d d = out[(i + 1) % n] - out[i];
    if (d.dot(dirs[i]) <= 0.0)
      throw std::runtime_error("infeasible artwork: inset inverts the cell polygon");
  }
  if (signed_area(out) <= 0.0)
    throw std::runtime_error("infeasible artwork: inset collapses the cell polygon");
  return out;
}

TracePrimitive make_trace(std::vector<Vector3d> pts, double width, LayerId layer, int cell) {
  return {std::move(pts), width, layer, cell};
}

double cell_gap(const TessCell& cell, const ArtworkLaws& laws) {
  if (laws.use_override_table) {
    if (laws.override_table.empty()) throw std::invalid_argument("empty override table");
    const OverrideRow* best = &laws.override_table.front();
    for (const auto& row : laws.override_table) {
      if (std::abs(row.p2_mm - cell.p2_mm) < std::abs(best->p2_mm - cell.p2_mm)) best = &row;
    }
    return best->g_mm;
  }
  return gap_for_size(cell.p2_mm).mm;
}

double min_segment_distance(const Vector3d& a0, const Vector3d& a1, const Vector3d& b0,
                            const Vector3d& b1) {
  const Vector3d d1 = a1 - a0;
  const Vector3d d2 = b1 - b0;
  const Vector3d r = a0 - b0;
  const double aa = d1.squaredNorm();
  const double ee = d2.squaredNorm();
  const double ff = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (aa < 1e-18 && ee < 1e-18) return r.norm();
  if (aa < 1e-18) {
    t = std::clamp(ff / ee, 0.0, 1.0);
  } else {
    const double cc = d1.dot(r);
    if (ee < 1e-18) {
      s = std::clamp(-cc / aa, 0.0, 1.0);
    } else {
      const double bb = d1.dot(d2);
      const double den = aa * ee - bb * bb;
      s = den > 1e-18 ? std::clamp((bb * ff - cc * ee) / den, 0.0, 1.0) : 0.0;
      t = (bb * s + ff) / ee;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-cc / aa, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((bb - cc) / aa, 0.0, 1.0);
      }
    }
  }
  return (a0 + s * d1 - (b0 + t * d2)).norm();
}

double min_trace_distance(const TracePrimitive& a, const TracePrimitive& b) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < a.polyline_mm.size(); ++i) {
    for (size_t j = 0; j + 1 < b.polyline_mm.size(); ++j) {
      best = std::min(best, min_segment_distance(a.polyline_mm[i], a.polyline_mm[i + 1],
                                                 b.polyline_mm[j], b.polyline_mm[j + 1]));
    }
  }
  return best;
}

bool traces_share_endpoint(const TracePrimitive& a, const TracePrimitive& b) {
  for (const Vector3d& p : {a.polyline_mm.front(), a.polyline_mm.back()}) {
    for (const Vector3d& q : {b.polyline_mm.front(), b.polyline_mm.back()}) {
      if ((p - q).norm() < 1e-9) return true;
    }
  }
  return false;
}

std::string format_fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

} // namespace

const char* layer_name(LayerId id) {
  switch (id) {
    case LayerId::inner_cap: return "inner_cap";
    case LayerId::mid_ind: return "mid_ind";
    case LayerId::outer_cap: return "outer_cap";
  }
  return "unknown";
}

ArtworkLaws table1_override_laws() {
  ArtworkLaws laws;
  laws.use_override_table = true;
  laws.override_table = {{4.5, 0.8, 0.22}};
  return laws;
}

std::vector<TracePrimitive> capacitive_cell_artwork(const TessCell& cell, double w_c_mm,
                                                    double g_mm, LayerId layer,
                                                    const GoldbergTessellation& tess) {
  if (cell.kind != CellKind::hexagon)
    throw std::invalid_argument("capacitive hexagon artwork requires a hexagonal cell");
  if (!(w_c_mm > 0.0 && g_mm > 0.0)) throw std::domain_error("w_c and g must be positive");

  const CellFrame frame = cell_frame(cell);
  std::vector<Vector2d> boundary;
  boundary.reserve(cell.vertices.size());
  for (const Vector3d& p : cell.vertices) boundary.push_back(frame.to_plane(p));
  if (signed_area(boundary) < 0.0) std::reverse(boundary.begin(), boundary.end());

  const std::vector<Vector2d> rim = inset_polygon(boundary, (g_mm + w_c_mm) / 2.0);

  std::vector<TracePrimitive> traces;
  std::vector<Vector3d> rim3;
  rim3.reserve(rim.size() + 1);
  for (const Vector2d& q : rim) rim3.push_back(project_to_surface(frame.to_space(q), tess));
  rim3.push_back(rim3.front());
  traces.push_back(make_trace(std::move(rim3), w_c_mm, layer, cell.id));

  const Vector3d hub = project_to_surface(frame.to_space(Vector2d::Zero()), tess);
  for (const Vector2d& q : rim) {
    traces.push_back(make_trace({hub, project_to_surface(frame.to_space(q), tess)}, w_c_mm,
                                layer, cell.id));
  }
  return traces;
}

double edge_wire_width(double p2_a_mm, double p2_b_mm, const ArtworkLaws& laws) {
  const double p2 = 0.5 * (p2_a_mm + p2_b_mm);
  if (laws.use_override_table) {
    if (laws.override_table.empty()) throw std::invalid_argument("empty override table");
    const OverrideRow* best = &laws.override_table.front();
    for (const auto& row : laws.override_table) {
      if (std::abs(row.p2_mm - p2) < std::abs(best->p2_mm - p2)) best = &row;
    }
    return best->w_l_mm;
  }
  return wire_for_size(p2).mm;
}

std::vector<TracePrimitive> inductive_grid_artwork(const GoldbergTessellation& tess,
                                                   const ArtworkLaws& laws) {
  std::vector<TracePrimitive> traces;
  for (const TessEdge& edge : tess.edges) {
    if (edge.cell_b < 0) continue;
    const TessCell& a = tess.cells[edge.cell_a];
    const TessCell& b = tess.cells[edge.cell_b];
    if (a.kind != CellKind::hexagon || b.kind != CellKind::hexagon) continue;
    const double w = edge_wire_width(a.p2_mm, b.p2_mm, laws);
    traces.push_back(make_trace({tess.points[edge.v0], tess.points[edge.v1]}, w,
                                LayerId::mid_ind, std::min(edge.cell_a, edge.cell_b)));
  }
  return traces;
}

std::vector<TracePrimitive> pentagon_artwork(const TessCell& cell, LayerId layer,
                                             const PentagonGeom& geom,
                                             const GoldbergTessellation& tess) {
  if (cell.kind != CellKind::pentagon)
    throw std::invalid_argument("pentagon artwork requires a pentagonal cell");

  const CellFrame frame = cell_frame(cell);
  const Vector2d anchor = frame.to_plane(cell.vertices.front()).normalized();
  const double base = std::atan2(anchor.y(), anchor.x());

  double circumradius;
  if (layer == LayerId::mid_ind) {
    circumradius = geom.ind_side_mm / (2.0 * std::sin(kPi / 5.0));
  } else {
    const double diag = layer == LayerId::outer_cap ? geom.cap_diag_outer_mm
                                                    : geom.cap_diag_inner_mm;
    circumradius = diag / (2.0 * std::sin(2.0 * kPi / 5.0));
  }

  std::vector<Vector2d> ring(5);
  for (int k = 0; k < 5; ++k) {
    const double a = base + 2.0 * kPi * k / 5.0;
    ring[k] = circumradius * Vector2d(std::cos(a), std::sin(a));
  }

  std::vector<TracePrimitive> traces;
  std::vector<Vector3d> ring3;
  for (const Vector2d& q : ring) ring3.push_back(project_to_surface(frame.to_space(q), tess));
  ring3.push_back(ring3.front());
  traces.push_back(make_trace(std::move(ring3), geom.trace_width_mm, layer, cell.id));

  if (layer != LayerId::mid_ind) {
    const Vector3d hub = project_to_surface(frame.to_space(Vector2d::Zero()), tess);
    for (const Vector2d& q : ring) {
      traces.push_back(make_trace({hub, project_to_surface(frame.to_space(q), tess)},
                                  geom.trace_width_mm, layer, cell.id));
    }
  }
  return traces;
}

LayerArtwork build_layer(const GoldbergTessellation& tess, LayerId layer,
                         const ArtworkLaws& laws) {
  LayerArtwork art;
  art.layer_id = layer;
  art.radius_mm = tess.spec.radius_mm;

  if (layer == LayerId::mid_ind) {
    art.traces = inductive_grid_artwork(tess, laws);
    for (const TessCell& cell : tess.cells) {
      if (cell.kind == CellKind::pentagon) {
        auto pent = pentagon_artwork(cell, layer, laws.pentagon, tess);
        art.traces.insert(art.traces.end(), pent.begin(), pent.end());
        art.provenance[cell.id] = {0.0, laws.pentagon.ind_side_mm};
      } else {
        art.provenance[cell.id] = {cell.p2_mm, edge_wire_width(cell.p2_mm, cell.p2_mm, laws)};
      }
    }
    return art;
  }

  for (const TessCell& cell : tess.cells) {
    if (cell.kind == CellKind::pentagon) {
      auto pent = pentagon_artwork(cell, layer, laws.pentagon, tess);
      art.traces.insert(art.traces.end(), pent.begin(), pent.end());
      const double diag = layer == LayerId::outer_cap ? laws.pentagon.cap_diag_outer_mm
                                                      : laws.pentagon.cap_diag_inner_mm;
      art.provenance[cell.id] = {0.0, diag};
    } else {
      const double g = cell_gap(cell, laws);
      auto patch = capacitive_cell_artwork(cell, laws.w_c_mm, g, layer, tess);
      art.traces.insert(art.traces.end(), patch.begin(), patch.end());
      art.provenance[cell.id] = {cell.p2_mm, g};
    }
  }
  return art;
}

DrcReport drc_check(const LayerArtwork& artwork, double min_width_mm, double min_gap_mm) {
  DrcReport report;
  std::set<int> width_flagged;
  for (const TracePrimitive& t : artwork.traces) {
    if (t.width_mm < min_width_mm - 1e-12 && !width_flagged.count(t.cell_id)) {
      width_flagged.insert(t.cell_id);
      report.width_violations.push_back({t.cell_id, t.width_mm});
    }
  }

  // Self intersections: non-adjacent segments of one polyline closer than the
  // trace width.
  std::set<int> self_flagged;
  for (const TracePrimitive& t : artwork.traces) {
    const auto& pts = t.polyline_mm;
    const bool closed = pts.size() > 2 && (pts.front() - pts.back()).norm() < 1e-9;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      for (size_t j = i + 2; j + 1 < pts.size(); ++j) {
        if (closed && i == 0 && j + 2 == pts.size()) continue;
        if (min_segment_distance(pts[i], pts[i + 1], pts[j], pts[j + 1]) < t.width_mm * 0.5) {
          if (!self_flagged.count(t.cell_id)) {
            self_flagged.insert(t.cell_id);
            report.self_intersections.push_back(t.cell_id);
          }
        }
      }
    }
  }

  // Inter-trace clearance via a coarse spatial hash over bounding boxes.
  struct Box {
    Vector3d lo, hi;
  };
  std::vector<Box> boxes(artwork.traces.size());
  for (size_t i = 0; i < artwork.traces.size(); ++i) {
    Box b{Vector3d::Constant(1e30), Vector3d::Constant(-1e30)};
    for (const Vector3d& p : artwork.traces[i].polyline_mm) {
      b.lo = b.lo.cwiseMin(p);
      b.hi = b.hi.cwiseMax(p);
    }
    const double pad = artwork.traces[i].width_mm * 0.5 + min_gap_mm;
    b.lo.array() -= pad;
    b.hi.array() += pad;
    boxes[i] = b;
  }
  const double h = 8.0;
  std::unordered_map<long long, std::vector<int>> grid;
  auto bucket = [h](double x) { return static_cast<long long>(std::floor(x / h)); };
  for (size_t i = 0; i < boxes.size(); ++i) {
    for (long long x = bucket(boxes[i].lo.x()); x <= bucket(boxes[i].hi.x()); ++x)
      for (long long y = bucket(boxes[i].lo.y()); y <= bucket(boxes[i].hi.y()); ++y)
        for (long long z = bucket(boxes[i].lo.z()); z <= bucket(boxes[i].hi.z()); ++z)
          grid[(x * 73856093LL) ^ (y * 19349663LL) ^ (z * 83492791LL)].push_back(
              static_cast<int>(i));
  }
  std::set<std::pair<int, int>> tested;
  std::set<std::pair<int, int>> reported;
  for (auto& [key, ids] : grid) {
    for (size_t a = 0; a < ids.size(); ++a) {
      for (size_t b = a + 1; b < ids.size(); ++b) {
        int i = std::min(ids[a], ids[b]);
        int j = std::max(ids[a], ids[b]);
        const TracePrimitive& ti = artwork.traces[i];
        const TracePrimitive& tj = artwork.traces[j];
        if (ti.cell_id == tj.cell_id) continue;
        if (!tested.insert({i, j}).second) continue;
        if ((boxes[i].lo.array() > boxes[j].hi.array()).any() ||
            (boxes[j].lo.array() > boxes[i].hi.array()).any())
          continue;
        if (traces_share_endpoint(ti, tj)) continue;
        const double clearance =
            min_trace_distance(ti, tj) - 0.5 * (ti.width_mm + tj.width_mm);
        if (clearance < min_gap_mm) {
          const auto cells = std::minmax(ti.cell_id, tj.cell_id);
          if (reported.insert(cells).second) {
            report.clearance_violations.push_back({cells.first, cells.second, clearance});
          }
        }
      }
    }
  }
  return report;
}

std::string export_geometry_json(std::span<const LayerArtwork> layers) {
  nlohmann::ordered_json root;
  root["schema"] = "cfss-artwork";
  root["version"] = 1;
  root["units"] = "mm";
  nlohmann::ordered_json out_layers = nlohmann::ordered_json::array();
  for (const LayerArtwork& layer : layers) {
    nlohmann::ordered_json jl;
    jl["layer_id"] = layer_name(layer.layer_id);
    jl["radius_mm"] = round6(layer.radius_mm);
    nlohmann::ordered_json traces = nlohmann::ordered_json::array();
    for (const TracePrimitive& t : layer.traces) {
      nlohmann::ordered_json jt;
      jt["cell_id"] = t.cell_id;
      jt["width_mm"] = round6(t.width_mm);
      nlohmann::ordered_json pts = nlohmann::ordered_json::array();
      for (const Vector3d& p : t.polyline_mm) {
        pts.push_back({round6(p.x()), round6(p.y()), round6(p.z())});
      }
      jt["points"] = std::move(pts);
      traces.push_back(std::move(jt));
    }
    jl["traces"] = std::move(traces);
    nlohmann::ordered_json prov = nlohmann::ordered_json::object();
    for (const auto& [cell, p] : layer.provenance) {
      prov[std::to_string(cell)] = {{"p2_mm", round6(p.p2_mm)}, {"dim_mm", round6(p.dim_mm)}};
    }
    jl["provenance"] = std::move(prov);
    out_layers.push_back(std::move(jl));
  }
  root["layers"] = std::move(out_layers);
  return root.dump(1);
}

std::string export_svg(const LayerArtwork& layer, double skirt_height_mm) {
  const double r = layer.radius_mm;
  auto flatten = [&](const Vector3d& p) -> Vector2d {
    const double rho_xy = std::hypot(p.x(), p.y());
    double arc;
    if (p.z() >= 0.0) {
      arc = r * std::atan2(rho_xy, p.z()); // R * polar angle
    } else {
      arc = r * kPi / 2.0 - p.z(); // meridian length continued down the skirt
    }
    if (rho_xy < 1e-12) return {0.0, 0.0};
    return {arc * p.x() / rho_xy, arc * p.y() / rho_xy};
  };

  const double extent = r * kPi / 2.0 + skirt_height_mm + 5.0;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<!-- cfss-svg v1 layer=" << layer_name(layer.layer_id) << " units=mm -->\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
      << format_fixed(-extent, 3) << " " << format_fixed(-extent, 3) << " "
      << format_fixed(2 * extent, 3) << " " << format_fixed(2 * extent, 3) << "\">\n";
  for (const TracePrimitive& t : layer.traces) {
    svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\""
        << format_fixed(t.width_mm, 4) << "\" points=\"";
    for (size_t i = 0; i < t.polyline_mm.size(); ++i) {
      const Vector2d q = flatten(t.polyline_mm[i]);
      if (i) svg << " ";
      svg << format_fixed(q.x(), 4) << "," << format_fixed(q.y(), 4);
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string export_mesh(std::span<const LayerArtwork> layers) {
  struct Tri {
    Vector3d a, b, c;
  };
  std::vector<Tri> tris;
  for (const LayerArtwork& layer : layers) {
    for (const TracePrimitive& t : layer.traces) {
      const auto& pts = t.polyline_mm;
      if (pts.size() < 2) continue;
      std::vector<Vector3d> left(pts.size()), right(pts.size());
      for (size_t i = 0; i < pts.size(); ++i) {
        Vector3d tangent;
        if (i == 0) {
          tangent = pts[1] - pts[0];
        } else if (i + 1 == pts.size()) {
          tangent = pts[i] - pts[i - 1];
        } else {
          tangent = pts[i + 1] - pts[i - 1];
        }
        Vector3d n = pts[i].z() >= 0.0 ? pts[i].normalized()
                                       : Vector3d(pts[i].x(), pts[i].y(), 0.0).normalized();
        Vector3d lateral = n.cross(tangent);
        const double len = lateral.norm();
        if (len < 1e-12) lateral = n.unitOrthogonal();
        else lateral /= len;
        left[i] = pts[i] + 0.5 * t.width_mm * lateral;
        right[i] = pts[i] - 0.5 * t.width_mm * lateral;
      }
      for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const Vector3d n_out = pts[i].z() >= 0.0
                                   ? pts[i].normalized()
                                   : Vector3d(pts[i].x(), pts[i].y(), 0.0).normalized();
        auto push = [&](Vector3d a, Vector3d b, Vector3d c) {
          if ((b - a).cross(c - a).dot(n_out) < 0.0) std::swap(b, c);
          tris.push_back({a, b, c});
        };
        push(left[i], right[i], right[i + 1]);
        push(left[i], right[i + 1], left[i + 1]);
      }
    }
  }
  std::ostringstream os;
  os << "# cfss-mesh v1 units=mm triangles=" << tris.size() << "\n";
  os << "# one triangle per line: x1 y1 z1 x2 y2 z2 x3 y3 z3\n";
  for (const Tri& t : tris) {
    os << format_fixed(t.a.x(), 6) << " " << format_fixed(t.a.y(), 6) << " "
       << format_fixed(t.a.z(), 6) << " " << format_fixed(t.b.x(), 6) << " "
       << format_fixed(t.b.y(), 6) << " " << format_fixed(t.b.z(), 6) << " "
       << format_fixed(t.c.x(), 6) << " " << format_fixed(t.c.y(), 6) << " "
       << format_fixed(t.c.z(), 6) << "\n";
  }
  return os.str();
}

std::string export_tessellation_json(const GoldbergTessellation& tess) {
  nlohmann::ordered_json root;
  root["schema"] = "cfss-tessellation";
  root["version"] = 1;
  root["units"] = "mm";
  root["m"] = tess.spec.m;
  root["radius_mm"] = round6(tess.spec.radius_mm);
  root["hemisphere"] = tess.hemisphere;
  root["skirt_height_mm"] = round6(tess.skirt_height_mm);
  root["pentagons"] = tess.pentagon_count;
  root["hexagons"] = tess.hexagon_count;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const TessCell& c : tess.cells) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["kind"] = c.kind == CellKind::pentagon ? "pentagon" : "hexagon";
    jc["surface"] = c.surface == SurfaceKind::cylinder ? "cylinder" : "sphere";
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (const Vector3d& p : c.vertices) {
      verts.push_back({round6(p.x()), round6(p.y()), round6(p.z())});
    }
    jc["vertices"] = std::move(verts);
    jc["p2_mm"] = round6(c.p2_mm);
    jc["symmetry_class"] = c.symmetry_class;
    cells.push_back(std::move(jc));
  }
  root["cells"] = std::move(cells);
  return root.dump(1);
}

} // namespace cfss
