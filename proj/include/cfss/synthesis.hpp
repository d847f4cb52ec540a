#pragma once

#include <vector>

#include "cfss/tmm.hpp"

namespace cfss {

// Hexagonal unit-cell geometry. Lengths in mm; p is the long diagonal and
// p2 = (sqrt(3)/2) * p the short (across-flats) diagonal.
struct UnitCellGeom {
  double p_mm;
  double p2_mm;
  double w_l_mm;
  double w_c_mm;
  double g_mm;
  double dx_mm;
  double dy_mm;
  double patch_edge_mm;    // R = D_y - g
  double aperture_edge_mm; // r = D_y - w_L
};

UnitCellGeom make_unit_cell_geom(double p2_mm, double g_mm, double w_l_mm, double w_c_mm);

struct MediumParams {
  double eps_eff = 1.0;
  double mu_eff = 1.0;
};

// Design goal for the L/C sweep: pass band above min_pass_db, stop-band
// probes at or below max_stop_db.
struct BandTarget {
  double f_lo_hz;
  double f_hi_hz;
  double min_pass_db;
  std::vector<double> stop_freqs_hz;
  double max_stop_db;
};

// Effective capacitance of a hexagonal patch lattice (mapped to the square
// lattice formula through D_y).
double patch_capacitance(double dy_mm, double g_mm, double eps_eff);

// Effective inductance of a hexagonal wire grid.
double grid_inductance(double dy_mm, double wl_mm, double mu_eff);

// Equi-impedance scaling laws g(p2) and w_L(p2). The validated p2 range is
// [3.22, 4.76] mm; outside it the value is still produced with the flag
// cleared.
struct ScaledDim {
  double mm;
  bool in_validated_range;
};

ScaledDim gap_for_size(double p2_mm);
ScaledDim wire_for_size(double p2_mm);

inline constexpr double kScalingP2MinMm = 3.22;
inline constexpr double kScalingP2MaxMm = 4.76;

// Sheet value recovered from the transmission of a single sheet embedded in
// a homogeneous medium of impedance z_medium. S21 = 1 yields a degenerate
// sheet (C = 0 / L = infinite).
struct ExtractedSheet {
  double value; // farads or henries; 0 when degenerate
  bool degenerate;
};

ExtractedSheet extract_sheet_value(Complex s21, double f_hz, double z_medium_ohm, SheetKind kind);

// One point of the L/C sweep. score_db = clamped worst in-band deficit plus
// clamped worst stop-band leakage; zero means the target is met.
struct LcCandidate {
  double c_farads;
  double l_henries;
  double score_db;
  bool feasible;
};

struct StackTemplate {
  double d1_m;
  double d2_m;
  double eps_r;
  double tan_delta = 0.0;
  double z0_ohm = kFreeSpaceImpedance;
};

struct SweepRange {
  double lo;
  double hi;
  int count;
};

struct SynthesisResult {
  std::vector<LcCandidate> candidates; // sorted by score, then C, then L
  bool any_feasible;
};

SynthesisResult synthesize_lc(const BandTarget& target, const StackTemplate& tmpl,
                              const SweepRange& c_range, const SweepRange& l_range,
                              int band_samples = 51);

} // namespace cfss
