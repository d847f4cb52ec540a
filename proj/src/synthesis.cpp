#include "cfss/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfss {

UnitCellGeom make_unit_cell_geom(double p2_mm, double g_mm, double w_l_mm, double w_c_mm) {
  if (!(p2_mm > 0.0 && g_mm > 0.0 && w_l_mm > 0.0 && w_c_mm > 0.0))
    throw std::domain_error("unit cell dimensions must be positive");
  if (!(g_mm < p2_mm)) throw std::domain_error("gap must be smaller than p2");
  if (!(w_l_mm < p2_mm)) throw std::domain_error("wire width must be smaller than p2");
  UnitCellGeom geom;
  geom.p2_mm = p2_mm;
  geom.p_mm = 2.0 * p2_mm / std::sqrt(3.0);
  geom.g_mm = g_mm;
  geom.w_l_mm = w_l_mm;
  geom.w_c_mm = w_c_mm;
  geom.dy_mm = p2_mm;
  geom.dx_mm = std::sqrt(3.0) * p2_mm;
  geom.patch_edge_mm = p2_mm - g_mm;
  geom.aperture_edge_mm = p2_mm - w_l_mm;
  return geom;
}

double patch_capacitance(double dy_mm, double g_mm, double eps_eff) {
  if (!(g_mm > 0.0 && g_mm <= dy_mm)) throw std::domain_error("require 0 < g <= D_y");
  if (!(eps_eff >= 1.0)) throw std::domain_error("eps_eff must be >= 1");
  const double dy = dy_mm / kMmPerMeter;
  const double arg = std::sin(kPi * g_mm / (2.0 * dy_mm));
  return kVacuumPermittivity * eps_eff * (2.0 * dy / kPi) * std::log(1.0 / arg);
}

double grid_inductance(double dy_mm, double wl_mm, double mu_eff) {
  if (!(wl_mm > 0.0 && wl_mm <= dy_mm)) throw std::domain_error("require 0 < w_L <= D_y");
  if (!(mu_eff > 0.0)) throw std::domain_error("mu_eff must be positive");
  const double dy = dy_mm / kMmPerMeter;
  const double arg = std::sin(kPi * wl_mm / (2.0 * dy_mm));
  return kVacuumPermeability * mu_eff * (dy / (2.0 * kPi)) * std::log(1.0 / arg);
}

ScaledDim gap_for_size(double p2_mm) {
  const double g = (0.3 / 0.8) * p2_mm - 0.88;
  if (!(g > 0.0)) throw std::domain_error("infeasible geometry: g(p2) <= 0");
  return {g, p2_mm >= kScalingP2MinMm && p2_mm <= kScalingP2MaxMm};
}

ScaledDim wire_for_size(double p2_mm) {
  const double w = (0.2 / 0.85) * p2_mm - 0.6;
  if (!(w > 0.0)) throw std::domain_error("infeasible geometry: w_L(p2) <= 0");
  return {w, p2_mm >= kScalingP2MinMm && p2_mm <= kScalingP2MaxMm};
}

ExtractedSheet extract_sheet_value(Complex s21, double f_hz, double z_medium_ohm, SheetKind kind) {
  if (!(f_hz > 0.0)) throw std::domain_error("frequency must be positive");
  if (!(z_medium_ohm > 0.0)) throw std::domain_error("medium impedance must be positive");
  const double mag = std::abs(s21);
  if (!(mag > 0.0 && mag <= 1.0 + 1e-12))
    throw std::domain_error("|S21| of a passive shunt sheet must lie in (0, 1]");

  // Invert S21 = 2 / (2 + Y*Z).
  const Complex y = (2.0 / s21 - 2.0) / z_medium_ohm;
  const double w = 2.0 * kPi * f_hz;
  if (std::abs(y) < 1e-15) return {0.0, true};
  if (kind == SheetKind::capacitive) {
    if (y.imag() <= 0.0) throw std::domain_error("sheet admittance is not capacitive");
    return {y.imag() / w, false};
  }
  if (y.imag() >= 0.0) throw std::domain_error("sheet admittance is not inductive");
  return {-1.0 / (w * y.imag()), false};
}

SynthesisResult synthesize_lc(const BandTarget& target, const StackTemplate& tmpl,
                              const SweepRange& c_range, const SweepRange& l_range,
                              int band_samples) {
  if (!(target.f_lo_hz > 0.0 && target.f_lo_hz < target.f_hi_hz))
    throw std::invalid_argument("band target requires 0 < f_lo < f_hi");
  if (c_range.count < 1 || l_range.count < 1 || !(c_range.lo > 0.0) || !(l_range.lo > 0.0))
    throw std::invalid_argument("sweep ranges must be positive and non-empty");
  if (band_samples < 2) throw std::invalid_argument("band_samples must be >= 2");

  Eigen::VectorXd band(band_samples);
  for (int i = 0; i < band_samples; ++i) {
    band[i] = target.f_lo_hz + (target.f_hi_hz - target.f_lo_hz) * i / (band_samples - 1);
  }

  auto grid_value = [](const SweepRange& r, int i) {
    if (r.count == 1) return r.lo;
    return r.lo + (r.hi - r.lo) * i / (r.count - 1);
  };

  SynthesisResult result;
  result.candidates.reserve(static_cast<size_t>(c_range.count) * l_range.count);
  for (int ic = 0; ic < c_range.count; ++ic) {
    const double c = grid_value(c_range, ic);
    for (int il = 0; il < l_range.count; ++il) {
      const double l = grid_value(l_range, il);
      const StackSpec stack =
          make_clc_stack(c, l, tmpl.d1_m, tmpl.d2_m, tmpl.eps_r, tmpl.tan_delta, tmpl.z0_ohm);

      const SparamSpectrum pass = stack_response(stack, band);
      double worst_pass_db = std::numeric_limits<double>::infinity();
      for (int i = 0; i < band_samples; ++i) {
        worst_pass_db = std::min(worst_pass_db, 20.0 * std::log10(std::abs(pass.s21[i])));
      }
      double worst_stop_db = -std::numeric_limits<double>::infinity();
      for (double fs : target.stop_freqs_hz) {
        Eigen::VectorXd one(1);
        one << fs;
        const SparamSpectrum stop = stack_response(stack, one);
        worst_stop_db = std::max(worst_stop_db, 20.0 * std::log10(std::abs(stop.s21[0])));
      }

      const double deficit = std::max(0.0, target.min_pass_db - worst_pass_db);
      const double leakage = target.stop_freqs_hz.empty()
                                 ? 0.0
                                 : std::max(0.0, worst_stop_db - target.max_stop_db);
      const double score = deficit + leakage;
      result.candidates.push_back({c, l, score, score == 0.0});
    }
  }

  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const LcCandidate& a, const LcCandidate& b) {
              if (a.score_db != b.score_db) return a.score_db < b.score_db;
              if (a.c_farads != b.c_farads) return a.c_farads < b.c_farads;
              return a.l_henries < b.l_henries;
            });
  result.any_feasible =
      !result.candidates.empty() && result.candidates.front().feasible;
  return result;
}

} // namespace cfss
