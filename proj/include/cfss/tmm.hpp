#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cfss/constants.hpp"

namespace cfss {

using Complex = std::complex<double>;

// 2x2 transfer matrix of a two-port block, laid out [[a, b], [c, d]].
// b carries ohm, c carries siemens; a and d are dimensionless.
using AbcdMatrix = Eigen::Matrix2cd;

enum class SheetKind { capacitive, inductive };

// Lumped shunt sheet: capacitance in farads or inductance in henries.
struct SheetElement {
  SheetKind kind;
  double value;
};

struct DielectricLayer {
  double thickness_m;
  double eps_r;
  double loss_tangent = 0.0;
};

using StackBlock = std::variant<DielectricLayer, SheetElement>;

// Layered filter description: ordered blocks between two terminations of
// impedance z0_ohm. Metal conductivity is carried as metadata only; the
// circuit model does not model conductor loss.
struct StackSpec {
  std::vector<StackBlock> blocks;
  double z0_ohm = kFreeSpaceImpedance;
  double metal_conductivity_s_per_m = 1e6;

  bool is_symmetric() const; // block list reads identically reversed
};

enum class Polarization { te, tm };

struct SparamSpectrum {
  Eigen::VectorXd freq_hz;
  Eigen::VectorXcd s11;
  Eigen::VectorXcd s21;
  bool symmetric = false; // when set, s22 := s11 and s12 := s21
};

struct SparamPair {
  Complex s11;
  Complex s21;
};

// Shunt admittance of a sheet at frequency f: jwC or 1/(jwL).
Complex sheet_admittance(const SheetElement& element, double f_hz);

// [[1,0],[Y,1]] for a shunt sheet.
AbcdMatrix shunt_sheet_abcd(const SheetElement& element, double f_hz);

// Transmission-line block of a dielectric layer at normal incidence.
// Loss enters through eps_r*(1 - j*tan_delta).
AbcdMatrix dielectric_line_abcd(const DielectricLayer& layer, double f_hz,
                                double z0_ohm = kFreeSpaceImpedance);

// Left-to-right matrix product of cascaded blocks.
AbcdMatrix cascade(std::span<const AbcdMatrix> blocks);

// S-parameters referenced to the termination impedance z0.
SparamPair abcd_to_sparams(const AbcdMatrix& t, double z0_ohm);

SparamSpectrum stack_response(const StackSpec& stack, const Eigen::VectorXd& freq_hz);

// Oblique-incidence response. theta is the free-space incidence angle;
// impedances become Z/cos(theta) (TE) or Z*cos(theta) (TM) and the line
// phase uses the longitudinal propagation constant after Snell refraction.
// theta = 0 reduces bit-exactly to stack_response for either polarization.
SparamSpectrum stack_response_oblique(const StackSpec& stack, const Eigen::VectorXd& freq_hz,
                                      double theta_rad, Polarization pol);

// The paper's symmetric unit-cell stack: d2 | C | d1 | L | d1 | C | d2.
StackSpec make_clc_stack(double c_farads, double l_henries, double d1_m, double d2_m,
                         double eps_r, double tan_delta = 0.0,
                         double z0_ohm = kFreeSpaceImpedance);

// Default frequency grid, 1-30 GHz in 10 MHz steps.
Eigen::VectorXd default_freq_grid();

} // namespace cfss
