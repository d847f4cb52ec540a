#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cfss/tmm.hpp"

namespace cfss {

// Synthetic Gaussian excitation g(x, y) = exp(-(x^2+y^2)/w0^2) sampled on a
// uniform grid of lambda * spacing_lambda at the sample plane.
struct GaussianSpec {
  double w0_mm = 69.0;
  double spacing_lambda = 0.125;
  double half_extent_mm = 75.0;
};

struct ApertureGrid {
  Eigen::VectorXd x_mm;
  Eigen::VectorXd y_mm;
  Eigen::MatrixXd values; // values(i, j) = g(x_mm[i], y_mm[j])
  double spacing_mm;
};

// (theta, phi, frequency)-gridded complex transmission samples.
struct FarFieldGrid {
  Eigen::VectorXd theta_rad;
  Eigen::VectorXd phi_rad;
  Eigen::VectorXd freq_hz;
  std::vector<Eigen::MatrixXcd> s21; // one theta x phi matrix per frequency
};

// Uniform frequency sweep of complex S21.
struct SweepTrace {
  Eigen::VectorXd freq_hz;
  Eigen::VectorXcd s21;
};

ApertureGrid gaussian_aperture(const GaussianSpec& spec, double f_hz);

// FF_G(theta, phi) = sum_x sum_y g(x,y) exp(+jk sin(theta)(x cos(phi) + y sin(phi))).
Eigen::MatrixXcd backproject_farfield(const ApertureGrid& grid, const Eigen::VectorXd& theta_rad,
                                      const Eigen::VectorXd& phi_rad, double f_hz);

// S21_Gaussian = sum_theta sum_phi S21(theta,phi) * FF_G(theta,phi) * sin(theta).
Complex gaussian_weighting(const Eigen::MatrixXcd& meas, const Eigen::MatrixXcd& ffg,
                           const Eigen::VectorXd& theta_rad);

// 20*log10(|with| / |without|) per frequency; zero calibration samples are
// flagged (NaN in the output) rather than fatal.
struct CalibratedTrace {
  Eigen::VectorXd freq_hz;
  Eigen::VectorXd transmission_db;
  std::vector<int> flagged;
};
CalibratedTrace normalize_calibration(const SweepTrace& with_sample,
                                      const SweepTrace& without_sample);

enum class GateShape { hann, rectangular };

struct GateConfig {
  double window_ns = 0.5;
  bool auto_center = true;
  double center_ns = 0.0;
  GateShape shape = GateShape::hann;
  int pad_factor = 4;
  double edge_taper_fraction = 0.1; // Tukey ramp share applied before the transform
};

SweepTrace time_gate(const SweepTrace& trace, const GateConfig& config = {});

// Solves 1 - exp(-2 a^2 / w0^2) = fraction for w0.
double waist_for_containment(double sample_radius_mm, double fraction);

// Power fraction of |g|^2 falling inside radius a for waist w0.
double contained_power_fraction(double sample_radius_mm, double w0_mm);

} // namespace cfss
