#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cfss/feed.hpp"
#include "cfss/tmm.hpp"

namespace cfss {

// Probe placement: a boresight probe above the structure and scan probes on
// a sphere of radius r_mm around the source.
struct ProbeConfig {
  double r_probe_mm = 60.0;
  double r_mm = 136.0;
  std::vector<double> theta_probe_rad;
  double theta_feed_rad = 0.0;
};

// Thin spherical shell (mid-layer radius) with an optional cylindrical skirt,
// carrying the unit-cell stack for per-ray transmission.
struct ShellModel {
  Eigen::Vector3d center{0.0, 0.0, 0.0};
  double sphere_radius_mm = 73.75;
  double skirt_height_mm = 25.0;
  StackSpec stack;
  Eigen::Vector3d feed_position{0.0, 0.0, 0.0};
};

// Ratio of the probe field with the shell in place to the field without it.
// Center-fed rays cross the spherical section at normal incidence, so this
// reduces exactly to the unit-cell response.
Eigen::VectorXd boresight_transmission_db(const ShellModel& shell, const FeedSpec& feed,
                                          const Eigen::VectorXd& freq_hz);

struct ProbeSample {
  double theta_probe_rad;
  double e_abs_with;
  double e_abs_without;
  double norm_db;
  bool direct_path; // ray reached the probe without crossing the shell
  bool edge_flag;   // horizon probe; edge scattering is reported, not modeled
};

std::vector<ProbeSample> scanned_field(const ShellModel& shell, const FeedSpec& feed,
                                       const ProbeConfig& probes, double f_hz);

} // namespace cfss
