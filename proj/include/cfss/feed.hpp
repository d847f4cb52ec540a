#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cfss/tmm.hpp"

namespace cfss {

// Raised-cosine feed: E = E0 * exp(-jkr)/r * cos^q(theta), zero behind the
// aperture plane (theta > 90 degrees).
struct FeedSpec {
  double q = 2.0;
  double e0 = 1.0;
  Eigen::Vector3d pointing{0.0, 0.0, 1.0};
};

// Horn datasheet columns used for q fitting.
struct HornData {
  Eigen::VectorXd freq_hz;
  Eigen::VectorXd gain_dbi;
  Eigen::VectorXd beamwidth_deg; // full 3-dB beamwidth
};

struct FieldSample {
  Complex e_theta;
  Complex e_phi;
};

FieldSample raised_cosine_field(const FeedSpec& spec, double f_hz, double r_m, double theta_rad,
                                double phi_rad);

// Directivity-match relation: q = D/4 - 1/2.
double q_from_directivity(double d_linear);

// Beamwidth-match relation evaluated as the exact half-power condition,
// q = -0.15 / log10(cos(theta_bw/2)). literal_printed_form switches to the
// natural-log full-angle form as printed.
double q_from_beamwidth(double theta_bw_full_deg, bool literal_printed_form = false);

struct QFit {
  Eigen::VectorXd freq_hz;
  Eigen::VectorXd q_dir;
  Eigen::VectorXd q_bw;
  Eigen::VectorXd q_avg;
  std::vector<int> excluded; // rows where either sub-fit was infeasible
};

QFit fit_q(const HornData& horn, bool literal_printed_form = false);

// D = 2 / integral(cos^,2q theta sin theta, 0..pi/2) by adaptive quadrature;
// equals 2(2q+1) in closed form.
double directivity_numeric(double q);

} // namespace cfss
