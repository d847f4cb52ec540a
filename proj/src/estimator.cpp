#include "cfss/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace cfss {

namespace {

using Eigen::Vector3d;

struct ShellHit {
  bool hit = false;
  Vector3d point{0, 0, 0};
  Vector3d normal{0, 0, 0};
};

// First crossing of the shell surface along origin + t*dir, t > 0: spherical
// section for z >= 0, cylinder of the same radius down to the skirt bottom.
ShellHit intersect_shell(const ShellModel& shell, const Vector3d& origin, const Vector3d& dir) {
  const double r = shell.sphere_radius_mm;
  ShellHit out;

  const Vector3d o = origin - shell.center;
  const double b = o.dot(dir);
  const double c = o.squaredNorm() - r * r;
  const double disc = b * b - c;
  if (disc >= 0.0) {
    const double t = -b + std::sqrt(disc);
    if (t > 0.0) {
      const Vector3d p = o + t * dir;
      if (p.z() >= 0.0) {
        out.hit = true;
        out.point = p + shell.center;
        out.normal = p.normalized();
        return out;
      }
    }
  }

  const double a2 = dir.x() * dir.x() + dir.y() * dir.y();
  if (a2 > 1e-18) {
    const double b2 = o.x() * dir.x() + o.y() * dir.y();
    const double c2 = o.x() * o.x() + o.y() * o.y() - r * r;
    const double disc2 = b2 * b2 - a2 * c2;
    if (disc2 >= 0.0) {
      const double t = (-b2 + std::sqrt(disc2)) / a2;
      if (t > 0.0) {
        const Vector3d p = o + t * dir;
        if (p.z() < 0.0 && p.z() >= -shell.skirt_height_mm) {
          out.hit = true;
          out.point = p + shell.center;
          out.normal = Vector3d(p.x(), p.y(), 0.0).normalized();
          return out;
        }
      }
    }
  }
  return out;
}

void check_feed_inside(const ShellModel& shell) {
  if ((shell.feed_position - shell.center).norm() >= shell.sphere_radius_mm)
    throw std::invalid_argument("feed must sit inside the shell");
}

// Eq.-3 polarization vector of the feed evaluated along a ray direction given
// in the feed frame (z along the pointing vector, x shared with the global
// x-axis for feeds scanned about x).
struct FeedRay {
  double theta;
  Complex e_amp;        // scalar amplitude including cos^q / r and phase
  Vector3d e_dir_global; // unit polarization direction
};

FeedRay evaluate_feed(const FeedSpec& feed, double f_hz, const Vector3d& dir, double r_m) {
  const Vector3d zf = feed.pointing;
  Vector3d xf = Vector3d::UnitX();
  if (std::abs(zf.dot(xf)) > 0.99) xf = Vector3d::UnitY();
  xf = (xf - zf * zf.dot(xf)).normalized();
  const Vector3d yf = zf.cross(xf);

  const double ct = std::clamp(dir.dot(zf), -1.0, 1.0);
  FeedRay ray;
  ray.theta = std::acos(ct);
  if (ray.theta > kPi / 2.0) {
    ray.e_amp = 0.0;
    ray.e_dir_global = xf;
    return ray;
  }

  const double st = std::sin(ray.theta);
  double phi = 0.0;
  Vector3d theta_hat = xf;
  Vector3d phi_hat = yf;
  if (st >= 1e-12) {
    phi = std::atan2(dir.dot(yf), dir.dot(xf));
    theta_hat = ct * (std::cos(phi) * xf + std::sin(phi) * yf) - st * zf;
    phi_hat = -std::sin(phi) * xf + std::cos(phi) * yf;
  }
  // The Eq.-3 polarization (cos(phi) theta_hat - sin(phi) phi_hat) is a real
  // unit vector; the complex scalar amplitude rides along it.
  ray.e_dir_global = std::cos(phi) * theta_hat - std::sin(phi) * phi_hat;
  const FieldSample s = raised_cosine_field(feed, f_hz, r_m, ray.theta, phi);
  ray.e_amp = s.e_theta * std::cos(phi) - s.e_phi * std::sin(phi);
  return ray;
}

Complex transmitted_amplitude(const ShellModel& shell, const FeedRay& ray, const Vector3d& dir,
                              const ShellHit& hit, double f_hz) {
  const double ci = std::clamp(std::abs(dir.dot(hit.normal)), -1.0, 1.0);
  double theta_inc = std::acos(ci);
  if (theta_inc < 1e-12) theta_inc = 0.0;

  Eigen::VectorXd one(1);
  one << f_hz;
  if (theta_inc == 0.0) {
    const SparamSpectrum sp = stack_response(shell.stack, one);
    return ray.e_amp * sp.s21[0];
  }

  Vector3d te_dir = dir.cross(hit.normal);
  const double te_norm = te_dir.norm();
  if (te_norm < 1e-12) {
    const SparamSpectrum sp = stack_response(shell.stack, one);
    return ray.e_amp * sp.s21[0];
  }
  te_dir /= te_norm;
  const Vector3d tm_dir = te_dir.cross(dir);
  const double a_te = ray.e_dir_global.dot(te_dir);
  const double a_tm = ray.e_dir_global.dot(tm_dir);

  const SparamSpectrum te = stack_response_oblique(shell.stack, one, theta_inc, Polarization::te);
  const SparamSpectrum tm = stack_response_oblique(shell.stack, one, theta_inc, Polarization::tm);
  const Complex et = ray.e_amp * a_te * te.s21[0];
  const Complex em = ray.e_amp * a_tm * tm.s21[0];
  // Orthogonal polarizations: report the total field magnitude with the
  // through-phase of the dominant component.
  const double mag = std::sqrt(std::norm(et) + std::norm(em));
  const Complex lead = std::abs(et) >= std::abs(em) ? et : em;
  const double lead_mag = std::abs(lead);
  return lead_mag > 0.0 ? lead * (mag / lead_mag) : Complex(0.0, 0.0);
}

} // namespace

Eigen::VectorXd boresight_transmission_db(const ShellModel& shell, const FeedSpec& feed,
                                          const Eigen::VectorXd& freq_hz) {
  check_feed_inside(shell);

  const Vector3d probe =
      shell.center + Vector3d(0.0, 0.0, shell.sphere_radius_mm + 60.0);
  const Vector3d d = probe - shell.feed_position;
  const double r_m = d.norm() / kMmPerMeter;
  const Vector3d dir = d.normalized();
  const ShellHit hit = intersect_shell(shell, shell.feed_position, dir);
  if (!hit.hit) throw std::runtime_error("boresight ray does not cross the shell");

  Eigen::VectorXd out(freq_hz.size());
  for (Eigen::Index i = 0; i < freq_hz.size(); ++i) {
    const FeedRay ray = evaluate_feed(feed, freq_hz[i], dir, r_m);
    if (std::abs(ray.e_amp) == 0.0) throw std::runtime_error("boresight probe behind the feed");
    const Complex with = transmitted_amplitude(shell, ray, dir, hit, freq_hz[i]);
    out[i] = 20.0 * std::log10(std::abs(with) / std::abs(ray.e_amp));
  }
  return out;
}

std::vector<ProbeSample> scanned_field(const ShellModel& shell, const FeedSpec& feed,
                                       const ProbeConfig& probes, double f_hz) {
  check_feed_inside(shell);

  FeedSpec scanned = feed;
  scanned.pointing =
      Vector3d(0.0, std::sin(probes.theta_feed_rad), std::cos(probes.theta_feed_rad));

  std::vector<ProbeSample> samples;
  samples.reserve(probes.theta_probe_rad.size());
  for (double tp : probes.theta_probe_rad) {
    if (!(tp >= 0.0 && tp <= kPi / 2.0))
      throw std::domain_error("probe angles must lie in [0, pi/2]");
    const Vector3d probe =
        shell.center + probes.r_mm * Vector3d(0.0, std::sin(tp), std::cos(tp));
    const Vector3d d = probe - shell.feed_position;
    const double r_m = d.norm() / kMmPerMeter;
    const Vector3d dir = d.normalized();

    ProbeSample sample{};
    sample.theta_probe_rad = tp;
    sample.edge_flag = std::abs(tp - kPi / 2.0) < 1e-9;

    const FeedRay ray = evaluate_feed(scanned, f_hz, dir, r_m);
    sample.e_abs_without = std::abs(ray.e_amp);

    const ShellHit hit = intersect_shell(shell, shell.feed_position, dir);
    if (!hit.hit) {
      sample.direct_path = true;
      sample.e_abs_with = sample.e_abs_without;
      sample.norm_db = 0.0;
    } else {
      const Complex with = transmitted_amplitude(shell, ray, dir, hit, f_hz);
      sample.e_abs_with = std::abs(with);
      sample.norm_db = sample.e_abs_without > 0.0
                           ? 20.0 * std::log10(sample.e_abs_with / sample.e_abs_without)
                           : std::nan("");
    }
    samples.push_back(sample);
  }
  return samples;
}

} // namespace cfss
