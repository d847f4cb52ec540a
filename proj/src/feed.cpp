#include "cfss/feed.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cfss {

namespace {

double adaptive_simpson(double (*f)(double, double), double q, double a, double b, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a, q), fm = f(m, q), fb = f(b, q);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

  struct Frame {
    double a, b, fa, fm, fb, whole;
    int depth;
  };
  std::vector<Frame> stack{{a, b, fa, fm, fb, whole, depth}};
  double total = 0.0;
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (fr.a + fr.b);
    const double lm = 0.5 * (fr.a + mid);
    const double rm = 0.5 * (mid + fr.b);
    const double flm = f(lm, q);
    const double frm = f(rm, q);
    const double left = (mid - fr.a) / 6.0 * (fr.fa + 4.0 * flm + fr.fm);
    const double right = (fr.b - mid) / 6.0 * (fr.fm + 4.0 * frm + fr.fb);
    if (fr.depth <= 0 || std::abs(left + right - fr.whole) < 15.0 * tol) {
      total += left + right + (left + right - fr.whole) / 15.0;
    } else {
      stack.push_back({fr.a, mid, fr.fa, flm, fr.fm, left, fr.depth - 1});
      stack.push_back({mid, fr.b, fr.fm, frm, fr.fb, right, fr.depth - 1});
    }
  }
  return total;
}

double power_pattern(double theta, double q) {
  return std::pow(std::cos(theta), 2.0 * q) * std::sin(theta);
}

} // namespace

FieldSample raised_cosine_field(const FeedSpec& spec, double f_hz, double r_m, double theta_rad,
                                double phi_rad) {
  if (!(f_hz > 0.0)) throw std::domain_error("frequency must be positive");
  if (!(r_m > 0.0)) throw std::domain_error("raised-cosine field is singular at r = 0");
  if (spec.q < 0.0) throw std::domain_error("q must be >= 0");
  if (std::abs(spec.pointing.norm() - 1.0) > 1e-12)
    throw std::domain_error("feed pointing vector must be normalized");

  if (theta_rad > kPi / 2.0) return {0.0, 0.0};

  const double k = 2.0 * kPi * f_hz / kSpeedOfLight;
  const double mag = spec.e0 * std::pow(std::cos(theta_rad), spec.q) / r_m;
  const Complex phase = std::exp(Complex(0.0, -k * r_m));
  const Complex amp = mag * phase;
  return {amp * std::cos(phi_rad), -amp * std::sin(phi_rad)};
}

double q_from_directivity(double d_linear) {
  if (d_linear < 2.0) throw std::domain_error("directivity below 2 gives q < 0");
  return d_linear / 4.0 - 0.5;
}

double q_from_beamwidth(double theta_bw_full_deg, bool literal_printed_form) {
  if (!(theta_bw_full_deg > 0.0 && theta_bw_full_deg < 180.0))
    throw std::domain_error("3-dB beamwidth must lie in (0, 180) degrees");
  if (literal_printed_form) {
    const double c = std::cos(theta_bw_full_deg * kPi / 180.0);
    if (c <= 0.0) throw std::domain_error("printed form undefined for beamwidth >= 90 degrees");
    return -0.15 / std::log(c);
  }
  const double half = 0.5 * theta_bw_full_deg * kPi / 180.0;
  if (half >= kPi / 2.0) throw std::domain_error("half beamwidth must be below 90 degrees");
  return -0.15 / std::log10(std::cos(half));
}

QFit fit_q(const HornData& horn, bool literal_printed_form) {
  const Eigen::Index n = horn.freq_hz.size();
  if (horn.gain_dbi.size() != n || horn.beamwidth_deg.size() != n)
    throw std::invalid_argument("horn data columns are misaligned");
  if (n == 0) throw std::invalid_argument("horn data is empty");

  QFit fit;
  fit.freq_hz = horn.freq_hz;
  fit.q_dir.resize(n);
  fit.q_bw.resize(n);
  fit.q_avg.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    bool ok = true;
    double qd = 0.0, qb = 0.0;
    try {
      qd = q_from_directivity(std::pow(10.0, horn.gain_dbi[i] / 10.0));
      qb = q_from_beamwidth(horn.beamwidth_deg[i], literal_printed_form);
    } catch (const std::domain_error&) {
      ok = false;
    }
    if (ok) {
      fit.q_dir[i] = qd;
      fit.q_bw[i] = qb;
      fit.q_avg[i] = 0.5 * (qd + qb);
    } else {
      fit.q_dir[i] = fit.q_bw[i] = fit.q_avg[i] = std::nan("");
      fit.excluded.push_back(static_cast<int>(i));
    }
  }
  return fit;
}

double directivity_numeric(double q) {
  if (q < 0.0) throw std::domain_error("q must be >= 0");
  const double integral = adaptive_simpson(power_pattern, q, 0.0, kPi / 2.0, 1e-14, 30);
  return 2.0 / integral;
}

} // namespace cfss
