#include "cfss/postproc.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace cfss {

namespace {

void check_uniform_grid(const Eigen::VectorXd& f) {
  if (f.size() < 16) throw std::invalid_argument("sweep trace needs at least 16 points");
  const double df = f[1] - f[0];
  if (!(df > 0.0)) throw std::invalid_argument("frequency grid must be increasing");
  for (Eigen::Index i = 1; i < f.size(); ++i) {
    if (std::abs((f[i] - f[i - 1]) - df) > 1e-6 * df)
      throw std::invalid_argument("time gating requires a uniform frequency grid");
  }
}

double tukey(Eigen::Index i, Eigen::Index n, double alpha) {
  const double ramp = alpha * (n - 1) / 2.0;
  if (ramp <= 0.0) return 1.0;
  const double edge = std::min<double>(i, n - 1 - i);
  if (edge >= ramp) return 1.0;
  return 0.5 * (1.0 - std::cos(kPi * edge / ramp));
}

} // namespace

ApertureGrid gaussian_aperture(const GaussianSpec& spec, double f_hz) {
  if (!(f_hz > 0.0)) throw std::domain_error("frequency must be positive");
  if (!(spec.w0_mm > 0.0)) throw std::domain_error("beam waist must be positive");
  if (spec.spacing_lambda > 0.25 + 1e-12)
    throw std::invalid_argument("grid spacing above lambda/4 undersamples the aperture");

  const double lambda_mm = kSpeedOfLight / f_hz * kMmPerMeter;
  const double spacing = lambda_mm * spec.spacing_lambda;
  const double half_extent = std::min(3.0 * spec.w0_mm, spec.half_extent_mm);
  const int n_half = static_cast<int>(std::floor(half_extent / spacing + 1e-9));
  const int n = 2 * n_half + 1;

  ApertureGrid grid;
  grid.spacing_mm = spacing;
  grid.x_mm.resize(n);
  grid.y_mm.resize(n);
  for (int i = 0; i < n; ++i) {
    grid.x_mm[i] = (i - n_half) * spacing;
    grid.y_mm[i] = (i - n_half) * spacing;
  }
  grid.values.resize(n, n);
  const double inv_w02 = 1.0 / (spec.w0_mm * spec.w0_mm);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r2 = grid.x_mm[i] * grid.x_mm[i] + grid.y_mm[j] * grid.y_mm[j];
      grid.values(i, j) = std::exp(-r2 * inv_w02);
    }
  }
  return grid;
}

Eigen::MatrixXcd backproject_farfield(const ApertureGrid& grid, const Eigen::VectorXd& theta_rad,
                                      const Eigen::VectorXd& phi_rad, double f_hz) {
  if (grid.x_mm.size() == 0 || grid.y_mm.size() == 0)
    throw std::invalid_argument("empty aperture grid");
  if (theta_rad.size() == 0 || phi_rad.size() == 0)
    throw std::invalid_argument("empty angular grid");
  if (!(f_hz > 0.0)) throw std::domain_error("frequency must be positive");

  const double k = 2.0 * kPi * f_hz / kSpeedOfLight / kMmPerMeter; // rad/mm
  Eigen::MatrixXcd ffg(theta_rad.size(), phi_rad.size());

  // Separable phase sum: for fixed (theta, phi) the kernel factors over x and y.
  for (Eigen::Index it = 0; it < theta_rad.size(); ++it) {
    const double ks = k * std::sin(theta_rad[it]);
    for (Eigen::Index ip = 0; ip < phi_rad.size(); ++ip) {
      const double kx = ks * std::cos(phi_rad[ip]);
      const double ky = ks * std::sin(phi_rad[ip]);
      Eigen::VectorXcd ex(grid.x_mm.size()), ey(grid.y_mm.size());
      for (Eigen::Index i = 0; i < grid.x_mm.size(); ++i)
        ex[i] = std::exp(Complex(0.0, kx * grid.x_mm[i]));
      for (Eigen::Index j = 0; j < grid.y_mm.size(); ++j)
        ey[j] = std::exp(Complex(0.0, ky * grid.y_mm[j]));
      Complex sum = 0.0;
      for (Eigen::Index i = 0; i < grid.x_mm.size(); ++i) {
        Complex row = 0.0;
        for (Eigen::Index j = 0; j < grid.y_mm.size(); ++j) row += grid.values(i, j) * ey[j];
        sum += ex[i] * row;
      }
      ffg(it, ip) = sum;
    }
  }
  return ffg;
}

Complex gaussian_weighting(const Eigen::MatrixXcd& meas, const Eigen::MatrixXcd& ffg,
                           const Eigen::VectorXd& theta_rad) {
  if (meas.rows() != ffg.rows() || meas.cols() != ffg.cols() || meas.rows() != theta_rad.size())
    throw std::invalid_argument("measured grid and FF_G grid do not match");
  Complex sum = 0.0;
  for (Eigen::Index it = 0; it < meas.rows(); ++it) {
    const double st = std::sin(theta_rad[it]);
    for (Eigen::Index ip = 0; ip < meas.cols(); ++ip) {
      sum += meas(it, ip) * ffg(it, ip) * st;
    }
  }
  return sum;
}

CalibratedTrace normalize_calibration(const SweepTrace& with_sample,
                                      const SweepTrace& without_sample) {
  if (with_sample.freq_hz.size() != without_sample.freq_hz.size() ||
      (with_sample.freq_hz - without_sample.freq_hz).cwiseAbs().maxCoeff() > 1e-3)
    throw std::invalid_argument("calibration spectra are on different grids");

  CalibratedTrace out;
  out.freq_hz = with_sample.freq_hz;
  out.transmission_db.resize(out.freq_hz.size());
  for (Eigen::Index i = 0; i < out.freq_hz.size(); ++i) {
    const double denom = std::abs(without_sample.s21[i]);
    if (denom <= 0.0) {
      out.transmission_db[i] = std::nan("");
      out.flagged.push_back(static_cast<int>(i));
    } else {
      out.transmission_db[i] = 20.0 * std::log10(std::abs(with_sample.s21[i]) / denom);
    }
  }
  return out;
}

SweepTrace time_gate(const SweepTrace& trace, const GateConfig& config) {
  check_uniform_grid(trace.freq_hz);
  if (trace.s21.size() != trace.freq_hz.size())
    throw std::invalid_argument("trace columns are misaligned");
  const Eigen::Index n = trace.freq_hz.size();
  const double df = trace.freq_hz[1] - trace.freq_hz[0];
  const double window_s = config.window_ns * 1e-9;
  if (!(window_s > 0.0)) throw std::invalid_argument("gate window must be positive");
  if (window_s >= 1.0 / df)
    throw std::invalid_argument("gate window exceeds the unambiguous range 1/df");
  if (config.pad_factor < 1) throw std::invalid_argument("pad factor must be >= 1");

  // Band-edge taper, inverted again after gating where it stays above 1/2.
  Eigen::VectorXd taper(n);
  for (Eigen::Index i = 0; i < n; ++i) taper[i] = tukey(i, n, config.edge_taper_fraction);

  size_t m = 1;
  while (m < static_cast<size_t>(n) * config.pad_factor) m <<= 1;

  std::vector<Complex> spectrum(m, Complex(0.0, 0.0));
  for (Eigen::Index i = 0; i < n; ++i) spectrum[i] = trace.s21[i] * taper[i];

  Eigen::FFT<double> fft;
  std::vector<Complex> impulse(m);
  fft.inv(impulse, spectrum);

  const double dt = 1.0 / (static_cast<double>(m) * df);
  size_t peak = 0;
  if (config.auto_center) {
    double best = -1.0;
    for (size_t i = 0; i < m; ++i) {
      const double a = std::abs(impulse[i]);
      if (a > best) {
        best = a;
        peak = i;
      }
    }
  } else {
    double center = config.center_ns * 1e-9;
    center = std::fmod(center, 1.0 / df);
    if (center < 0.0) center += 1.0 / df;
    peak = static_cast<size_t>(std::llround(center / dt)) % m;
  }

  const double half = window_s / 2.0;
  const double range = static_cast<double>(m) * dt;
  for (size_t i = 0; i < m; ++i) {
    double delta = (static_cast<double>(i) - static_cast<double>(peak)) * dt;
    if (delta > range / 2.0) delta -= range;
    if (delta < -range / 2.0) delta += range;
    double g = 0.0;
    if (std::abs(delta) <= half) {
      g = config.shape == GateShape::hann ? 0.5 * (1.0 + std::cos(kPi * delta / half)) : 1.0;
    }
    impulse[i] *= g;
  }

  fft.fwd(spectrum, impulse);

  SweepTrace out;
  out.freq_hz = trace.freq_hz;
  out.s21.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.s21[i] = taper[i] >= 0.5 ? spectrum[i] / taper[i] : spectrum[i];
  }
  return out;
}

double waist_for_containment(double sample_radius_mm, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw std::domain_error("fraction must be in (0, 1)");
  if (!(sample_radius_mm > 0.0)) throw std::domain_error("sample radius must be positive");
  return sample_radius_mm * std::sqrt(-2.0 / std::log(1.0 - fraction));
}

double contained_power_fraction(double sample_radius_mm, double w0_mm) {
  const double r = sample_radius_mm / w0_mm;
  return 1.0 - std::exp(-2.0 * r * r);
}

} // namespace cfss
