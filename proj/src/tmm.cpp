#include "cfss/tmm.hpp"

#include <cmath>
#include <stdexcept>

namespace cfss {

namespace {

bool blocks_equal(const StackBlock& a, const StackBlock& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<DielectricLayer>(a)) {
    const auto& da = std::get<DielectricLayer>(a);
    const auto& db = std::get<DielectricLayer>(b);
    return da.thickness_m == db.thickness_m && da.eps_r == db.eps_r &&
           da.loss_tangent == db.loss_tangent;
  }
  const auto& sa = std::get<SheetElement>(a);
  const auto& sb = std::get<SheetElement>(b);
  return sa.kind == sb.kind && sa.value == sb.value;
}

void check_frequency(double f_hz) {
  if (!(f_hz > 0.0)) throw std::domain_error("frequency must be positive");
}

// Longitudinal refractive index n_z = sqrt(eps_c - sin^2 theta) and the
// polarization-dependent wave impedance of a medium with complex eps_c.
struct ObliqueMedium {
  Complex nz;
  Complex z_wave;
};

ObliqueMedium oblique_medium(Complex eps_c, double sin2_theta, double z0_ohm,
                             Polarization pol, bool normal_incidence) {
  ObliqueMedium m;
  m.nz = std::sqrt(eps_c - sin2_theta);
  if (normal_incidence) {
    m.z_wave = z0_ohm / m.nz;
  } else if (pol == Polarization::te) {
    m.z_wave = z0_ohm / m.nz;
  } else {
    m.z_wave = z0_ohm * m.nz / eps_c;
  }
  return m;
}

AbcdMatrix line_abcd_oblique(const DielectricLayer& layer, double f_hz, double z0_ohm,
                             double sin2_theta, Polarization pol, bool normal_incidence) {
  check_frequency(f_hz);
  if (layer.thickness_m < 0.0) throw std::domain_error("dielectric thickness must be >= 0");
  if (layer.eps_r < 1.0) throw std::domain_error("relative permittivity must be >= 1");
  if (layer.loss_tangent < 0.0) throw std::domain_error("loss tangent must be >= 0");

  const Complex eps_c = layer.eps_r * Complex(1.0, -layer.loss_tangent);
  const ObliqueMedium med = oblique_medium(eps_c, sin2_theta, z0_ohm, pol, normal_incidence);
  const Complex beta_d = 2.0 * kPi * f_hz / kSpeedOfLight * med.nz * layer.thickness_m;

  AbcdMatrix t;
  const Complex c = std::cos(beta_d);
  const Complex s = std::sin(beta_d);
  t << c, Complex(0, 1) * med.z_wave * s, Complex(0, 1) * s / med.z_wave, c;
  return t;
}

SparamSpectrum response_impl(const StackSpec& stack, const Eigen::VectorXd& freq_hz,
                             double theta_rad, Polarization pol) {
  if (freq_hz.size() == 0) throw std::invalid_argument("frequency grid is empty");
  for (Eigen::Index i = 0; i < freq_hz.size(); ++i) {
    if (!(freq_hz[i] > 0.0)) throw std::domain_error("frequencies must be positive");
    if (i > 0 && !(freq_hz[i] > freq_hz[i - 1]))
      throw std::invalid_argument("frequency grid must be strictly increasing");
  }
  if (!(theta_rad >= 0.0 && theta_rad < kPi / 2.0))
    throw std::domain_error("incidence angle must be in [0, pi/2)");

  const bool normal = theta_rad == 0.0;
  const double sin_t = std::sin(theta_rad);
  const double sin2 = sin_t * sin_t;
  const double cos_t = std::cos(theta_rad);
  const double z_term = normal ? stack.z0_ohm
                               : (pol == Polarization::te ? stack.z0_ohm / cos_t
                                                          : stack.z0_ohm * cos_t);

  SparamSpectrum out;
  out.freq_hz = freq_hz;
  out.s11.resize(freq_hz.size());
  out.s21.resize(freq_hz.size());
  out.symmetric = stack.is_symmetric();

  for (Eigen::Index i = 0; i < freq_hz.size(); ++i) {
    const double f = freq_hz[i];
    AbcdMatrix t = AbcdMatrix::Identity();
    for (const auto& block : stack.blocks) {
      if (std::holds_alternative<DielectricLayer>(block)) {
        t = t * line_abcd_oblique(std::get<DielectricLayer>(block), f, stack.z0_ohm, sin2, pol,
                                  normal);
      } else {
        t = t * shunt_sheet_abcd(std::get<SheetElement>(block), f);
      }
    }
    const SparamPair s = abcd_to_sparams(t, z_term);
    out.s11[i] = s.s11;
    out.s21[i] = s.s21;
  }
  return out;
}

} // namespace

bool StackSpec::is_symmetric() const {
  const size_t n = blocks.size();
  for (size_t i = 0; i < n / 2; ++i) {
    if (!blocks_equal(blocks[i], blocks[n - 1 - i])) return false;
  }
  return true;
}

Complex sheet_admittance(const SheetElement& element, double f_hz) {
  check_frequency(f_hz);
  if (!(element.value > 0.0)) throw std::domain_error("sheet element value must be positive");
  const double w = 2.0 * kPi * f_hz;
  if (element.kind == SheetKind::capacitive) return Complex(0.0, w * element.value);
  return 1.0 / Complex(0.0, w * element.value);
}

AbcdMatrix shunt_sheet_abcd(const SheetElement& element, double f_hz) {
  AbcdMatrix t;
  t << 1.0, 0.0, sheet_admittance(element, f_hz), 1.0;
  return t;
}

AbcdMatrix dielectric_line_abcd(const DielectricLayer& layer, double f_hz, double z0_ohm) {
  return line_abcd_oblique(layer, f_hz, z0_ohm, 0.0, Polarization::te, true);
}

AbcdMatrix cascade(std::span<const AbcdMatrix> blocks) {
  if (blocks.empty()) throw std::invalid_argument("cascade of an empty block list");
  AbcdMatrix t = blocks[0];
  for (size_t i = 1; i < blocks.size(); ++i) t = t * blocks[i];
  return t;
}

SparamPair abcd_to_sparams(const AbcdMatrix& t, double z0_ohm) {
  if (!(z0_ohm > 0.0)) throw std::domain_error("reference impedance must be positive");
  const Complex a = t(0, 0);
  const Complex b = t(0, 1);
  const Complex c = t(1, 0);
  const Complex d = t(1, 1);
  const Complex den = a + b / z0_ohm + c * z0_ohm + d;
  if (std::abs(den) < 1e-300) throw std::runtime_error("singular network: zero S-parameter denominator");
  return {(a + b / z0_ohm - c * z0_ohm - d) / den, 2.0 / den};
}

SparamSpectrum stack_response(const StackSpec& stack, const Eigen::VectorXd& freq_hz) {
  return response_impl(stack, freq_hz, 0.0, Polarization::te);
}

SparamSpectrum stack_response_oblique(const StackSpec& stack, const Eigen::VectorXd& freq_hz,
                                      double theta_rad, Polarization pol) {
  return response_impl(stack, freq_hz, theta_rad, pol);
}

StackSpec make_clc_stack(double c_farads, double l_henries, double d1_m, double d2_m,
                         double eps_r, double tan_delta, double z0_ohm) {
  StackSpec stack;
  stack.z0_ohm = z0_ohm;
  const DielectricLayer d1{d1_m, eps_r, tan_delta};
  const DielectricLayer d2{d2_m, eps_r, tan_delta};
  const SheetElement cap{SheetKind::capacitive, c_farads};
  const SheetElement ind{SheetKind::inductive, l_henries};
  stack.blocks = {d2, cap, d1, ind, d1, cap, d2};
  return stack;
}

Eigen::VectorXd default_freq_grid() {
  const double f0 = 1e9;
  const double f1 = 30e9;
  const double step = 10e6;
  const int n = static_cast<int>(std::llround((f1 - f0) / step)) + 1;
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) f[i] = f0 + i * step;
  return f;
}

} // namespace cfss
