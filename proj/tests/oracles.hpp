#pragma once

// Test-only reference implementations, kept independent of the library's
// ABCD-matrix path.

#include <complex>
#include <random>
#include <vector>

#include "cfss/constants.hpp"
#include "cfss/tmm.hpp"

namespace cfss::oracle {

// Solves the forward/backward wave boundary conditions layer by layer for a
// stack at normal incidence. No transfer matrices: the recursion enforces
// voltage continuity and the shunt-current jump at every interface, then
// rephases the wave amplitudes across each dielectric region.
inline SparamPair wave_solver_sparams(const StackSpec& stack, double f_hz) {
  struct Region {
    Complex z;
    Complex beta;
    double length;
  };
  std::vector<Region> regions;
  std::vector<Complex> interface_y; // admittance lumped at each interface

  regions.push_back({stack.z0_ohm, 0.0, 0.0}); // incident half space
  interface_y.push_back(0.0);
  for (const auto& block : stack.blocks) {
    if (std::holds_alternative<DielectricLayer>(block)) {
      const auto& d = std::get<DielectricLayer>(block);
      const Complex eps_c = d.eps_r * Complex(1.0, -d.loss_tangent);
      const Complex n = std::sqrt(eps_c);
      regions.push_back({stack.z0_ohm / n, 2.0 * kPi * f_hz / kSpeedOfLight * n, d.thickness_m});
      interface_y.push_back(0.0);
    } else {
      interface_y.back() += sheet_admittance(std::get<SheetElement>(block), f_hz);
    }
  }
  regions.push_back({stack.z0_ohm, 0.0, 0.0}); // exit half space

  // Unit transmitted wave in the exit region; walk backwards to the source.
  Complex a = 1.0;
  Complex b = 0.0;
  for (size_t i = regions.size() - 1; i-- > 0;) {
    const Region& right = regions[i + 1];
    const Region& left = regions[i];
    const Complex v = a + b;
    const Complex cur = (a - b) / right.z + interface_y[i] * v;
    Complex al = (v + left.z * cur) / 2.0;
    Complex bl = (v - left.z * cur) / 2.0;
    if (i > 0) {
      const Complex phase = Complex(0, 1) * left.beta * left.length;
      al *= std::exp(phase);
      bl *= std::exp(-phase);
    }
    a = al;
    b = bl;
  }
  return {b / a, 1.0 / a};
}

// Deterministic random lossless stacks: 1-3 sheets, 0-4 dielectrics.
inline std::vector<StackSpec> random_lossless_stacks(int count, unsigned seed = 20260809) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> n_sheet_dist(1, 3);
  std::uniform_int_distribution<int> n_diel_dist(0, 4);
  std::uniform_real_distribution<double> c_dist(10e-15, 200e-15);
  std::uniform_real_distribution<double> l_dist(0.3e-9, 20e-9);
  std::uniform_real_distribution<double> d_dist(0.1e-3, 3e-3);
  std::uniform_real_distribution<double> eps_dist(1.0, 4.0);

  std::vector<StackSpec> stacks;
  for (int s = 0; s < count; ++s) {
    const int n_sheets = n_sheet_dist(rng);
    const int n_diels = n_diel_dist(rng);
    std::vector<StackBlock> blocks;
    for (int i = 0; i < n_sheets; ++i) {
      if (rng() % 2 == 0) {
        blocks.push_back(SheetElement{SheetKind::capacitive, c_dist(rng)});
      } else {
        blocks.push_back(SheetElement{SheetKind::inductive, l_dist(rng)});
      }
    }
    for (int i = 0; i < n_diels; ++i) {
      blocks.push_back(DielectricLayer{d_dist(rng), eps_dist(rng), 0.0});
    }
    std::shuffle(blocks.begin(), blocks.end(), rng);
    StackSpec st;
    st.blocks = std::move(blocks);
    stacks.push_back(std::move(st));
  }
  return stacks;
}

// Adaptive Simpson quadrature, used as an independent integration route.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-12, int depth = 24) {
  auto simpson = [&](double x0, double x1) {
    return (x1 - x0) / 6.0 * (f(x0) + 4.0 * f((x0 + x1) / 2.0) + f(x1));
  };
  struct Rec {
    double a, b, whole;
    int depth;
  };
  double total = 0.0;
  std::vector<Rec> stack{{a, b, simpson(a, b), depth}};
  while (!stack.empty()) {
    Rec r = stack.back();
    stack.pop_back();
    const double m = (r.a + r.b) / 2.0;
    const double left = simpson(r.a, m);
    const double right = simpson(m, r.b);
    if (r.depth <= 0 || std::abs(left + right - r.whole) < 15.0 * tol) {
      total += left + right + (left + right - r.whole) / 15.0;
    } else {
      stack.push_back({r.a, m, left, r.depth - 1});
      stack.push_back({m, r.b, right, r.depth - 1});
    }
  }
  return total;
}

} // namespace cfss::oracle
