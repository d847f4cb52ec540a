#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cfss/synthesis.hpp"
#include "oracles.hpp"

using namespace cfss;

TEST_CASE("patch capacitance formula") {
  // Table-I geometry lands within 1% of the 78 fF design value.
  const double c = patch_capacitance(4.5, 0.8, 2.4);
  CHECK(c == doctest::Approx(78.4e-15).epsilon(2e-3));
  CHECK(std::abs(c - 78e-15) / 78e-15 < 0.01);

  CHECK(patch_capacitance(4.5, 4.5, 2.4) == doctest::Approx(0.0).epsilon(1e-18));
  CHECK_THROWS_AS(patch_capacitance(4.5, 5.0, 2.4), std::domain_error);

  // strictly monotone decreasing in g
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> g_dist(0.2, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double g = g_dist(rng);
    CHECK(patch_capacitance(4.5, g / 2.0, 2.4) > patch_capacitance(4.5, g, 2.4));
  }
}

TEST_CASE("grid inductance formula") {
  const double l = grid_inductance(4.5, 0.22, 1.0);
  CHECK(l == doctest::Approx(2.31e-9).epsilon(2e-3));
  // the analytical value intentionally disagrees with the optimized 1.66 nH
  CHECK(std::abs(l - 1.66e-9) / 1.66e-9 > 0.3);

  CHECK(grid_inductance(4.5, 4.5, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(grid_inductance(4.5, 5.0, 1.0), std::domain_error);

  std::mt19937 rng(4);
  std::uniform_real_distribution<double> w_dist(0.05, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double w = w_dist(rng);
    CHECK(grid_inductance(4.5, w / 2.0, 1.0) > grid_inductance(4.5, w, 1.0));
  }
}

TEST_CASE("equi-impedance scaling laws") {
  CHECK(gap_for_size(4.5).mm == doctest::Approx(0.8075).epsilon(1e-9));
  CHECK(std::abs(gap_for_size(4.5).mm - 0.8) < 0.01);
  CHECK(gap_for_size(3.22).mm == doctest::Approx(0.3275).epsilon(1e-9));
  CHECK(gap_for_size(4.5).in_validated_range);
  CHECK_FALSE(gap_for_size(5.5).in_validated_range);
  CHECK_THROWS_AS(gap_for_size(2.0), std::domain_error);

  CHECK(wire_for_size(4.5).mm == doctest::Approx(0.2 / 0.85 * 4.5 - 0.6).epsilon(1e-12));
  CHECK(wire_for_size(4.5).mm == doctest::Approx(0.4588).epsilon(1e-4));
  CHECK(wire_for_size(3.22).mm == doctest::Approx(0.1576).epsilon(1e-3));
  CHECK_THROWS_AS(wire_for_size(2.55), std::domain_error);

  // both laws are affine: the finite-difference slope is exact
  const double dg = (gap_for_size(4.0).mm - gap_for_size(3.5).mm) / 0.5;
  CHECK(dg == doctest::Approx(0.3 / 0.8).epsilon(1e-12));
  const double dw = (wire_for_size(4.0).mm - wire_for_size(3.5).mm) / 0.5;
  CHECK(dw == doctest::Approx(0.2 / 0.85).epsilon(1e-12));
}

TEST_CASE("equi-impedance intent: analytic capacitance stays within 10% across the p2 range") {
  double lo = 1e30, hi = 0.0;
  for (double p2 = kScalingP2MinMm; p2 <= kScalingP2MaxMm; p2 += 0.02) {
    const double c = patch_capacitance(p2, gap_for_size(p2).mm, 2.4);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(hi / lo < 1.10);
}

TEST_CASE("sheet value extraction") {
  SUBCASE("S21 = 1 is a degenerate sheet") {
    const ExtractedSheet e =
        extract_sheet_value(Complex(1.0, 0.0), 10e9, 300.0, SheetKind::capacitive);
    CHECK(e.degenerate);
  }
  SUBCASE("round trip through the shunt-sheet model in the ABS medium") {
    const double f = 10e9;
    const double z_med = kFreeSpaceImpedance / std::sqrt(2.4);
    for (auto [kind, value] : {std::pair{SheetKind::capacitive, 78e-15},
                               std::pair{SheetKind::inductive, 1.66e-9}}) {
      const AbcdMatrix t = shunt_sheet_abcd({kind, value}, f);
      const SparamPair s = abcd_to_sparams(t, z_med);
      const ExtractedSheet e = extract_sheet_value(s.s21, f, z_med, kind);
      CHECK_FALSE(e.degenerate);
      CHECK(e.value == doctest::Approx(value).epsilon(1e-6));
    }
  }
  SUBCASE("round trip across the band") {
    const double z_med = kFreeSpaceImpedance / std::sqrt(2.4);
    for (double f = 2e9; f <= 30e9; f += 2e9) {
      const AbcdMatrix t = shunt_sheet_abcd({SheetKind::capacitive, 55e-15}, f);
      const SparamPair s = abcd_to_sparams(t, z_med);
      CHECK(extract_sheet_value(s.s21, f, z_med, SheetKind::capacitive).value ==
            doctest::Approx(55e-15).epsilon(1e-6));
    }
  }
  SUBCASE("kind mismatch") {
    const AbcdMatrix t = shunt_sheet_abcd({SheetKind::capacitive, 78e-15}, 10e9);
    const SparamPair s = abcd_to_sparams(t, 300.0);
    CHECK_THROWS_AS(extract_sheet_value(s.s21, 10e9, 300.0, SheetKind::inductive),
                    std::domain_error);
  }
}

TEST_CASE("L/C synthesis sweep") {
  const StackTemplate tmpl{1.25e-3, 1e-3, 2.4, 0.0, kFreeSpaceImpedance};
  const BandTarget target{7.5e9, 12.5e9, -3.0, {20e9}, -15.0};

  SUBCASE("X-band sweep finds the paper's design point") {
    const SynthesisResult res =
        synthesize_lc(target, tmpl, {40e-15, 120e-15, 17}, {0.5e-9, 12e-9, 24});
    CHECK(res.any_feasible);
    // all feasible candidates share score zero and rank first
    CHECK(res.candidates.front().score_db == 0.0);
    bool near_paper_point = false;
    for (const LcCandidate& c : res.candidates) {
      if (c.score_db > 0.0) break;
      if (std::abs(c.c_farads - 78e-15) / 78e-15 <= 0.20 &&
          std::abs(c.l_henries - 1.66e-9) / 1.66e-9 <= 0.20) {
        near_paper_point = true;
      }
    }
    CHECK(near_paper_point);
  }

  SUBCASE("the paper's design point itself is feasible") {
    const SynthesisResult res =
        synthesize_lc(target, tmpl, {78e-15, 78e-15, 1}, {1.66e-9, 1.66e-9, 1});
    REQUIRE(res.candidates.size() == 1);
    CHECK(res.candidates.front().score_db <= 0.0);
    CHECK(res.candidates.front().feasible);
    CHECK(res.any_feasible);
  }

  SUBCASE("degenerate single-point sweep returns that point") {
    const SynthesisResult res =
        synthesize_lc(target, tmpl, {50e-15, 50e-15, 1}, {5e-9, 5e-9, 1});
    REQUIRE(res.candidates.size() == 1);
    CHECK(res.candidates.front().c_farads == 50e-15);
    CHECK(res.candidates.front().l_henries == 5e-9);
  }

  SUBCASE("unreachable target flags infeasible") {
    // stop probe placed inside the passband with contradictory levels
    const BandTarget impossible{7.5e9, 12.5e9, -3.0, {10e9}, -15.0};
    const SynthesisResult res =
        synthesize_lc(impossible, tmpl, {40e-15, 120e-15, 5}, {0.5e-9, 12e-9, 5});
    CHECK_FALSE(res.any_feasible);
    for (const LcCandidate& c : res.candidates) CHECK_FALSE(c.feasible);
    // still a ranked best-effort list
    for (size_t i = 1; i < res.candidates.size(); ++i) {
      CHECK(res.candidates[i - 1].score_db <= res.candidates[i].score_db);
    }
  }

  SUBCASE("deterministic tie-break orders by C then L") {
    const SynthesisResult res =
        synthesize_lc(target, tmpl, {60e-15, 90e-15, 4}, {1e-9, 3e-9, 4});
    for (size_t i = 1; i < res.candidates.size(); ++i) {
      const LcCandidate& a = res.candidates[i - 1];
      const LcCandidate& b = res.candidates[i];
      const bool ordered = a.score_db < b.score_db ||
                           (a.score_db == b.score_db &&
                            (a.c_farads < b.c_farads ||
                             (a.c_farads == b.c_farads && a.l_henries <= b.l_henries)));
      CHECK(ordered);
    }
  }
}

TEST_CASE("unit cell geometry consistency") {
  const UnitCellGeom geom = make_unit_cell_geom(4.5, 0.8, 0.22, 0.25);
  CHECK(geom.p2_mm == doctest::Approx(std::sqrt(3.0) / 2.0 * geom.p_mm).epsilon(1e-9));
  CHECK(geom.p_mm == doctest::Approx(5.196).epsilon(1e-3)); // Table I prints 5.19
  CHECK(geom.patch_edge_mm == doctest::Approx(4.5 - 0.8).epsilon(1e-12));
  CHECK(geom.aperture_edge_mm == doctest::Approx(4.5 - 0.22).epsilon(1e-12));
  CHECK_THROWS_AS(make_unit_cell_geom(4.5, 4.6, 0.22, 0.25), std::domain_error);
}
