#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cfss/feed.hpp"
#include "oracles.hpp"

using namespace cfss;

namespace {

// Exact full 3-dB beamwidth of a cos^q field pattern (power goes as cos^2q).
double exact_beamwidth_deg(double q) {
  return 2.0 * std::acos(std::pow(2.0, -1.0 / (2.0 * q))) * 180.0 / kPi;
}

} // namespace

TEST_CASE("raised cosine field samples") {
  FeedSpec spec;
  spec.q = 2.0;
  spec.e0 = 1.0;

  const FieldSample bore = raised_cosine_field(spec, 10e9, 1.0, 0.0, 0.0);
  CHECK(std::abs(Complex(bore.e_theta)) == doctest::Approx(1.0).epsilon(1e-12));

  const FieldSample side = raised_cosine_field(spec, 10e9, 1.0, kPi / 2.0, 0.0);
  CHECK(std::abs(side.e_theta) == doctest::Approx(0.0).epsilon(1e-12));

  const FieldSample q2 = raised_cosine_field(spec, 10e9, 1.0, kPi / 3.0, 0.0);
  CHECK(std::abs(q2.e_theta) == doctest::Approx(0.25).epsilon(1e-12));

  // behind the aperture plane the pattern is zero
  const FieldSample back = raised_cosine_field(spec, 10e9, 1.0, 2.5, 0.3);
  CHECK(std::abs(back.e_theta) == 0.0);
  CHECK(std::abs(back.e_phi) == 0.0);

  // phase advances as exp(-jkr)
  const double r = 0.3;
  const FieldSample s = raised_cosine_field(spec, 10e9, r, 0.0, 0.0);
  const double k = 2.0 * kPi * 10e9 / kSpeedOfLight;
  CHECK(std::arg(s.e_theta) ==
        doctest::Approx(std::remainder(-k * r, 2.0 * kPi)).epsilon(1e-9));

  // polarization split between the spherical components
  const FieldSample pol = raised_cosine_field(spec, 10e9, 1.0, 0.4, 0.7);
  CHECK(std::abs(pol.e_phi / pol.e_theta) ==
        doctest::Approx(std::tan(0.7)).epsilon(1e-12));

  CHECK_THROWS_AS(raised_cosine_field(spec, 10e9, 0.0, 0.1, 0.0), std::domain_error);
}

TEST_CASE("directivity relations") {
  CHECK(q_from_directivity(2.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(q_from_directivity(10.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(q_from_directivity(1.9), std::domain_error);

  CHECK(directivity_numeric(0.0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(directivity_numeric(2.0) == doctest::Approx(10.0).epsilon(1e-9));
  for (double q : {0.5, 1.0, 3.7, 10.0}) {
    CHECK(directivity_numeric(q) == doctest::Approx(2.0 * (2.0 * q + 1.0)).epsilon(1e-6));
  }

  // the directivity-match relation inverts the closed form exactly
  for (double q : {0.0, 0.7, 2.0, 6.5, 15.0}) {
    CHECK(q_from_directivity(2.0 * (2.0 * q + 1.0)) == doctest::Approx(q).epsilon(1e-9));
  }
}

TEST_CASE("radiated power equals 4 pi / D times boresight intensity") {
  for (double q : {0.5, 2.0, 5.0}) {
    const double power = 2.0 * kPi *
                         oracle::integrate_adaptive(
                             [q](double th) {
                               return std::pow(std::cos(th), 2.0 * q) * std::sin(th);
                             },
                             0.0, kPi / 2.0, 1e-13);
    CHECK(power == doctest::Approx(4.0 * kPi / directivity_numeric(q)).epsilon(1e-6));
  }
}

TEST_CASE("beamwidth relation") {
  SUBCASE("recovers q from the exact half-power beamwidth") {
    for (double q : {0.5, 1.0, 2.0, 5.0, 20.0}) {
      CHECK(q_from_beamwidth(exact_beamwidth_deg(q)) == doctest::Approx(q).epsilon(0.005));
    }
  }
  SUBCASE("q = 2 worked example") {
    const double bw = exact_beamwidth_deg(2.0);
    CHECK(bw == doctest::Approx(67.1).epsilon(2e-3));
    CHECK(q_from_beamwidth(bw) == doctest::Approx(2.0).epsilon(0.01));
  }
  SUBCASE("narrow beams give large q") {
    CHECK(q_from_beamwidth(2.0) > q_from_beamwidth(10.0));
    CHECK(q_from_beamwidth(1.0) > 100.0);
  }
  SUBCASE("domain limits") {
    CHECK_THROWS_AS(q_from_beamwidth(180.0), std::domain_error);
    CHECK_THROWS_AS(q_from_beamwidth(0.0), std::domain_error);
  }
  SUBCASE("literal printed form differs but stays in the same ballpark") {
    const double q_exact = q_from_beamwidth(60.0);
    const double q_printed = q_from_beamwidth(60.0, true);
    CHECK(q_printed != doctest::Approx(q_exact).epsilon(1e-6));
    CHECK(q_printed > 0.0);
  }
}

TEST_CASE("q fitting from horn data") {
  SUBCASE("synthetic horn generated from exact cos^q patterns") {
    for (double q : {1.0, 2.0, 5.0}) {
      HornData horn;
      horn.freq_hz.resize(11);
      horn.gain_dbi.resize(11);
      horn.beamwidth_deg.resize(11);
      for (int i = 0; i < 11; ++i) {
        horn.freq_hz[i] = 2e9 + i * 1e9;
        horn.gain_dbi[i] = 10.0 * std::log10(2.0 * (2.0 * q + 1.0));
        horn.beamwidth_deg[i] = exact_beamwidth_deg(q);
      }
      const QFit fit = fit_q(horn);
      CHECK(fit.excluded.empty());
      for (int i = 0; i < 11; ++i) {
        CHECK(fit.q_avg[i] == doctest::Approx(q).epsilon(0.02));
        CHECK(fit.q_dir[i] == doctest::Approx(q).epsilon(1e-9));
      }
    }
  }
  SUBCASE("constant 10 dBi with consistent beamwidth gives constant q") {
    HornData horn;
    horn.freq_hz.resize(4);
    horn.gain_dbi.resize(4);
    horn.beamwidth_deg.resize(4);
    for (int i = 0; i < 4; ++i) {
      horn.freq_hz[i] = (i + 1) * 5e9;
      horn.gain_dbi[i] = 10.0;
      horn.beamwidth_deg[i] = exact_beamwidth_deg(2.0);
    }
    const QFit fit = fit_q(horn);
    for (int i = 1; i < 4; ++i) CHECK(fit.q_avg[i] == doctest::Approx(fit.q_avg[0]));
  }
  SUBCASE("misaligned columns raise") {
    HornData horn;
    horn.freq_hz.resize(3);
    horn.gain_dbi.resize(2);
    horn.beamwidth_deg.resize(3);
    CHECK_THROWS_AS(fit_q(horn), std::invalid_argument);
  }
  SUBCASE("infeasible rows are flagged and excluded") {
    HornData horn;
    horn.freq_hz.resize(2);
    horn.gain_dbi.resize(2);
    horn.beamwidth_deg.resize(2);
    horn.freq_hz << 1e9, 2e9;
    horn.gain_dbi << 10.0, -3.0; // second row: D < 2
    horn.beamwidth_deg << 60.0, 60.0;
    const QFit fit = fit_q(horn);
    REQUIRE(fit.excluded.size() == 1);
    CHECK(fit.excluded[0] == 1);
    CHECK(std::isnan(fit.q_avg[1]));
  }
}
