#include "doctest.h"
#include "poncelet/locus.hpp"

using namespace poncelet;

TEST_CASE("traces have one point per lambda") {
  const ConcentricPair p = family_pair(Family::confocal, 1.5, 1);
  const LocusTrace t = trace_locus(p, 2, 720, 3);
  CHECK(t.points.size() == 3 * 720);
  CHECK(t.lambdas.size() == 3 * 720);
  CHECK(t.k == 2);
  // Every cycle reuses the same lambdas.
  CHECK(t.lambdas[5] == t.lambdas[725]);
  CHECK_THROWS_AS(trace_locus(p, 2, 32), Error);
  CHECK_THROWS_AS(trace_locus(p, 2, 720, 0), Error);
}

TEST_CASE("stationary centers stay put") {
  for (Family f : named_families()) {
    const ConcentricPair p = family_pair(f, 1.5, 1);
    const int k = stationary_center(f);
    INFO(to_string(f) << " X" << k);
    const LocusTrace t = trace_locus(p, k, 256);
    for (cplx z : t.points) CHECK(std::abs(z) < 1e-9);
  }
  CHECK(stationary_center(Family::custom) == 0);
}

TEST_CASE("X2/X3 combinations match the u, v, w prediction") {
  const ConcentricPair p = family_pair(Family::confocal, 1.5, 1);
  for (auto [al, be] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {0.7, 0.3}, {-1.2, 2.5}, {2.0, -0.4}}) {
    INFO("alpha=" << al << " beta=" << be);
    const LocusVerdict v = classify_combo(p, al, be, 720);
    REQUIRE(v.predicted.has_value());
    CHECK(v.center_gap <= 1e-8 * p.a);
    CHECK(v.axis_gap <= 1e-6);
    CHECK(v.max_prediction_gap <= 1e-8);
  }
  NormalizedPair flat = normalize(p);
  flat.q_outer = flat.p_outer;
  CHECK_THROWS_AS(uvw_from_combo(flat, 1, 0), Error);
}

TEST_CASE("degenerate ratios") {
  const auto [r1, r2] = degenerate_ratios(1.5, 1);
  CHECK(r1 == doctest::Approx(2.7262812094883318).epsilon(1e-14));
  CHECK(r2 == doctest::Approx(0.37834720421703636).epsilon(1e-14));
  const auto [s1, s2] = degenerate_ratios_rho(0.36265966294292057);
  CHECK(s1 == doctest::Approx(r1).epsilon(1e-12));
  CHECK(s2 == doctest::Approx(r2).epsilon(1e-12));
  const ConcentricPair p = family_pair(Family::confocal, 1.5, 1);
  for (double r : {r1, r2}) {
    const LocusVerdict v = classify_combo(p, r, 1, 2880);
    CHECK(v.fit.semi_minor / v.fit.semi_major <= 1e-7);
  }
  CHECK_THROWS_AS(degenerate_ratios(1, 1.5), Error);
  CHECK_THROWS_AS(degenerate_ratios_rho(0.6), Error);
}

TEST_CASE("circular ratios") {
  const CircularRatios c = circular_ratios(1.5, 1);
  CHECK(c.printed_plus == doctest::Approx(1.3175208063255545).epsilon(1e-14));
  CHECK(c.printed_minus == doctest::Approx(-3.0158125270077788).epsilon(1e-14));
  CHECK(c.printed_sum == doctest::Approx(-1.6982917206822243).epsilon(1e-14));
  REQUIRE(c.numeric.size() == 2);
  CHECK(c.numeric[1] == doctest::Approx(1.3175208063255545).epsilon(1e-6));
  CHECK(c.numeric[0] == doctest::Approx(-4.3175208063255545).epsilon(1e-6));
  CHECK(c.numeric_sum == doctest::Approx(-3).epsilon(1e-6));
}

TEST_CASE("winding over three cycles") {
  const ConcentricPair p = family_pair(Family::confocal, 1.5, 1);
  for (int k : {1, 2, 3, 4, 5, 7}) {
    INFO("X" << k);
    CHECK(std::abs(winding_of_locus(p, k)) == 3);
  }
  // The stationary center has no locus to wind around.
  CHECK_THROWS_AS(winding_of_locus(p, 9), Error);
}

TEST_CASE("monotone loci") {
  const ConcentricPair p = family_pair(Family::incircle, 1.5, 1);
  const NormalizedPair np = normalize(p);
  for (auto [al, be] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}) {
    const LocusTrace t = trace_combination(p, {{2, al}, {3, be}}, 1440);
    const Monotonicity m = monotonicity_report(t, uvw_from_combo(np, al, be));
    CHECK(std::abs(m.min_speed * m.min_speed - m.analytic_min) <= 1e-4 * m.analytic_min);
    CHECK(m.monotone);
  }
}

TEST_CASE("combo expansions") {
  const ConcentricPair p = family_pair(Family::confocal, 1.5, 1);
  const auto e4 = expand_combo(p, 4);
  REQUIRE(e4.has_value());
  CHECK(e4->source == "fixed");
  CHECK(e4->alpha == doctest::Approx(3));
  CHECK(e4->beta == doctest::Approx(-2));
  const auto e7 = expand_combo(p, 7);
  REQUIRE(e7.has_value());
  CHECK(e7->source == "table");
  CHECK(e7->stationary == 9);
  // The printed row does not reproduce X145, so the fit takes over.
  const auto e145 = expand_combo(p, 145);
  REQUIRE(e145.has_value());
  CHECK(e145->source == "fitted");
  const LocusVerdict v = classify_locus(p, 145, 720);
  CHECK(v.kind == ConicKind::ellipse);
}
