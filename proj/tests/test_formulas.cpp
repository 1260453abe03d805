#include "doctest.h"
#include "poncelet/formulas.hpp"

using namespace poncelet;

TEST_CASE("confocal axes against high-precision values") {
  const auto [a1, b1] = confocal_axes(1, 1.5, 1);
  CHECK(a1 == doctest::Approx(0.63504161265110907).epsilon(1e-14));
  CHECK(b1 == doctest::Approx(0.2974375810233364).epsilon(1e-14));
  const auto [a40, b40] = confocal_axes(40, 1.5, 1);
  CHECK(a40 == doctest::Approx(5.0 / 6).epsilon(1e-14));
  CHECK(b40 == doctest::Approx(1.25).epsilon(1e-14));
  const auto [ae, be] = confocal_axes(kExcenters, 1.5, 1);
  CHECK(ae == doctest::Approx(1.9683749459844424).epsilon(1e-14));
  CHECK(be == doctest::Approx(4.2025624189766636).epsilon(1e-14));
  const auto [a11, b11] = confocal_axes(11, 1.5, 1);
  CHECK(a11 == doctest::Approx(1.1430749027719963).epsilon(1e-14));
  CHECK(b11 == doctest::Approx(0.23795006481866912).epsilon(1e-14));
  const auto [a100, b100] = confocal_axes(100, 1.5, 1);
  CHECK(a100 == doctest::Approx(1.5));
  CHECK(b100 == doctest::Approx(1.0));
}

TEST_CASE("formula lookup") {
  CHECK(confocal_formulas().size() == 30);
  CHECK(homothetic_formulas().size() == 31);
  CHECK(axis_formula(Family::homothetic, 13).radius);
  try {
    axis_formula(Family::confocal, 6);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_formula);
  }
  try {
    axis_formula(Family::incircle, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_formula);
  }
  CHECK_THROWS_AS(confocal_axes(1, 1, 1.5), Error);
}

TEST_CASE("printed formulas agree with traced loci") {
  for (Family fam : {Family::confocal, Family::homothetic}) {
    const auto& table = fam == Family::confocal ? confocal_formulas() : homothetic_formulas();
    for (const AxisFormula& f : table) {
      if (f.corrected) continue;
      for (double ab : {1.2, 2.0}) {
        INFO(to_string(fam) << " X" << f.k << " a/b=" << ab);
        const FormulaCheck c = check_formula(fam, f.k, ab, 1440);
        if (c.skipped) continue;
        CHECK(c.pass);
        CHECK(c.rel_error <= 1e-6);
      }
    }
  }
}

TEST_CASE("misprinted entries fail and their corrections hold") {
  for (auto [fam, k] : {std::pair{Family::confocal, 21}, {Family::confocal, 46}, {Family::homothetic, 32}}) {
    for (double ab : {1.5, 3.0}) {
      INFO(to_string(fam) << " X" << k << " a/b=" << ab);
      const FormulaCheck c = check_formula(fam, k, ab);
      CHECK_FALSE(c.pass);
      CHECK(c.rel_error > 1e-3);
      CHECK(c.corrected_error >= 0);
      CHECK(c.corrected_error <= 1e-9);
    }
    CHECK_FALSE(axis_formula(fam, k).erratum.empty());
  }
}

TEST_CASE("pole in the homothetic X18 entry") {
  const FormulaCheck c = check_formula(Family::homothetic, 18, 3.0);
  CHECK(c.skipped);
  CHECK_FALSE(check_formula(Family::homothetic, 18, 1.5).skipped);
}

TEST_CASE("excenter locus matches the closed form") {
  const ConicFit f = excenter_locus(family_pair(Family::confocal, 1.5, 1));
  CHECK(f.kind == ConicKind::ellipse);
  CHECK(f.semi_major == doctest::Approx(4.2025624189766636).epsilon(1e-9));
  CHECK(f.semi_minor == doctest::Approx(1.9683749459844424).epsilon(1e-9));
}

TEST_CASE("special aspect ratios") {
  const auto sr = special_ratios();
  REQUIRE(sr.size() == 5);
  const double expected[] = {1.8363772279324895, 1.3521934494539567, 1.5099716761834455, std::sqrt(2.0),
                             1.6180339887498948};
  for (std::size_t i = 0; i < sr.size(); ++i) {
    INFO("X" << sr[i].k << " " << sr[i].description);
    CHECK(sr[i].pass);
    CHECK(sr[i].root == doctest::Approx(expected[i]).epsilon(1e-9));
    CHECK(sr[i].residual <= sr[i].tolerance);
  }
}

TEST_CASE("shape relations hold across aspect ratios") {
  for (double ab : {1.1, 1.5, 2.0, 3.0, 5.0}) {
    for (const ShapeRelation& r : shape_relations(ab, 1)) {
      INFO(r.name << " a/b=" << ab << " value " << r.value << " expected " << r.expected);
      CHECK(r.pass);
    }
  }
}
