#include <random>

#include "doctest.h"
#include "poncelet/families.hpp"

using namespace poncelet;

TEST_CASE("confocal caustic against high-precision values") {
  auto [ac, bc] = confocal_caustic(1.5, 1);
  CHECK(ac == doctest::Approx(1.1430749027719963).epsilon(1e-14));
  CHECK(bc == doctest::Approx(0.23795006481866912).epsilon(1e-14));
  auto [ac2, bc2] = confocal_caustic(std::sqrt(2.0), 1);
  CHECK(ac2 == doctest::Approx(1.035276180410083).epsilon(1e-14));
  CHECK(bc2 == doctest::Approx(0.26794919243112271).epsilon(1e-14));
  CHECK_THROWS_AS(confocal_caustic(1, 1), Error);
}

TEST_CASE("every named family closes") {
  for (double ab : {1.1, 1.25, 1.5, 2.0, 3.0}) {
    for (Family f : named_families()) {
      INFO(to_string(f) << " a/b=" << ab);
      const ConcentricPair p = family_pair(f, ab, 1);
      CHECK(std::abs(closure_residual(p)) <= 1e-12);
      CHECK(p.a_c < p.a);
      CHECK(p.b_c < p.b);
    }
  }
}

TEST_CASE("family constructions") {
  const ConcentricPair inc = family_pair(Family::incircle, 1.5, 1);
  CHECK(inc.a_c == doctest::Approx(0.6));
  CHECK(inc.b_c == doctest::Approx(0.6));
  const ConcentricPair hom = family_pair(Family::homothetic, 1.5, 1);
  CHECK(hom.a_c == doctest::Approx(0.75));
  const ConcentricPair ex = family_pair(Family::excentral, 1.5, 1);
  CHECK(ex.a == doctest::Approx(1.9683749459844424).epsilon(1e-14));
  CHECK(ex.b == doctest::Approx(4.2025624189766636).epsilon(1e-14));
  const ConcentricPair cc = family_pair(Family::circumcircle, 1.5, 1, 0.5);
  CHECK(cc.b == cc.a);
  CHECK(cc.b_c == doctest::Approx(1.0));
  // The dual caustic sits at t = b^2/(a^2 + b^2).
  const ConcentricPair du = family_pair(Family::dual, 1.5, 1);
  CHECK(du.a_c / 1.5 == doctest::Approx(0.30769230769230769).epsilon(1e-8));
  CHECK_THROWS_AS(family_pair(Family::confocal, 1, 1.5), Error);
  CHECK_THROWS_AS(family_pair(Family::custom, 1.5, 1), Error);
  CHECK(family_from_string("dual") == Family::dual);
  CHECK_THROWS_AS(family_from_string("parabolic"), Error);
}

TEST_CASE("normalized foci") {
  const NormalizedPair n = normalize(family_pair(Family::confocal, 1.5, 1));
  CHECK(n.g.real() == doctest::Approx(0.72394742237448553).epsilon(1e-14));
  CHECK(n.f == -n.g);
  CHECK(n.p_outer == doctest::Approx(1.25));
  CHECK(n.q_outer == doctest::Approx(0.25));
  // a/a_e = a^2/(delta + b^2) = (delta - b^2)/c^2: the excentral pair normalizes like the confocal one.
  const NormalizedPair e = normalize(family_pair(Family::excentral, 1.5, 1));
  CHECK(e.g.real() == doctest::Approx(n.g.real()).epsilon(1e-14));
  // A caustic taller than wide after normalization puts the foci on the imaginary axis.
  const NormalizedPair t = normalize(ConcentricPair{2, 1, 0.5, 0.75, Family::custom});
  CHECK(t.g.real() == 0);
  CHECK(t.g.imag() == doctest::Approx(std::sqrt(0.75 * 0.75 - 0.25 * 0.25)));
}

TEST_CASE("Blaschke triangles are Poncelet triangles") {
  for (Family fam : named_families()) {
    const ConcentricPair p = family_pair(fam, 1.5, 1);
    for (const TriangleSample& s : family_triangles(p, 97, 1, 0.2)) {
      for (int i = 0; i < 3; ++i) {
        const cplx z = s.tri.v[i];
        CHECK(std::abs(std::norm(cplx(z.real() / p.a, z.imag() / p.b)) - 1) < 1e-12);
        CHECK(tangency_residual(z, s.tri.v[(i + 1) % 3], p.a_c, p.b_c) < 1e-9);
      }
    }
  }
  const NormalizedPair n = normalize(family_pair(Family::confocal, 1.5, 1));
  CHECK_THROWS_AS(blaschke_triangle(n, cplx(1.1, 0)), Error);
}

TEST_CASE("labels return after three lambda cycles") {
  const ConcentricPair p = family_pair(Family::confocal, 1.5, 1);
  const auto ts = family_triangles(p, 120, 3, 0.5);
  const auto& first = ts.front().tri;
  // After one cycle the vertex set repeats with labels rotated; after three it is the identity.
  const auto& one = ts[120].tri;
  const auto next = family_triangles(p, 120, 4, 0.5);
  const auto& three = next[360].tri;
  double rot = 0, same = 0;
  for (int i = 0; i < 3; ++i) {
    same = std::max(same, std::abs(three.v[i] - first.v[i]));
    rot = std::max(rot, std::abs(one.v[i] - first.v[i]));
  }
  CHECK(same < 1e-9);
  CHECK(rot > 1e-3);
}

TEST_CASE("tangent construction closes from random starts") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  for (Family fam : named_families()) {
    const ConcentricPair p = family_pair(fam, 1.5, 1);
    for (int i = 0; i < 100; ++i) CHECK(tangent_construction(p, ang(rng)).closure <= 1e-8);
  }
  // A caustic off the closure condition does not close.
  const ConcentricPair bad{1.5, 1, 0.9, 0.5, Family::custom};
  CHECK(tangent_construction(bad, 0.3).closure > 1e-3);
}

TEST_CASE("printed closure form differs") {
  const ConcentricPair p = family_pair(Family::confocal, 1.5, 1);
  CHECK(std::abs(printed_closure_residual(p)) > 1);
}

TEST_CASE("stationary caustic search") {
  const StationaryCaustic s9 = find_stationary_caustic(1.5, 1, 9);
  CHECK(s9.t == doctest::Approx(0.76204993518133088).epsilon(1e-9));
  const StationaryCaustic s1 = find_stationary_caustic(1.5, 1, 1);
  CHECK(s1.a_c == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(s1.b_c == doctest::Approx(0.6).epsilon(1e-9));
  // X6 stays fixed when the excentral outer carries the original billiard as caustic.
  const ConcentricPair ex = family_pair(Family::excentral, 1.5, 1);
  const StationaryCaustic s6 = find_stationary_caustic(ex.a, ex.b, 6);
  CHECK(s6.a_c == doctest::Approx(1.5).epsilon(1e-8));
  CHECK(s6.b_c == doctest::Approx(1.0).epsilon(1e-8));
  try {
    find_stationary_caustic(1.5, 1, 8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_solution);
  }
}
