#include <random>
#include <vector>

#include "doctest.h"
#include "poncelet/geometry.hpp"

using namespace poncelet;

namespace {

std::vector<cplx> ellipse_samples(cplx c, double A, double B, double theta, int n, double phase = 0.1) {
  std::vector<cplx> p;
  for (int j = 0; j < n; ++j) {
    const double t = phase + 2 * kPi * j / n;
    p.push_back(c + std::polar(1.0, theta) * cplx(A * std::cos(t), B * std::sin(t)));
  }
  return p;
}

}  // namespace

TEST_CASE("delta against high-precision values") {
  CHECK(delta(1.5, 1) == doctest::Approx(1.9525624189766636).epsilon(1e-15));
  CHECK(delta(2, 1) == doctest::Approx(3.6055512754639893).epsilon(1e-15));
  CHECK(delta(1, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(delta(0, 1), Error);
}

TEST_CASE("cubic roots") {
  SUBCASE("real roots") {
    auto r = solve_cubic(1, -6, 11, -6);  // 1, 2, 3
    std::vector<double> re;
    for (auto z : r) {
      CHECK(std::abs(z.imag()) < 1e-12);
      re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(1).epsilon(1e-13));
    CHECK(re[1] == doctest::Approx(2).epsilon(1e-13));
    CHECK(re[2] == doctest::Approx(3).epsilon(1e-13));
  }
  SUBCASE("triple root") {
    for (auto z : solve_cubic(1, -3, 3, -1)) CHECK(std::abs(z - 1.0) < 1e-5);
  }
  SUBCASE("random complex coefficients reproduce the polynomial") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int i = 0; i < 200; ++i) {
      const cplx c3(g(rng), g(rng)), c2(g(rng), g(rng)), c1(g(rng), g(rng)), c0(g(rng), g(rng));
      for (cplx z : solve_cubic(c3, c2, c1, c0)) {
        const cplx v = ((c3 * z + c2) * z + c1) * z + c0;
        const double scale = std::abs(c3) * std::norm(z) * std::abs(z) + std::abs(c2) * std::norm(z) +
                             std::abs(c1) * std::abs(z) + std::abs(c0);
        CHECK(std::abs(v) <= 1e-12 * scale);
      }
    }
  }
  CHECK_THROWS_AS(solve_cubic(0, 1, 1, 1), Error);
}

TEST_CASE("conic fit recovers ellipses") {
  const auto pts = ellipse_samples(cplx(0.3, -0.2), 2.0, 0.7, 0.4, 200);
  const ConicFit f = fit_conic(pts);
  CHECK(f.kind == ConicKind::ellipse);
  CHECK(f.semi_major == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.semi_minor == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(f.angle == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(std::abs(f.center - cplx(0.3, -0.2)) < 1e-12);
  CHECK(f.residual_rms < 1e-12);
}

TEST_CASE("conic fit kinds") {
  CHECK(fit_conic(ellipse_samples(1.0, 0.25, 0.25, 0, 64)).kind == ConicKind::circle);
  std::vector<cplx> seg, pt(10, cplx(1, 2));
  for (int j = 0; j < 50; ++j) seg.push_back(cplx(std::cos(0.1 * j), 0.5 * std::cos(0.1 * j)));
  CHECK(fit_conic(seg).kind == ConicKind::segment);
  CHECK(fit_conic(pt).kind == ConicKind::point);
  std::vector<cplx> wobble;
  for (int j = 0; j < 100; ++j) {
    const double t = 2 * kPi * j / 100;
    wobble.push_back(std::polar(1.0 + 0.05 * std::cos(5 * t), t));
  }
  CHECK(fit_conic(wobble).kind == ConicKind::other);
  CHECK_THROWS_AS(fit_conic(std::vector<cplx>(5, cplx(1, 1))), Error);
}

TEST_CASE("shape and coefficients round-trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2), ax(0.1, 3), ang(-1.5, 1.5);
  for (int i = 0; i < 100; ++i) {
    double A = ax(rng), B = ax(rng);
    if (A < B) std::swap(A, B);
    if (A - B < 1e-3) continue;
    const cplx c(u(rng), u(rng));
    const double th = ang(rng);
    const ConicFit s = shape_from_coeffs(conic_from_shape(c, A, B, th));
    CHECK(std::abs(s.center - c) < 1e-9);
    CHECK(s.semi_major == doctest::Approx(A).epsilon(1e-9));
    CHECK(s.semi_minor == doctest::Approx(B).epsilon(1e-9));
    CHECK(std::abs(std::sin(s.angle - th)) < 1e-8);
  }
}

TEST_CASE("classify_conic thresholds") {
  ConicFit f;
  f.semi_major = 1;
  f.semi_minor = 1 - 1e-7;
  CHECK(classify_conic(f, 1e-6, 1e-7) == ConicKind::circle);
  f.semi_minor = 0.5;
  CHECK(classify_conic(f, 1e-6, 1e-7) == ConicKind::ellipse);
  f.semi_minor = 1e-9;
  CHECK(classify_conic(f, 1e-6, 1e-7) == ConicKind::segment);
  f.semi_major = 1e-9;
  CHECK(classify_conic(f, 1e-6, 1e-7) == ConicKind::point);
  f.semi_major = 1;
  f.semi_minor = 0.5;
  f.residual_rms = 1e-3;
  CHECK(classify_conic(f, 1e-6, 1e-7) == ConicKind::other);
}

TEST_CASE("scale_conic matches refitting scaled points") {
  const auto pts = ellipse_samples(cplx(0.2, 0.1), 1.3, 0.4, 0.7, 100);
  std::vector<cplx> scaled;
  for (cplx z : pts) scaled.push_back(cplx(2.0 * z.real(), 0.5 * z.imag()));
  const ConicFit a = scale_conic(fit_conic(pts), 2.0, 0.5), b = fit_conic(scaled);
  CHECK(std::abs(a.center - b.center) < 1e-10);
  CHECK(a.semi_major == doctest::Approx(b.semi_major).epsilon(1e-10));
  CHECK(a.semi_minor == doctest::Approx(b.semi_minor).epsilon(1e-10));
}

TEST_CASE("ellipse from u, v, w") {
  const UVW p{cplx(0.5, 0.2), cplx(0.1, -0.3), cplx(1, 2)};
  const ConicFit e = ellipse_from_uvw(p);
  const double au = std::abs(p.u), av = std::abs(p.v);
  CHECK(e.semi_major == doctest::Approx(au + av));
  CHECK(e.semi_minor == doctest::Approx(au - av));
  CHECK(std::abs(e.center - p.w) < 1e-15);
  std::vector<cplx> pts;
  for (int j = 0; j < 90; ++j) {
    const cplx l = std::polar(1.0, 2 * kPi * j / 90);
    pts.push_back(p.u * l + p.v / l + p.w);
  }
  const ConicFit f = fit_conic(pts);
  CHECK(f.semi_major == doctest::Approx(e.semi_major).epsilon(1e-12));
  CHECK(f.semi_minor == doctest::Approx(e.semi_minor).epsilon(1e-12));
  CHECK(std::abs(std::sin(f.angle - e.angle)) < 1e-10);
  CHECK(winding_sign_from_uvw(p) == 1);
  CHECK(winding_sign_from_uvw(UVW{p.v, p.u, p.w}) == -1);
  CHECK(ellipse_from_uvw(UVW{cplx(0.3, 0), cplx(0, 0.3), 0}).kind == ConicKind::segment);
  CHECK(ellipse_from_uvw(UVW{cplx(0.3, 0), 0, 0}).kind == ConicKind::circle);
}

TEST_CASE("winding number") {
  std::vector<cplx> path;
  for (int j = 0; j < 300; ++j) path.push_back(std::polar(1.0, 3 * 2 * kPi * j / 300.0));
  CHECK(winding_number(path, 0) == 3);
  std::reverse(path.begin(), path.end());
  CHECK(winding_number(path, 0) == -3);
  CHECK(winding_number(path, cplx(5, 0)) == 0);
  CHECK_THROWS_AS(winding_number(path, path[7]), Error);
}

TEST_CASE("angle normalization") {
  CHECK(normalize_angle(kPi) == doctest::Approx(0).epsilon(1e-15));
  CHECK(normalize_angle(-kPi / 2) == doctest::Approx(kPi / 2));
  CHECK(normalize_angle(3 * kPi / 4) == doctest::Approx(-kPi / 4));
}
