#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "poncelet/centers.hpp"
#include "poncelet/kernels.hpp"

using namespace poncelet;
namespace k = poncelet::kernels;

namespace {

bool same_bits(const std::vector<double>& x, const std::vector<double>& y) {
  return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

struct Batch {
  std::vector<double> a, b, c;
};

Batch random_sides(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  Batch s;
  for (std::size_t i = 0; i < n; ++i) {
    double x = u(rng), y = u(rng), z = u(rng);
    while (x >= y + z || y >= x + z || z >= x + y) {
      x = u(rng);
      y = u(rng);
      z = u(rng);
    }
    s.a.push_back(x);
    s.b.push_back(y);
    s.c.push_back(z);
  }
  return s;
}

}  // namespace

TEST_CASE("dispatch honours force and reset") {
  k::force(k::Isa::scalar);
  CHECK(k::active().isa == k::Isa::scalar);
  k::reset();
  if (k::avx2_kernels()) CHECK(k::avx2_kernels()->isa == k::Isa::avx2);
}

TEST_CASE("vector kernels are bit-identical to the scalar reference") {
  const k::Kernels* v = k::avx2_kernels();
  if (!v) {
    MESSAGE("AVX2 path unavailable; equivalence not exercised");
    return;
  }
  const k::Kernels& s = k::scalar_kernels();
  // Odd lengths exercise the remainder lanes.
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<double> cr(n), ci(n), x(n), y(n), w1(n), w2(n), w3(n);
    std::vector<double> vx[3], vy[3];
    for (int j = 0; j < 3; ++j) {
      vx[j].resize(n);
      vy[j].resize(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double t = u(rng);
      cr[i] = std::cos(t);
      ci[i] = std::sin(t);
      x[i] = u(rng);
      y[i] = u(rng);
      w1[i] = u(rng);
      w2[i] = u(rng);
      w3[i] = u(rng) + 5;
      for (int j = 0; j < 3; ++j) {
        vx[j][i] = u(rng);
        vy[j][i] = u(rng);
      }
    }
    const double uvw[6] = {0.3, -0.1, 0.2, 0.05, 0.01, -0.02};
    std::vector<double> sr(n), si(n), vr(n), vi(n);
    s.sample_uvw(cr.data(), ci.data(), n, uvw, sr.data(), si.data());
    v->sample_uvw(cr.data(), ci.data(), n, uvw, vr.data(), vi.data());
    CHECK(same_bits(sr, vr));
    CHECK(same_bits(si, vi));

    const double* px[3] = {vx[0].data(), vx[1].data(), vx[2].data()};
    const double* py[3] = {vy[0].data(), vy[1].data(), vy[2].data()};
    s.combine3(w1.data(), w2.data(), w3.data(), px, py, n, sr.data(), si.data());
    v->combine3(w1.data(), w2.data(), w3.data(), px, py, n, vr.data(), vi.data());
    CHECK(same_bits(sr, vr));
    CHECK(same_bits(si, vi));

    const double co[6] = {1, 0.2, 2, -0.1, 0.3, -1};
    const double ss = s.conic_sumsq(x.data(), y.data(), n, co), vs = v->conic_sumsq(x.data(), y.data(), n, co);
    CHECK(std::memcmp(&ss, &vs, sizeof ss) == 0);

    s.speeds(x.data(), y.data(), n, 3.0, sr.data());
    v->speeds(x.data(), y.data(), n, 3.0, vr.data());
    CHECK(same_bits(sr, vr));
  }
}

TEST_CASE("weight programs agree across paths for every tabulated center") {
  const k::Kernels* v = k::avx2_kernels();
  if (!v) return;
  const Batch sides = random_sides(257, 3);
  const std::size_t n = sides.a.size();
  const CenterTable& t = CenterTable::builtin();
  for (int idx : t.indices()) {
    std::vector<double> so(n), vo(n);
    k::scalar_kernels().run_program(t.at(idx).program, sides.a.data(), sides.b.data(), sides.c.data(), n, so.data());
    v->run_program(t.at(idx).program, sides.a.data(), sides.b.data(), sides.c.data(), n, vo.data());
    for (std::size_t i = 0; i < n; ++i) {
      // pow/sqrt go through the same libm calls lane by lane; everything else is exact IEEE.
      const bool same = std::memcmp(&so[i], &vo[i], sizeof(double)) == 0 || (std::isnan(so[i]) && std::isnan(vo[i]));
      if (!same) {
        INFO("X" << idx << " lane " << i << ": " << so[i] << " vs " << vo[i]);
        CHECK(same);
        break;
      }
    }
  }
}

TEST_CASE("program evaluation matches the tree evaluator") {
  const Batch sides = random_sides(50, 5);
  const CenterTable& t = CenterTable::builtin();
  for (int idx : t.indices()) {
    std::vector<double> out(sides.a.size());
    k::active().run_program(t.at(idx).program, sides.a.data(), sides.b.data(), sides.c.data(), out.size(), out.data());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double ref = expr::eval(*t.at(idx).weight, sides.a[i], sides.b[i], sides.c[i]);
      CHECK(out[i] == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}
