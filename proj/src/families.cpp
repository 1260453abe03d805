#include "poncelet/families.hpp"

#include <algorithm>
#include <cmath>

namespace poncelet {

const char* to_string(Family f) {
  switch (f) {
    case Family::confocal: return "confocal";
    case Family::incircle: return "incircle";
    case Family::circumcircle: return "circumcircle";
    case Family::homothetic: return "homothetic";
    case Family::excentral: return "excentral";
    case Family::dual: return "dual";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::confocal, Family::incircle, Family::circumcircle, Family::homothetic,
                   Family::excentral, Family::dual, Family::custom})
    if (s == to_string(f)) return f;
  throw Error(Errc::usage, "unknown family '" + s + "'");
}

const std::vector<Family>& named_families() {
  static const std::vector<Family> f = {Family::confocal,   Family::incircle,  Family::circumcircle,
                                        Family::homothetic, Family::excentral, Family::dual};
  return f;
}

std::pair<double, double> confocal_caustic(double a, double b) {
  if (!(b > 0) || !(a > b))
    throw Error(Errc::domain, "confocal caustic needs a > b > 0");
  const double d = delta(a, b), c2 = a * a - b * b;
  return {a * (d - b * b) / c2, b * (a * a - d) / c2};
}

double closure_residual(const ConcentricPair& p) { return p.a_c / p.a + p.b_c / p.b - 1.0; }

double printed_closure_residual(const ConcentricPair& p) { return p.a / p.a_c + p.b / p.b_c - 1.0; }

namespace {

void check_nested(const ConcentricPair& p) {
  if (!(p.a > 0) || !(p.b > 0)) throw Error(Errc::domain, "outer semi-axes must be positive");
  if (!(p.a_c > 0) || !(p.b_c > 0) || !(p.a_c < p.a) || !(p.b_c < p.b))
    throw Error(Errc::domain, "caustic must lie strictly inside the outer ellipse");
}

}  // namespace

ConcentricPair family_pair(Family family, double a, double b, std::optional<double> circum_ac,
                           const CenterTable& table) {
  if (!(a > 0) || !(b > 0)) throw Error(Errc::domain, "semi-axes must be positive");
  if (a < b) throw Error(Errc::domain, "families are built with a >= b");
  ConcentricPair p{a, b, 0, 0, family};
  switch (family) {
    case Family::confocal: {
      auto [ac, bc] = confocal_caustic(a, b);
      p.a_c = ac;
      p.b_c = bc;
      break;
    }
    case Family::incircle:
      p.a_c = p.b_c = a * b / (a + b);
      break;
    case Family::circumcircle: {
      const double ac = circum_ac.value_or(0.6 * a);
      p.b = a;
      p.a_c = ac;
      p.b_c = a - ac;
      break;
    }
    case Family::homothetic:
      p.a_c = a / 2;
      p.b_c = b / 2;
      break;
    case Family::excentral: {
      const double d = delta(a, b);
      p.a = (b * b + d) / a;
      p.b = (a * a + d) / b;
      p.a_c = a;
      p.b_c = b;
      break;
    }
    case Family::dual: {
      if (!(a > b)) throw Error(Errc::domain, "dual family needs a > b");
      const StationaryCaustic s = find_stationary_caustic(a, b, 4, table);
      p.a_c = s.a_c;
      p.b_c = s.b_c;
      break;
    }
    case Family::custom:
      throw Error(Errc::usage, "custom pairs are built directly, not by family_pair");
  }
  check_nested(p);
  if (std::abs(closure_residual(p)) > 1e-10)
    throw Error(Errc::consistency, std::string("closure violated for the ") + to_string(family) + " pair");
  return p;
}

NormalizedPair normalize(const ConcentricPair& pair) {
  check_nested(pair);
  NormalizedPair n;
  n.ap = pair.a_c / pair.a;
  n.bp = pair.b_c / pair.b;
  if (n.ap >= n.bp) {
    const double c = std::sqrt(n.ap * n.ap - n.bp * n.bp);
    n.f = cplx(-c, 0);
    n.g = cplx(c, 0);
  } else {
    const double c = std::sqrt(n.bp * n.bp - n.ap * n.ap);
    n.f = cplx(0, -c);
    n.g = cplx(0, c);
  }
  n.p = 0.5 * (n.ap + n.bp);
  n.q = 0.5 * (n.ap - n.bp);
  n.p_outer = 0.5 * (pair.a + pair.b);
  n.q_outer = 0.5 * (pair.a - pair.b);
  return n;
}

std::array<cplx, 3> blaschke_triangle(const NormalizedPair& np, cplx lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw Error(Errc::domain, "lambda must lie on the unit circle");
  if (!(std::abs(np.f) < 1) || !(std::abs(np.g) < 1)) throw Error(Errc::domain, "foci must lie in the unit disk");
  const cplx f = np.f, g = np.g, fb = std::conj(f), gb = std::conj(g);
  return solve_cubic(1.0, -(f + g + lambda * fb * gb), f * g + lambda * (fb + gb), -lambda);
}

namespace {

Triangle to_outer(const ConcentricPair& pair, const std::array<cplx, 3>& z) {
  Triangle t;
  for (int i = 0; i < 3; ++i) t.v[i] = cplx(pair.a * z[i].real(), pair.b * z[i].imag());
  return t;
}

void sort_by_arg(std::array<cplx, 3>& z) {
  std::sort(z.begin(), z.end(), [](cplx x, cplx y) { return std::arg(x) < std::arg(y); });
}

}  // namespace

TriangleSample triangle_at(const ConcentricPair& pair, cplx lambda) {
  auto z = blaschke_triangle(normalize(pair), lambda);
  sort_by_arg(z);
  return {to_outer(pair, z), lambda};
}

std::vector<TriangleSample> family_triangles(const ConcentricPair& pair, int n, int cycles, double offset) {
  if (n < 1 || cycles < 1) throw Error(Errc::arity, "need at least one sample per cycle");
  const NormalizedPair np = normalize(pair);
  std::vector<TriangleSample> out;
  out.reserve(static_cast<std::size_t>(n) * cycles);
  std::array<cplx, 3> prev{};
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int j = 0; j < n * cycles; ++j) {
    const cplx lam = std::polar(1.0, 2.0 * kPi * (j + offset) / n);
    auto z = blaschke_triangle(np, lam);
    if (j == 0) {
      sort_by_arg(z);
    } else {
      int best = 0;
      double best_d = INFINITY;
      for (int p = 0; p < 6; ++p) {
        double d = 0;
        for (int i = 0; i < 3; ++i) d += std::norm(z[perms[p][i]] - prev[i]);
        if (d < best_d) {
          best_d = d;
          best = p;
        }
      }
      z = {z[perms[best][0]], z[perms[best][1]], z[perms[best][2]]};
    }
    prev = z;
    out.push_back({to_outer(pair, z), lam});
  }
  return out;
}

double tangency_residual(cplx p1, cplx p2, double a_c, double b_c) {
  const cplx u(p1.real() / a_c, p1.imag() / b_c), v(p2.real() / a_c, p2.imag() / b_c);
  const cplx d = v - u;
  const double cross = u.real() * v.imag() - u.imag() * v.real();
  return std::abs(std::abs(cross) / std::abs(d) - 1.0);
}

TangentConstruction tangent_construction(const ConcentricPair& pair, double vertex_angle) {
  check_nested(pair);
  const double a = pair.a, b = pair.b, ac = pair.a_c, bc = pair.b_c;
  const cplx p1(a * std::cos(vertex_angle), b * std::sin(vertex_angle));
  // In the frame where the caustic is the unit circle the tangent points are at
  // arg(P) +- acos(1/|P|).
  const cplx pn(p1.real() / ac, p1.imag() / bc);
  const double r = std::abs(pn);
  if (!(r > 1)) throw Error(Errc::geometry, "vertex has no real tangents to the caustic");
  const double base = std::arg(pn), spread = std::acos(1.0 / r);
  cplx others[2];
  for (int s = 0; s < 2; ++s) {
    const double phi = base + (s == 0 ? spread : -spread);
    // Tangent line: x cos(phi)/ac + y sin(phi)/bc = 1; direction perpendicular to its normal.
    const double nx = std::cos(phi) / ac, ny = std::sin(phi) / bc;
    const double dx = -ny, dy = nx;
    const double qa = dx * dx / (a * a) + dy * dy / (b * b);
    const double qb = 2.0 * (p1.real() * dx / (a * a) + p1.imag() * dy / (b * b));
    const double sp = -qb / qa;
    others[s] = p1 + sp * cplx(dx, dy);
  }
  TangentConstruction tc;
  tc.sample.tri = Triangle{{p1, others[0], others[1]}};
  tc.sample.lambda = cplx(NAN, NAN);
  tc.closure = tangency_residual(others[0], others[1], ac, bc);
  return tc;
}

namespace {

double locus_diameter(double a, double b, double t, int k, const CenterTable& table, int samples) {
  ConcentricPair p{a, b, t * a, (1.0 - t) * b, Family::custom};
  std::vector<TriangleSample> ts = family_triangles(p, samples, 1, 0.5);
  std::vector<Triangle> tris;
  tris.reserve(ts.size());
  for (const auto& s : ts) tris.push_back(s.tri);
  std::vector<cplx> pts(tris.size());
  std::vector<unsigned char> bad;
  center_points(tris, k, pts, &bad, table);
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (bad[i]) pts[i] = center_point(tris[i], k, table);
  double d = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
  return std::isfinite(d) ? d : INFINITY;
}

}  // namespace

StationaryCaustic find_stationary_caustic(double a, double b, int k, const CenterTable& table, int samples) {
  if (!(a > 0) || !(b > 0)) throw Error(Errc::domain, "semi-axes must be positive");
  table.at(k);
  const double eps = 1e-3;
  const int grid = 200;
  auto diam = [&](double t) {
    try {
      return locus_diameter(a, b, t, k, table, samples);
    } catch (const Error&) {
      return static_cast<double>(INFINITY);
    }
  };
  int best = 0;
  double best_d = INFINITY;
  for (int i = 0; i <= grid; ++i) {
    const double t = eps + (1.0 - 2.0 * eps) * i / grid;
    const double d = diam(t);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  const double h = (1.0 - 2.0 * eps) / grid;
  double lo = std::max(eps, eps + h * (best - 1)), hi = std::min(1.0 - eps, eps + h * (best + 1));
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = diam(x1), f2 = diam(x2);
  while (hi - lo > 1e-12) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = diam(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = diam(x2);
    }
  }
  StationaryCaustic s;
  s.t = 0.5 * (lo + hi);
  s.diameter = diam(s.t);
  s.a_c = s.t * a;
  s.b_c = (1.0 - s.t) * b;
  if (!(s.diameter <= 1e-7 * std::max(a, b)))
    throw Error(Errc::no_solution, "no caustic keeps X" + std::to_string(k) + " stationary (best locus diameter " +
                                       std::to_string(s.diameter) + ")");
  return s;
}

double ellipse_angle(const ConcentricPair& pair, cplx z) {
  return std::atan2(z.imag() / pair.b, z.real() / pair.a);
}

}  // namespace poncelet
