#include "poncelet/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "poncelet/kernels.hpp"

namespace poncelet {

const char* to_string(Errc c) {
  switch (c) {
    case Errc::domain: return "domain";
    case Errc::degree: return "degree";
    case Errc::arity: return "arity";
    case Errc::proximity: return "proximity";
    case Errc::geometry: return "geometry";
    case Errc::missing_center: return "missing-center";
    case Errc::evaluation: return "evaluation";
    case Errc::pole: return "pole";
    case Errc::missing_row: return "missing-row";
    case Errc::missing_formula: return "missing-formula";
    case Errc::no_solution: return "no-solution";
    case Errc::consistency: return "consistency";
    case Errc::parse: return "parse";
    case Errc::usage: return "usage";
    case Errc::io: return "io";
  }
  return "unknown";
}

const char* to_string(ConicKind k) {
  switch (k) {
    case ConicKind::ellipse: return "ellipse";
    case ConicKind::circle: return "circle";
    case ConicKind::segment: return "segment";
    case ConicKind::point: return "point";
    case ConicKind::other: return "other";
  }
  return "other";
}

ConicKind conic_kind_from_string(const std::string& s) {
  for (ConicKind k : {ConicKind::ellipse, ConicKind::circle, ConicKind::segment, ConicKind::point,
                      ConicKind::other})
    if (s == to_string(k)) return k;
  throw Error(Errc::parse, "unknown conic kind '" + s + "'");
}

double delta(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw Error(Errc::domain, "delta needs positive semi-axes");
  double a2 = a * a, b2 = b * b;
  return std::sqrt(a2 * a2 - a2 * b2 + b2 * b2);
}

double normalize_angle(double angle) {
  double t = std::fmod(angle, kPi);
  if (t <= -kPi / 2) t += kPi;
  if (t > kPi / 2) t -= kPi;
  return t;
}

std::array<cplx, 3> solve_cubic(cplx c3, cplx c2, cplx c1, cplx c0) {
  if (c3 == cplx(0)) throw Error(Errc::degree, "leading cubic coefficient is zero");
  const cplx A = c2 / c3, B = c1 / c3, C = c0 / c3;
  // z = t - A/3 gives t^3 + p t + q = 0.
  const cplx p = B - A * A / 3.0;
  const cplx q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
  const cplx disc = q * q / 4.0 + p * p * p / 27.0;
  const cplx sd = std::sqrt(disc);
  cplx u3 = -q / 2.0 + sd;
  cplx alt = -q / 2.0 - sd;
  if (std::abs(alt) > std::abs(u3)) u3 = alt;

  std::array<cplx, 3> t{};
  if (std::abs(u3) == 0) {
    t = {cplx(0), cplx(0), cplx(0)};
  } else {
    const cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx w(-0.5, std::sqrt(3.0) / 2.0);
    cplx uk = u;
    for (int k = 0; k < 3; ++k) {
      t[k] = uk - p / (3.0 * uk);
      uk *= w;
    }
  }

  std::array<cplx, 3> z{};
  auto poly = [&](cplx x) { return ((c3 * x + c2) * x + c1) * x + c0; };
  auto dpoly = [&](cplx x) { return (3.0 * c3 * x + 2.0 * c2) * x + c1; };
  for (int k = 0; k < 3; ++k) {
    cplx x = t[k] - A / 3.0;
    cplx d = dpoly(x);
    if (std::abs(d) > 0) {
      cplx y = x - poly(x) / d;
      if (std::isfinite(y.real()) && std::isfinite(y.imag()) && std::abs(poly(y)) <= std::abs(poly(x)))
        x = y;
    }
    z[k] = x;
  }
  return z;
}

std::array<double, 6> conic_from_shape(cplx center, double semi_major, double semi_minor,
                                       double angle) {
  if (!(semi_major > 0) || !(semi_minor > 0)) return {};
  const double cs = std::cos(angle), sn = std::sin(angle);
  const double iM = 1.0 / (semi_major * semi_major), im = 1.0 / (semi_minor * semi_minor);
  const double cx = center.real(), cy = center.imag();
  std::array<double, 6> k{};
  k[0] = cs * cs * iM + sn * sn * im;
  k[1] = 2.0 * sn * cs * (iM - im);
  k[2] = sn * sn * iM + cs * cs * im;
  k[3] = -2.0 * k[0] * cx - k[1] * cy;
  k[4] = -k[1] * cx - 2.0 * k[2] * cy;
  k[5] = k[0] * cx * cx + k[1] * cx * cy + k[2] * cy * cy - 1.0;
  double nrm = 0;
  for (double v : k) nrm += v * v;
  nrm = std::sqrt(nrm);
  for (double& v : k) v /= nrm;
  return k;
}

namespace {

void normalize_coeffs(std::array<double, 6>& k) {
  double nrm = 0;
  for (double v : k) nrm += v * v;
  nrm = std::sqrt(nrm);
  if (nrm > 0)
    for (double& v : k) v /= nrm;
}

ConicKind kind_from_axes(double major, double minor, double degen_tol, double circle_tol) {
  if (major <= degen_tol) return ConicKind::point;
  if (minor <= degen_tol * std::max(1.0, major)) return ConicKind::segment;
  if (major - minor <= circle_tol * major) return ConicKind::circle;
  return ConicKind::ellipse;
}

}  // namespace

ConicFit shape_from_coeffs(const std::array<double, 6>& coeffs, const Tolerances& tol) {
  ConicFit f;
  f.coeffs = coeffs;
  f.kind = ConicKind::other;
  double A = coeffs[0], B = coeffs[1], C = coeffs[2], D = coeffs[3], E = coeffs[4], F = coeffs[5];
  if (A + C < 0) {
    A = -A; B = -B; C = -C; D = -D; E = -E; F = -F;
  }
  const double det = A * C - B * B / 4.0;
  if (!(det > 0)) {
    f.diagnostics = "quadratic form not definite";
    return f;
  }
  const double cx = (B * E - 2.0 * C * D) / (4.0 * det);
  const double cy = (B * D - 2.0 * A * E) / (4.0 * det);
  const double Fc = F + 0.5 * (D * cx + E * cy);
  Eigen::Matrix2d M;
  M << A, B / 2.0, B / 2.0, C;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
  const double l1 = es.eigenvalues()(0), l2 = es.eigenvalues()(1);
  if (!(Fc < 0) || !(l1 > 0)) {
    f.diagnostics = "no real points";
    return f;
  }
  f.center = cplx(cx, cy);
  f.semi_major = std::sqrt(-Fc / l1);
  f.semi_minor = std::sqrt(-Fc / l2);
  const Eigen::Vector2d e = es.eigenvectors().col(0);
  f.angle = normalize_angle(std::atan2(e(1), e(0)));
  f.kind = f.semi_major - f.semi_minor <= tol.circle_tol * f.semi_major ? ConicKind::circle
                                                                       : ConicKind::ellipse;
  if (f.kind == ConicKind::circle) f.angle = 0;
  return f;
}

ConicFit fit_conic(std::span<const cplx> points, const Tolerances& tol) {
  const std::size_t n = points.size();
  if (n < 6) throw Error(Errc::arity, "conic fit needs at least 6 points");
  ConicFit out;
  for (const cplx& z : points) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      out.kind = ConicKind::other;
      out.residual_rms = INFINITY;
      out.diagnostics = "non-finite sample";
      return out;
    }
  }
  cplx c(0);
  for (const cplx& z : points) c += z;
  c /= static_cast<double>(n);
  double ss = 0, spread = 0;
  for (const cplx& z : points) {
    ss += std::norm(z - c);
    spread = std::max(spread, std::abs(z - c));
  }
  const double s = std::sqrt(ss / static_cast<double>(n));
  out.center = c;
  if (spread <= tol.degen_tol) {
    out.kind = ConicKind::point;
    out.semi_major = spread;
    out.semi_minor = 0;
    out.diagnostics = "all samples within degen_tol of their mean";
    return out;
  }

  std::vector<double> wx(n), wy(n);
  for (std::size_t i = 0; i < n; ++i) {
    wx[i] = (points[i].real() - c.real()) / s;
    wy[i] = (points[i].imag() - c.imag()) / s;
  }

  // Principal extents on scaled data decide the segment case.
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    cov(0, 0) += wx[i] * wx[i];
    cov(0, 1) += wx[i] * wy[i];
    cov(1, 1) += wy[i] * wy[i];
  }
  cov(1, 0) = cov(0, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> pca(cov);
  const Eigen::Vector2d e_major = pca.eigenvectors().col(1), e_minor = pca.eigenvectors().col(0);
  double lo1 = INFINITY, hi1 = -INFINITY, lo2 = INFINITY, hi2 = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    double p1 = wx[i] * e_major(0) + wy[i] * e_major(1);
    double p2 = wx[i] * e_minor(0) + wy[i] * e_minor(1);
    lo1 = std::min(lo1, p1); hi1 = std::max(hi1, p1);
    lo2 = std::min(lo2, p2); hi2 = std::max(hi2, p2);
  }
  const double major_half = 0.5 * (hi1 - lo1), minor_half = 0.5 * (hi2 - lo2);

  Eigen::MatrixXd Dm(n, 6);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = wx[i], y = wy[i];
    Dm(i, 0) = x * x; Dm(i, 1) = x * y; Dm(i, 2) = y * y;
    Dm(i, 3) = x; Dm(i, 4) = y; Dm(i, 5) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Dm, Eigen::ComputeThinV);
  Eigen::VectorXd v = svd.matrixV().col(5);
  std::array<double, 6> kn{};
  for (int j = 0; j < 6; ++j) kn[j] = v(j);
  normalize_coeffs(kn);
  out.residual_rms = std::sqrt(kernels::active().conic_sumsq(wx.data(), wy.data(), n, kn.data()) /
                               static_cast<double>(n));

  // Back to the caller's frame: x_n = (x - cx)/s.
  {
    const double A = kn[0], B = kn[1], C = kn[2], D = kn[3], E = kn[4], F = kn[5];
    const double cx = c.real(), cy = c.imag(), s2 = s * s;
    std::array<double, 6> k{};
    k[0] = A / s2;
    k[1] = B / s2;
    k[2] = C / s2;
    k[3] = (-2.0 * A * cx - B * cy) / s2 + D / s;
    k[4] = (-2.0 * C * cy - B * cx) / s2 + E / s;
    k[5] = (A * cx * cx + B * cx * cy + C * cy * cy) / s2 - (D * cx + E * cy) / s + F;
    normalize_coeffs(k);
    out.coeffs = k;
  }

  if (minor_half <= tol.degen_tol * std::max(1.0, major_half)) {
    out.kind = ConicKind::segment;
    const double m1 = 0.5 * (hi1 + lo1), m2 = 0.5 * (hi2 + lo2);
    out.center = c + s * cplx(m1 * e_major(0) + m2 * e_minor(0), m1 * e_major(1) + m2 * e_minor(1));
    out.semi_major = s * major_half;
    out.semi_minor = s * minor_half;
    out.angle = normalize_angle(std::atan2(e_major(1), e_major(0)));
    return out;
  }

  ConicFit shape = shape_from_coeffs(kn, tol);
  if (shape.kind == ConicKind::other) {
    out.kind = ConicKind::other;
    out.diagnostics = shape.diagnostics;
    return out;
  }
  out.center = c + s * shape.center;
  out.semi_major = s * shape.semi_major;
  out.semi_minor = s * shape.semi_minor;
  out.angle = shape.angle;
  if (out.residual_rms > tol.fit_tol) {
    out.kind = ConicKind::other;
    out.diagnostics = "conic residual above fit_tol";
    return out;
  }
  out.kind = shape.kind;
  return out;
}

ConicKind classify_conic(const ConicFit& fit, double circle_tol, double degen_tol, double fit_tol) {
  if (fit.semi_major <= degen_tol) return ConicKind::point;
  if (fit.semi_minor <= degen_tol * std::max(1.0, fit.semi_major)) return ConicKind::segment;
  std::array<double, 6> k = fit.coeffs;
  bool zero = std::all_of(k.begin(), k.end(), [](double v) { return v == 0; });
  if (zero) k = conic_from_shape(fit.center, fit.semi_major, fit.semi_minor, fit.angle);
  const double disc = k[1] * k[1] - 4.0 * k[0] * k[2];
  if (!(disc < 0) || !(fit.residual_rms <= fit_tol)) return ConicKind::other;
  if (fit.semi_major - fit.semi_minor <= circle_tol * fit.semi_major) return ConicKind::circle;
  return ConicKind::ellipse;
}

ConicFit scale_conic(const ConicFit& fit, double sx, double sy, const Tolerances& tol) {
  if (fit.kind == ConicKind::point || fit.kind == ConicKind::segment) {
    ConicFit out = fit;
    auto map = [&](cplx z) { return cplx(sx * z.real(), sy * z.imag()); };
    out.center = map(fit.center);
    if (fit.kind == ConicKind::segment) {
      const cplx d = fit.semi_major * std::polar(1.0, fit.angle);
      const cplx e = map(fit.center + d) - out.center;
      out.semi_major = std::abs(e);
      out.semi_minor = fit.semi_minor * std::min(std::abs(sx), std::abs(sy));
      out.angle = normalize_angle(std::arg(e));
    } else {
      out.semi_major *= std::max(std::abs(sx), std::abs(sy));
    }
    return out;
  }
  std::array<double, 6> k = fit.coeffs;
  if (std::all_of(k.begin(), k.end(), [](double v) { return v == 0; }))
    k = conic_from_shape(fit.center, fit.semi_major, fit.semi_minor, fit.angle);
  k[0] /= sx * sx;
  k[1] /= sx * sy;
  k[2] /= sy * sy;
  k[3] /= sx;
  k[4] /= sy;
  normalize_coeffs(k);
  ConicFit out = shape_from_coeffs(k, tol);
  out.residual_rms = fit.residual_rms;
  if (out.kind != ConicKind::other && fit.kind == ConicKind::other) out.kind = ConicKind::other;
  return out;
}

ConicFit ellipse_from_uvw(const UVW& p, const Tolerances& tol) {
  ConicFit f;
  const double au = std::abs(p.u), av = std::abs(p.v);
  f.center = p.w;
  f.semi_major = au + av;
  f.semi_minor = std::abs(au - av);
  f.residual_rms = 0;
  f.kind = kind_from_axes(f.semi_major, f.semi_minor, tol.degen_tol, tol.circle_tol);
  if (f.kind == ConicKind::circle || f.kind == ConicKind::point)
    f.angle = 0;
  else
    f.angle = normalize_angle(0.5 * (std::arg(p.u) + std::arg(p.v)));
  f.coeffs = conic_from_shape(f.center, f.semi_major, f.semi_minor, f.angle);
  return f;
}

int winding_number(std::span<const cplx> path, cplx origin) {
  const std::size_t n = path.size();
  if (n < 2) throw Error(Errc::arity, "winding number needs a path");
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY, dmin = INFINITY;
  for (const cplx& z : path) {
    xmin = std::min(xmin, z.real()); xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag()); ymax = std::max(ymax, z.imag());
    dmin = std::min(dmin, std::abs(z - origin));
  }
  const double diam = std::hypot(xmax - xmin, ymax - ymin);
  if (!(dmin > 1e-9 * diam)) throw Error(Errc::proximity, "origin lies on the path");
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = path[i] - origin, b = path[(i + 1) % n] - origin;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2 * kPi)));
}

int winding_sign_from_uvw(const UVW& p) {
  const double d = std::norm(p.u) - std::norm(p.v);
  return (d > 0) - (d < 0);
}

}  // namespace poncelet
