#include "poncelet/locus.hpp"

#include <algorithm>
#include <cmath>

#include "poncelet/kernels.hpp"

namespace poncelet {

namespace {

constexpr double kRepairStep = 1e-3;

cplx combination_at(const ConcentricPair& pair, cplx lambda, const std::vector<std::pair<int, double>>& terms,
                    const CenterTable& table) {
  const Triangle t = triangle_at(pair, lambda).tri;
  cplx x(0);
  for (const auto& [k, c] : terms) x += c * center_point(t, k, table);
  return x;
}

// Richardson extrapolation of the symmetric lambda-neighbour averages, error O(step^4). The step
// shrinks while successive estimates keep getting closer; fast-moving centers need small steps,
// but cancellation in the weights grows as the step shrinks.
cplx repair(const ConcentricPair& pair, cplx lambda, const std::vector<std::pair<int, double>>& terms,
            const CenterTable& table) {
  auto avg = [&](double h) {
    return 0.5 * (combination_at(pair, lambda * std::polar(1.0, h), terms, table) +
                  combination_at(pair, lambda * std::polar(1.0, -h), terms, table));
  };
  auto rich = [&](double h) { return (4.0 * avg(h) - avg(2.0 * h)) / 3.0; };
  double h = kRepairStep;
  cplx best = rich(h);
  double best_diff = INFINITY;
  for (int i = 0; i < 6; ++i) {
    h *= 0.25;
    const cplx next = rich(h);
    const double diff = std::abs(next - best);
    if (!(diff < best_diff)) break;
    best_diff = diff;
    best = next;
  }
  return best;
}

double outer_scale(const ConcentricPair& p) { return std::max(p.a, p.b); }

}  // namespace

LocusTrace trace_combination(const ConcentricPair& pair, const std::vector<std::pair<int, double>>& terms, int n,
                             int cycles, const CenterTable& table) {
  if (n < 64) throw Error(Errc::arity, "a locus trace needs at least 64 samples");
  if (cycles < 1) throw Error(Errc::arity, "cycles must be positive");
  const NormalizedPair np = normalize(pair);
  const std::size_t total = static_cast<std::size_t>(n) * cycles;
  LocusTrace tr;
  tr.k = terms.size() == 1 && terms[0].second == 1.0 ? terms[0].first : 0;
  tr.pair = pair;
  tr.lambdas.resize(total);
  std::vector<Triangle> tris(total);
  for (std::size_t j = 0; j < total; ++j) {
    // Reduce the index so every cycle sees bit-identical lambdas.
    const cplx lam = std::polar(1.0, 2.0 * kPi * static_cast<double>(j % n) / n);
    tr.lambdas[j] = lam;
    auto z = blaschke_triangle(np, lam);
    for (int i = 0; i < 3; ++i) tris[j].v[i] = cplx(pair.a * z[i].real(), pair.b * z[i].imag());
  }
  tr.points.assign(total, cplx(0));
  std::vector<unsigned char> any_bad(total, 0);
  std::vector<cplx> pts(total);
  std::vector<unsigned char> bad;
  for (const auto& [k, c] : terms) {
    center_points(tris, k, pts, &bad, table);
    for (std::size_t j = 0; j < total; ++j) {
      if (bad[j]) any_bad[j] = 1;
      else tr.points[j] += c * pts[j];
    }
  }
  for (std::size_t j = 0; j < total; ++j) {
    if (!any_bad[j]) continue;
    tr.points[j] = repair(pair, tr.lambdas[j], terms, table);
    ++tr.repaired;
  }
  return tr;
}

LocusTrace trace_locus(const ConcentricPair& pair, int k, int n, int cycles, const CenterTable& table) {
  LocusTrace t = trace_combination(pair, {{k, 1.0}}, n, cycles, table);
  t.k = k;
  return t;
}

const char* to_string(PQReading r) { return r == PQReading::outer ? "outer" : "caustic"; }

UVW uvw_from_combo(const NormalizedPair& np, cplx alpha, cplx beta, PQReading reading) {
  const double p = reading == PQReading::outer ? np.p_outer : np.p;
  const double q = reading == PQReading::outer ? np.q_outer : np.q;
  if (!(std::abs(p - q) > 1e-14) || !(std::abs(p + q) > 1e-14))
    throw Error(Errc::domain, "u, v, w are singular at p = +-q");
  const cplx f = np.f, g = np.g, fb = std::conj(f), gb = std::conj(g);
  const cplx a = alpha, b = beta;
  const double den = 3.0 * (p - q) * (p + q);
  UVW r;
  r.u = p * (fb * gb * (a * p * p - q * q * (a + 3.0 * b)) + 3.0 * b * p * q) / den;
  r.v = b * p * q * (q - f * g * p) / ((q - p) * (p + q)) + a * f * g * q / 3.0;
  r.w = (q * (fb + gb) * (p * p * (a + 3.0 * b) - a * q * q) + p * (f + g) * (a * p * p - q * q * (a + 3.0 * b))) / den;
  return r;
}

ConicFit predict_locus(const ConcentricPair& pair, double alpha, double beta, double gamma, cplx fixed_point,
                       const Tolerances& tol) {
  UVW p = uvw_from_combo(normalize(pair), alpha, beta, PQReading::outer);
  p.w += gamma * fixed_point;
  return ellipse_from_uvw(p, tol);
}

int stationary_center(Family f) {
  switch (f) {
    case Family::confocal: return 9;
    case Family::incircle: return 1;
    case Family::circumcircle: return 3;
    case Family::homothetic: return 2;
    case Family::excentral: return 6;
    case Family::dual: return 4;
    case Family::custom: return 0;
  }
  return 0;
}

namespace {

const double kProbe[] = {0.3, 1.1, 1.7, 2.9, 4.1, 5.3};

// Largest |X_k - (alpha X2 + beta X3)| over the probe triangles, relative to the outer size.
// The stationary center sits at the common center, so gamma drops out.
double expansion_gap(const ConcentricPair& pair, int k, double alpha, double beta, const CenterTable& table) {
  double gap = 0;
  for (double t : kProbe) {
    const Triangle tri = triangle_at(pair, std::polar(1.0, t)).tri;
    const cplx x = center_point(tri, k, table) - alpha * center_point(tri, 2, table) - beta * center_point(tri, 3, table);
    gap = std::max(gap, std::abs(x));
  }
  return gap / outer_scale(pair);
}

// Least-squares alpha, beta over the probe triangles.
std::optional<std::array<double, 2>> fitted_expansion(const ConcentricPair& pair, int k, const CenterTable& table) {
  double m00 = 0, m01 = 0, m11 = 0, r0 = 0, r1 = 0;
  for (double t : kProbe) {
    const Triangle tri = triangle_at(pair, std::polar(1.0, t)).tri;
    const cplx x2 = center_point(tri, 2, table), x3 = center_point(tri, 3, table), xk = center_point(tri, k, table);
    m00 += std::norm(x2);
    m11 += std::norm(x3);
    m01 += std::real(std::conj(x2) * x3);
    r0 += std::real(std::conj(x2) * xk);
    r1 += std::real(std::conj(x3) * xk);
  }
  const double det = m00 * m11 - m01 * m01;
  if (!(std::abs(det) > 1e-14 * std::max(1.0, m00 * m11))) return std::nullopt;
  return std::array<double, 2>{(r0 * m11 - r1 * m01) / det, (m00 * r1 - m01 * r0) / det};
}

constexpr double kExpansionTol = 1e-9;

}  // namespace

std::optional<ComboExpansion> expand_combo(const ConcentricPair& pair, int k, const CenterTable& table) {
  const int s = stationary_center(pair.family);
  if (auto fc = fixed_combo(k)) return ComboExpansion{(*fc)[0], (*fc)[1], 1.0 - (*fc)[0] - (*fc)[1], s, "fixed"};
  try {
    if (has_combo_row(k) && (pair.family == Family::confocal || pair.family == Family::incircle)) {
      const double rho = inradius_circumradius(triangle_at(pair, std::polar(1.0, 0.3)).tri).rho;
      std::optional<ComboExpansion> e;
      try {
        const auto c = combo_coefficients(k, rho);
        if (pair.family == Family::incircle) {
          e = ComboExpansion{c[1], c[2], c[0], 1, "table"};
        } else {
          const auto id = x9_identity_coefficients(rho);
          e = ComboExpansion{c[0] * id[0] + c[1], c[0] * id[1] + c[2], c[0] * id[2], 9, "table"};
        }
      } catch (const Error& err) {
        if (err.code() != Errc::pole) throw;
      }
      // A row that does not reproduce the center is not used.
      if (e && expansion_gap(pair, k, e->alpha, e->beta, table) <= kExpansionTol) return e;
    }
    if (auto f = fitted_expansion(pair, k, table)) {
      if (expansion_gap(pair, k, (*f)[0], (*f)[1], table) <= kExpansionTol)
        return ComboExpansion{(*f)[0], (*f)[1], 1.0 - (*f)[0] - (*f)[1], s, "fitted"};
    }
  } catch (const Error&) {
    // singular probe triangle
  }
  return std::nullopt;
}

namespace {

struct SpeedStats {
  double min_speed = 0;
  bool chords_positive = false;
};

// Fourth-order central differences over one periodic cycle, with a parabolic refinement of
// the squared speed around the smallest sample.
SpeedStats numeric_speed(const std::vector<cplx>& pts, std::size_t n) {
  const double dt = 2.0 * kPi / static_cast<double>(n);
  std::vector<double> s2(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto at = [&](long o) { return pts[(j + n + o) % n]; };
    const cplx d = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * dt);
    s2[j] = std::norm(d);
  }
  const std::size_t jm = static_cast<std::size_t>(std::min_element(s2.begin(), s2.end()) - s2.begin());
  const double y0 = s2[jm], ym = s2[(jm + n - 1) % n], yp = s2[(jm + 1) % n];
  double best = y0;
  const double curv = yp - 2.0 * y0 + ym;
  if (curv > 0) best = y0 - (yp - ym) * (yp - ym) / (8.0 * curv);
  SpeedStats st;
  st.min_speed = std::sqrt(std::max(0.0, best));

  std::vector<double> x(n), y(n), ch(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = pts[j].real();
    y[j] = pts[j].imag();
  }
  kernels::active().speeds(x.data(), y.data(), n, 1.0 / dt, ch.data());
  st.chords_positive = std::all_of(ch.begin(), ch.end(), [](double v) { return v > 0; });
  return st;
}

void compare_prediction(const LocusTrace& tr, const UVW& uvw, const ConicFit& pred, const Tolerances& tol,
                        LocusVerdict& v) {
  const ConcentricPair& pair = tr.pair;
  const double scale = outer_scale(pair);
  double gap = 0;
  for (std::size_t j = 0; j < tr.points.size(); ++j) {
    const cplx lam = tr.lambdas[j];
    gap = std::max(gap, std::abs(tr.points[j] - (uvw.u * lam + uvw.v / lam + uvw.w)));
  }
  v.max_prediction_gap = gap / scale;
  v.center_gap = std::abs(v.fit.center - pred.center);
  const double M = std::max(pred.semi_major, 1e-300);
  v.axis_gap = std::max(std::abs(v.fit.semi_major - pred.semi_major), std::abs(v.fit.semi_minor - pred.semi_minor)) / M;

  std::vector<cplx> nz(tr.points.size());
  for (std::size_t j = 0; j < nz.size(); ++j) nz[j] = cplx(tr.points[j].real() / pair.a, tr.points[j].imag() / pair.b);
  const ConicFit nf = fit_conic(nz, tol);
  ConicFit np;
  if (pred.kind == ConicKind::ellipse || pred.kind == ConicKind::circle) {
    np = scale_conic(pred, 1.0 / pair.a, 1.0 / pair.b, tol);
  } else {
    np = pred;
    np.center = cplx(pred.center.real() / pair.a, pred.center.imag() / pair.b);
  }
  const double nM = std::max(np.semi_major, 1e-300);
  double ng = std::abs(nf.center - np.center);
  if (np.kind == ConicKind::ellipse || np.kind == ConicKind::circle)
    ng = std::max(ng, std::max(std::abs(nf.semi_major - np.semi_major), std::abs(nf.semi_minor - np.semi_minor)) / nM);
  v.normalized_gap = ng;
}

LocusVerdict verdict_for(const LocusTrace& tr, const std::optional<UVW>& uvw, const Tolerances& tol) {
  LocusVerdict v;
  v.repaired = tr.repaired;
  v.fit = fit_conic(tr.points, tol);
  v.kind = v.fit.kind;
  if (uvw) {
    v.uvw = uvw;
    v.predicted = ellipse_from_uvw(*uvw, tol);
    compare_prediction(tr, *uvw, *v.predicted, tol, v);
  }
  if (v.kind == ConicKind::ellipse || v.kind == ConicKind::circle) {
    try {
      v.winding = winding_number(tr.points, v.fit.center);
    } catch (const Error&) {
      v.winding = 0;
    }
    v.min_speed = numeric_speed(tr.points, tr.points.size()).min_speed;
  }
  return v;
}

}  // namespace

LocusVerdict classify_locus(const ConcentricPair& pair, int k, int n, const Tolerances& tol, const CenterTable& table) {
  const LocusTrace tr = trace_locus(pair, k, n, 1, table);
  std::optional<UVW> uvw;
  if (auto e = expand_combo(pair, k, table)) {
    UVW p = uvw_from_combo(normalize(pair), e->alpha, e->beta, PQReading::outer);
    uvw = p;  // the stationary center sits at the origin
  }
  return verdict_for(tr, uvw, tol);
}

LocusVerdict classify_combo(const ConcentricPair& pair, double alpha, double beta, int n, const Tolerances& tol,
                            const CenterTable& table) {
  const LocusTrace tr = trace_combination(pair, {{2, alpha}, {3, beta}}, n, 1, table);
  return verdict_for(tr, uvw_from_combo(normalize(pair), alpha, beta, PQReading::outer), tol);
}

std::pair<double, double> degenerate_ratios(double a, double b) {
  if (!(b > 0) || !(a > b)) throw Error(Errc::domain, "degenerate ratios need a > b > 0");
  const double d = delta(a, b);
  return {(2 * a * a - b * b + d) / (2 * b * b), (2 * b * b - a * a + d) / (2 * a * a)};
}

std::pair<double, double> degenerate_ratios_rho(double rho) {
  if (!(rho > 0) || !(rho <= 0.5)) throw Error(Errc::domain, "rho must lie in (0, 1/2]");
  const double s = std::sqrt(1.0 - 2.0 * rho);
  return {1.5 * (1 + s) / (rho + 1 - s), 1.5 * (1 - s) / (rho + 1 + s)};
}

namespace {

// Signed circularity measure (C - A)/(A + C) of the conic through r X2 + X3.
double circ_measure(const std::vector<cplx>& x2, const std::vector<cplx>& x3, double r, std::vector<cplx>& buf) {
  for (std::size_t j = 0; j < x2.size(); ++j) buf[j] = r * x2[j] + x3[j];
  const ConicFit f = fit_conic(buf);
  double A = f.coeffs[0], C = f.coeffs[2];
  if (A + C < 0) {
    A = -A;
    C = -C;
  }
  return (C - A) / (A + C);
}

}  // namespace

CircularRatios circular_ratios(double a, double b, int grid, int n, const CenterTable& table) {
  if (!(b > 0) || !(a > b)) throw Error(Errc::domain, "circular ratios need a > b > 0");
  CircularRatios cr;
  const double d = delta(a, b);
  cr.printed_plus = (d - 3 * a * b + 2 * (a * a + b * b)) / (2 * a * b);
  cr.printed_minus = (d - 3 * a * b - 2 * (a * a + b * b)) / (2 * a * b);
  cr.printed_sum = cr.printed_plus + cr.printed_minus;

  const ConcentricPair pair = family_pair(Family::confocal, a, b, std::nullopt, table);
  const std::vector<cplx> x2 = trace_locus(pair, 2, n, 1, table).points;
  const std::vector<cplx> x3 = trace_locus(pair, 3, n, 1, table).points;
  std::vector<cplx> buf(x2.size());
  std::vector<double> rs(grid), gs(grid);
  for (int i = 0; i < grid; ++i) {
    rs[i] = -5.0 + 10.0 * i / (grid - 1);
    gs[i] = circ_measure(x2, x3, rs[i], buf);
  }
  for (int i = 0; i + 1 < grid; ++i) {
    if (!std::isfinite(gs[i]) || !std::isfinite(gs[i + 1])) continue;
    if ((gs[i] > 0) == (gs[i + 1] > 0) && gs[i] != 0) continue;
    double lo = rs[i], hi = rs[i + 1], glo = gs[i];
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gm = circ_measure(x2, x3, mid, buf);
      if ((gm > 0) == (glo > 0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    const double root = 0.5 * (lo + hi);
    for (std::size_t j = 0; j < buf.size(); ++j) buf[j] = root * x2[j] + x3[j];
    const ConicFit f = fit_conic(buf);
    if ((f.kind == ConicKind::circle || f.kind == ConicKind::ellipse) &&
        f.semi_major - f.semi_minor <= 1e-6 * f.semi_major)
      cr.numeric.push_back(root);
  }
  if (cr.numeric.size() == 2) cr.numeric_sum = cr.numeric[0] + cr.numeric[1];
  return cr;
}

Monotonicity monotonicity_report(const LocusTrace& trace, const UVW& uvw) {
  Monotonicity m;
  const double au = std::abs(uvw.u), av = std::abs(uvw.v);
  m.analytic_min = (au - av) * (au - av);
  if (winding_sign_from_uvw(uvw) == 0 || std::abs(au - av) <= 1e-12 * std::max(au, av)) {
    m.min_speed = 0;
    m.monotone = false;
    return m;
  }
  std::size_t cycle = trace.points.size();
  // Use one lambda cycle when the trace covers several.
  for (std::size_t j = 1; j < trace.lambdas.size(); ++j)
    if (trace.lambdas[j] == trace.lambdas[0]) {
      cycle = j;
      break;
    }
  std::vector<cplx> pts(trace.points.begin(), trace.points.begin() + static_cast<long>(cycle));
  const SpeedStats st = numeric_speed(pts, cycle);
  m.min_speed = st.min_speed;
  m.monotone = st.chords_positive && st.min_speed > 0;
  return m;
}

int winding_of_trace(const LocusTrace& trace, cplx center) { return winding_number(trace.points, center); }

int winding_of_locus(const ConcentricPair& pair, int k, int n, const CenterTable& table) {
  const LocusTrace tr = trace_locus(pair, k, n, 3, table);
  const std::vector<cplx> first(tr.points.begin(), tr.points.begin() + n);
  const ConicFit f = fit_conic(first);
  if (f.kind != ConicKind::ellipse && f.kind != ConicKind::circle)
    throw Error(Errc::geometry, "winding is undefined for a " + std::string(to_string(f.kind)) + " locus");
  return winding_number(tr.points, f.center);
}

}  // namespace poncelet
