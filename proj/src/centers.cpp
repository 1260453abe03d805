#include "poncelet/centers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "poncelet/embedded.hpp"
#include "poncelet/kernels.hpp"

namespace poncelet {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

CenterTable CenterTable::parse(std::string_view text, const std::string& origin) {
  CenterTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t p = s.find(';', start);
      fields.push_back(trim(std::string_view(s).substr(start, p == std::string::npos ? std::string::npos : p - start)));
      if (p == std::string::npos) break;
      start = p + 1;
    }
    if (fields.size() != 3) throw Error(Errc::parse, where + ": expected 'k; expression; flag'");
    CenterSpec spec;
    try {
      std::size_t used = 0;
      spec.k = std::stoi(fields[0], &used);
      if (used != fields[0].size() || spec.k <= 0) throw std::invalid_argument("k");
    } catch (const std::exception&) {
      throw Error(Errc::parse, where + ": bad center index '" + fields[0] + "'");
    }
    if (fields[2] == "true") spec.squared_rational = true;
    else if (fields[2] == "false") spec.squared_rational = false;
    else throw Error(Errc::parse, where + ": flag must be true or false");
    spec.source = fields[1];
    try {
      spec.weight = expr::parse(spec.source);
    } catch (const Error& e) {
      throw Error(Errc::parse, where + ": " + e.what());
    }
    spec.program = expr::compile(*spec.weight);
    if (expr::squared_rational(*spec.weight) != spec.squared_rational)
      throw Error(Errc::consistency, where + ": squared_rational flag of X" + std::to_string(spec.k) +
                                         " disagrees with its weight expression");
    if (t.specs_.count(spec.k)) throw Error(Errc::parse, where + ": duplicate center X" + fields[0]);
    t.specs_.emplace(spec.k, std::move(spec));
  }
  return t;
}

CenterTable CenterTable::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::io, "cannot open center table '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

const CenterTable& CenterTable::builtin() {
  static const CenterTable t = parse(embedded::centers_table(), "centers.txt");
  return t;
}

const CenterSpec& CenterTable::at(int k) const {
  auto it = specs_.find(k);
  if (it == specs_.end()) throw Error(Errc::missing_center, "center X" + std::to_string(k) + " is not in the table");
  return it->second;
}

std::vector<int> CenterTable::indices() const {
  std::vector<int> out;
  for (const auto& [k, s] : specs_) out.push_back(k);
  return out;
}

namespace {

double signed_area2(const Triangle& t) {
  const cplx e1 = t.v[1] - t.v[0], e2 = t.v[2] - t.v[0];
  return e1.real() * e2.imag() - e1.imag() * e2.real();
}

bool weights_singular(double w1, double w2, double w3) {
  const double s = w1 + w2 + w3;
  if (!std::isfinite(w1) || !std::isfinite(w2) || !std::isfinite(w3) || s == 0) return true;
  return std::abs(w1) + std::abs(w2) + std::abs(w3) > 1e8 * std::abs(s);
}

double weight(const CenterSpec& spec, double a, double b, double c) {
  double out = 0;
  kernels::active().run_program(spec.program, &a, &b, &c, 1, &out);
  return out;
}

cplx combine(const Triangle& t, double w1, double w2, double w3) {
  return (w1 * t.v[0] + w2 * t.v[1] + w3 * t.v[2]) / (w1 + w2 + w3);
}

}  // namespace

std::array<double, 3> side_lengths(const Triangle& t) {
  if (!(std::abs(signed_area2(t)) > 2e-12))
    throw Error(Errc::geometry, "degenerate triangle (area at most 1e-12)");
  return {std::abs(t.v[1] - t.v[2]), std::abs(t.v[2] - t.v[0]), std::abs(t.v[0] - t.v[1])};
}

cplx center_point(const Triangle& t, int k, const CenterTable& table) {
  const CenterSpec& spec = table.at(k);
  const auto s = side_lengths(t);
  double w1 = weight(spec, s[0], s[1], s[2]);
  double w2 = weight(spec, s[1], s[2], s[0]);
  double w3 = weight(spec, s[2], s[0], s[1]);
  if (!weights_singular(w1, w2, w3)) return combine(t, w1, w2, w3);

  // Removable singularity: average the centers at symmetric perturbations of one of the two
  // closest sides.
  int order[3] = {0, 1, 2};
  std::sort(order, order + 3, [&](int i, int j) {
    auto gap = [&](int m) { return std::abs(s[(m + 1) % 3] - s[(m + 2) % 3]); };
    return gap(i) < gap(j);
  });
  const double e = 1e-5 * std::max({s[0], s[1], s[2]});
  for (int m : order) {
    const int side = (m + 1) % 3;
    cplx acc(0);
    bool ok = true;
    for (double sign : {1.0, -1.0}) {
      auto p = s;
      p[side] += sign * e;
      double u1 = weight(spec, p[0], p[1], p[2]);
      double u2 = weight(spec, p[1], p[2], p[0]);
      double u3 = weight(spec, p[2], p[0], p[1]);
      if (weights_singular(u1, u2, u3)) {
        ok = false;
        break;
      }
      acc += combine(t, u1, u2, u3);
    }
    if (ok) return acc / 2.0;
  }
  throw Error(Errc::evaluation, "barycentric weights of X" + std::to_string(k) + " are singular here");
}

void center_points(std::span<const Triangle> tris, int k, std::span<cplx> out,
                   std::vector<unsigned char>* singular, const CenterTable& table) {
  const CenterSpec& spec = table.at(k);
  const std::size_t n = tris.size();
  if (out.size() < n) throw Error(Errc::arity, "output span too short");
  std::vector<double> s1(n), s2(n), s3(n), w1(n), w2(n), w3(n);
  std::vector<double> vx[3], vy[3];
  for (int i = 0; i < 3; ++i) {
    vx[i].resize(n);
    vy[i].resize(n);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto s = side_lengths(tris[j]);
    s1[j] = s[0];
    s2[j] = s[1];
    s3[j] = s[2];
    for (int i = 0; i < 3; ++i) {
      vx[i][j] = tris[j].v[i].real();
      vy[i][j] = tris[j].v[i].imag();
    }
  }
  const auto& K = kernels::active();
  K.run_program(spec.program, s1.data(), s2.data(), s3.data(), n, w1.data());
  K.run_program(spec.program, s2.data(), s3.data(), s1.data(), n, w2.data());
  K.run_program(spec.program, s3.data(), s1.data(), s2.data(), n, w3.data());
  std::vector<double> ox(n), oy(n);
  const double* px[3] = {vx[0].data(), vx[1].data(), vx[2].data()};
  const double* py[3] = {vy[0].data(), vy[1].data(), vy[2].data()};
  K.combine3(w1.data(), w2.data(), w3.data(), px, py, n, ox.data(), oy.data());
  if (singular) singular->assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (weights_singular(w1[j], w2[j], w3[j])) {
      out[j] = cplx(NAN, NAN);
      if (singular) (*singular)[j] = 1;
    } else {
      out[j] = cplx(ox[j], oy[j]);
    }
  }
}

Radii inradius_circumradius(const Triangle& t) {
  const auto s = side_lengths(t);
  const double area = 0.5 * std::abs(signed_area2(t));
  const double sp = 0.5 * (s[0] + s[1] + s[2]);
  Radii r;
  r.r = area / sp;
  r.R = s[0] * s[1] * s[2] / (4.0 * area);
  r.rho = r.r / r.R;
  return r;
}

namespace {

// Coefficients are polynomials in rho, lowest degree first, over a shared denominator.
struct Row {
  int k;
  std::vector<double> den, al, be, ga;
};

const std::vector<Row>& rows() {
  static const std::vector<Row> r = {
      {1, {1}, {1}, {0}, {0}},
      {2, {1}, {0}, {1}, {0}},
      {3, {1}, {0}, {0}, {1}},
      {4, {1}, {0}, {3}, {-2}},
      {5, {2}, {0}, {3}, {-1}},
      {7, {4, 1}, {4, 2}, {0, 3}, {0, -4}},
      {8, {1}, {-2}, {3}, {0}},
      {9, {4, 1}, {-2, -1}, {6}, {0, 2}},
      {10, {2}, {-1}, {3}, {0}},
      {11, {1, -2}, {1}, {0, -3}, {0, 1}},
      {12, {1, 2}, {1}, {0, 3}, {0, -1}},
      {20, {1}, {0}, {-3}, {4}},
      {21, {3, 2}, {0}, {3}, {0, 2}},
      {35, {1, 2}, {1}, {0}, {0, 2}},
      {36, {1, -2}, {1}, {0}, {0, -2}},
      {40, {1}, {-1}, {0}, {2}},
      {46, {1, -1}, {1, 1}, {0}, {0, -2}},
      {55, {1, 1}, {1}, {0}, {0, 1}},
      {56, {1, -1}, {1}, {0}, {0, -1}},
      {57, {2, -1}, {2, 1}, {0}, {0, -2}},
      {63, {1, 1}, {-2, -1}, {3}, {0, 2}},
      {65, {1}, {1, 1}, {0}, {0, -1}},
      {72, {1}, {-2, -1}, {3}, {0, 1}},
      {78, {-1, 1}, {2, 1}, {-3}, {0}},
      {79, {3, 2}, {3, 2}, {0, 6}, {0, -6}},
      {80, {1, -2}, {1, 2}, {0, -6}, {0, 2}},
      {84, {0, 1}, {-2, -1}, {6}, {-4, 2}},
      {90, {-1, 2, 1}, {-1, -2, -1}, {0, 6}, {0, -2, 2}},
      {100, {-1, 2}, {2}, {-3}, {0, 2}},
      {104, {-1, 2}, {-2}, {3}, {-2, 2}},
      {119, {-1, 2}, {1}, {-3, 3}, {1, -1}},
      {140, {4}, {0}, {3}, {1}},
      {142, {8, 2}, {2, 1}, {6, 3}, {0, -2}},
      {144, {4, 1}, {-8, -4}, {12, -3}, {0, 8}},
      {145, {7}, {4}, {3}, {0}},
      {149, {-3, 6}, {-4}, {9, -6}, {-8, 12}},
      {153, {-3, 6}, {4}, {-3, -6}, {-4, 12}},
      {165, {3}, {-1}, {0}, {4}},
      {191, {3, 2}, {-3, -2}, {6}, {0, 4}},
      {200, {-2, 1}, {4, 1}, {-6}, {0}},
  };
  return r;
}

double horner(const std::vector<double>& p, double x) {
  double v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

}  // namespace

std::vector<int> combo_rows() {
  std::vector<int> out;
  for (const Row& r : rows()) out.push_back(r.k);
  return out;
}

bool has_combo_row(int k) {
  return std::any_of(rows().begin(), rows().end(), [k](const Row& r) { return r.k == k; });
}

std::array<double, 3> combo_coefficients(int k, double rho) {
  for (const Row& r : rows()) {
    if (r.k != k) continue;
    const double d = horner(r.den, rho);
    double scale = 0;
    for (std::size_t i = 0; i < r.den.size(); ++i) scale += std::abs(r.den[i]) * std::pow(std::abs(rho), i);
    if (std::abs(d) <= 1e-12 * scale)
      throw Error(Errc::pole, "combo row X" + std::to_string(k) + " has a pole at rho=" + std::to_string(rho));
    return {horner(r.al, rho) / d, horner(r.be, rho) / d, horner(r.ga, rho) / d};
  }
  throw Error(Errc::missing_row, "no combo row for X" + std::to_string(k));
}

std::array<double, 3> x9_identity_coefficients(double rho) {
  const double d = rho + 2.0;
  return {6.0 / d, 2.0 * rho / d, -(rho + 4.0) / d};
}

std::array<double, 3> x9_row_from_identity(double rho) {
  const auto c = x9_identity_coefficients(rho);
  return {1.0 / c[2], -c[0] / c[2], -c[1] / c[2]};
}

double combo_residual(const Triangle& t, int k, const CenterTable& table) {
  const Radii r = inradius_circumradius(t);
  const auto c = combo_coefficients(k, r.rho);
  const cplx x1 = center_point(t, 1, table), x2 = center_point(t, 2, table), x3 = center_point(t, 3, table);
  const cplx xk = center_point(t, k, table);
  return std::abs(xk - (c[0] * x1 + c[1] * x2 + c[2] * x3)) / r.R;
}

double x9_identity_residual(const Triangle& t, const CenterTable& table) {
  const Radii r = inradius_circumradius(t);
  const auto c = x9_identity_coefficients(r.rho);
  const cplx x1 = center_point(t, 1, table), x2 = center_point(t, 2, table), x3 = center_point(t, 3, table);
  const cplx x9 = center_point(t, 9, table);
  return std::abs(x1 - (c[0] * x2 + c[1] * x3 + c[2] * x9)) / r.R;
}

const std::vector<FixedCombo>& x2x3_fixed_combos() {
  using A = std::array<double, 2>;
  static const std::vector<FixedCombo> t = {
      {2, A{1, 0}},          {3, A{0, 1}},          {4, A{3, -2}},     {5, A{1.5, -0.5}},
      {20, A{-3, 4}},        {140, A{0.75, 0.25}},  {376, A{-1, 2}},   {381, A{2, -1}},
      {382, A{6, -5}},       {546, A{2.25, -1.25}}, {547, A{1.25, -0.25}}, {548, std::nullopt},
      {549, A{0.5, 0.5}},    {550, std::nullopt},   {631, std::nullopt}, {632, std::nullopt},
  };
  return t;
}

std::optional<std::array<double, 2>> fixed_combo(int k) {
  for (const FixedCombo& f : x2x3_fixed_combos())
    if (f.k == k) return f.coeffs;
  return std::nullopt;
}

Triangle excentral_triangle(const Triangle& t) {
  const auto s = side_lengths(t);
  const cplx A = t.v[0], B = t.v[1], C = t.v[2];
  const double a = s[0], b = s[1], c = s[2];
  return Triangle{{(-a * A + b * B + c * C) / (-a + b + c), (a * A - b * B + c * C) / (a - b + c),
                   (a * A + b * B - c * C) / (a + b - c)}};
}

}  // namespace poncelet
