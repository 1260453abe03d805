#include "poncelet/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "poncelet/embedded.hpp"

namespace poncelet::report {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(Errc::usage, key + ": '" + v + "' is not a number");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(Errc::usage, key + ": '" + v + "' is not an integer");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

}  // namespace

std::vector<int> parse_centers(const std::string& s, bool* has_range) {
  std::vector<int> out;
  if (has_range) *has_range = false;
  for (const std::string& part : split(s, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<int>(to_int("centers", part)));
      continue;
    }
    const long long lo = to_int("centers", trim(part.substr(0, dots))), hi = to_int("centers", trim(part.substr(dots + 2)));
    if (lo > hi || hi - lo > 100000) throw Error(Errc::usage, "bad center range '" + part + "'");
    for (long long k = lo; k <= hi; ++k) out.push_back(static_cast<int>(k));
    if (has_range) *has_range = true;
  }
  if (out.empty()) throw Error(Errc::usage, "empty center list");
  std::set<int> seen;
  std::vector<int> uniq;
  for (int k : out)
    if (seen.insert(k).second) uniq.push_back(k);
  return uniq;
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& part : split(s, ',')) out.push_back(to_real("list", part));
  if (out.empty()) throw Error(Errc::usage, "empty list");
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& key_in, const std::string& value_in) {
  std::string key = trim(key_in);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string v = trim(value_in);
  if (key == "family") {
    cfg.family = family_from_string(v);
  } else if (key == "ab") {
    cfg.a = to_real(key, v);
    cfg.b = 1.0;
  } else if (key == "a") {
    cfg.a = to_real(key, v);
  } else if (key == "b") {
    cfg.b = to_real(key, v);
  } else if (key == "circum_ac") {
    cfg.circum_ac = to_real(key, v);
  } else if (key == "center" || key == "centers") {
    cfg.centers = parse_centers(v, &cfg.centers_is_range);
  } else if (key == "samples") {
    cfg.samples = static_cast<int>(to_int(key, v));
  } else if (key == "tol") {
    cfg.check_tol = to_real(key, v);
  } else if (key == "circle_tol") {
    cfg.tol.circle_tol = to_real(key, v);
  } else if (key == "degen_tol") {
    cfg.tol.degen_tol = to_real(key, v);
  } else if (key == "fit_tol") {
    cfg.tol.fit_tol = to_real(key, v);
  } else if (key == "format") {
    cfg.format = v;
  } else if (key == "out") {
    cfg.out = v;
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(to_int(key, v));
  } else if (key == "suite") {
    cfg.suite = v;
  } else if (key == "ab_grid") {
    cfg.ab_grid = parse_real_list(v);
  } else if (key == "stationary") {
    cfg.stationary = static_cast<int>(to_int(key, v));
  } else if (key == "waive") {
    for (const std::string& w : split(v, ',')) cfg.waivers.push_back(w);
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(to_int(key, v));
  } else {
    throw Error(Errc::usage, "unknown setting '" + key_in + "'");
  }
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::usage, "config line " + std::to_string(lineno) + ": expected key=value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::usage, "cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  apply_config_text(cfg, ss.str());
}

void validate(const RunConfig& cfg) {
  if (!(cfg.a > 0) || !(cfg.b > 0) || !std::isfinite(cfg.a) || !std::isfinite(cfg.b))
    throw Error(Errc::usage, "semi-axes must be positive and finite");
  if (cfg.samples < 64) throw Error(Errc::usage, "samples must be at least 64");
  for (double t : {cfg.tol.circle_tol, cfg.tol.degen_tol, cfg.tol.fit_tol, cfg.check_tol})
    if (!(t > 0)) throw Error(Errc::usage, "tolerances must be positive");
  if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "svg")
    throw Error(Errc::usage, "format must be csv, json or svg");
  for (double r : cfg.ab_grid)
    if (!(r > 1)) throw Error(Errc::usage, "aspect ratios in the grid must exceed 1");
  if (cfg.threads < 0) throw Error(Errc::usage, "threads must be non-negative");
}

// ---------------------------------------------------------------- fixtures

std::optional<ConicKind> Fixture::expected(int k) const {
  if (k == stationary) return ConicKind::point;
  if (std::find(circles.begin(), circles.end(), k) != circles.end()) return ConicKind::circle;
  if (std::find(ellipses.begin(), ellipses.end(), k) != ellipses.end()) return ConicKind::ellipse;
  return std::nullopt;
}

Fixture parse_fixture(const std::string& text) {
  Fixture f;
  bool have_family = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(Errc::parse, "fixture line without ':': " + line);
    const std::string key = trim(line.substr(0, colon)), val = trim(line.substr(colon + 1));
    auto ints = [&] {
      std::vector<int> v;
      for (const std::string& s : split(val, ',')) v.push_back(static_cast<int>(to_int(key, s)));
      return v;
    };
    if (key == "family") {
      f.family = family_from_string(val);
      have_family = true;
    } else if (key == "stationary") {
      f.stationary = static_cast<int>(to_int(key, val));
    } else if (key == "ellipses") {
      f.ellipses = ints();
    } else if (key == "circles") {
      f.circles = ints();
    } else {
      throw Error(Errc::parse, "unknown fixture key '" + key + "'");
    }
  }
  if (!have_family) throw Error(Errc::parse, "fixture has no family line");
  return f;
}

const Fixture& builtin_fixture(Family fam) {
  static const std::map<Family, Fixture> all = [] {
    std::map<Family, Fixture> m;
    for (const auto& [name, text] : embedded::fixtures()) {
      Fixture f = parse_fixture(text);
      m[f.family] = f;
    }
    return m;
  }();
  auto it = all.find(fam);
  if (it == all.end()) throw Error(Errc::usage, std::string("no bundled fixture for ") + to_string(fam));
  return it->second;
}

// ---------------------------------------------------------------- pool

void parallel_for(int n, int threads, const std::function<void(int)>& job) {
  if (n <= 0) return;
  int t = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  t = std::min(t, n);
  std::atomic<int> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < t; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

namespace {

// ---------------------------------------------------------------- helpers

ConcentricPair pair_for(const RunConfig& cfg, Family f) {
  const CenterTable& table = CenterTable::builtin();
  if (f == Family::custom) throw Error(Errc::usage, "the custom family has no construction");
  return family_pair(f, cfg.a, cfg.b, cfg.circum_ac, table);
}

std::vector<int> requested_centers(const RunConfig& cfg, const std::vector<int>& fallback) {
  const CenterTable& table = CenterTable::builtin();
  if (cfg.centers.empty()) return fallback;
  std::vector<int> out;
  for (int k : cfg.centers) {
    if (table.contains(k))
      out.push_back(k);
    else if (!cfg.centers_is_range)
      throw Error(Errc::usage, "X" + std::to_string(k) + " is not in the center table");
  }
  if (out.empty()) throw Error(Errc::usage, "no requested center is in the center table");
  return out;
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& content, std::ostream& out, bool single) {
  const std::string path = output_path(cfg, name, single);
  if (path.empty()) {
    out << content;
  } else {
    atomic_write(path, content);
    out << "wrote " << path << "\n";
  }
}

std::vector<cplx> ellipse_points(double a, double b, int n) {
  std::vector<cplx> p(n);
  for (int j = 0; j < n; ++j) p[j] = cplx(a * std::cos(2 * kPi * j / n), b * std::sin(2 * kPi * j / n));
  return p;
}

const char* kPalette[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#bcbd22"};

// ---------------------------------------------------------------- verify plumbing

struct Check {
  std::string name;
  std::string status;  // pass, fail, warn, skip
  double value = 0;
  double limit = 0;
  std::string detail;
};

Check judge(std::string name, double value, double limit, std::string detail = {}) {
  Check c{std::move(name), std::isfinite(value) && value <= limit ? "pass" : "fail", value, limit, std::move(detail)};
  return c;
}

std::vector<double> grid_or(const RunConfig& cfg, std::vector<double> fallback) {
  if (!cfg.ab_grid.empty()) return cfg.ab_grid;
  if (cfg.b > 0 && cfg.a / cfg.b > 1) return {cfg.a / cfg.b};
  return fallback;
}

std::string ab_tag(double ab) { return "a/b=" + format_real(ab); }

std::vector<Check> formula_suite(const RunConfig& cfg, Family fam) {
  const auto& table = fam == Family::confocal ? confocal_formulas() : homothetic_formulas();
  const std::vector<double> grid = grid_or(cfg, {1.2, 1.5, 2.0, 3.0});
  const int n = std::max(cfg.samples, 1440);
  const int cells = static_cast<int>(table.size() * grid.size());
  std::vector<FormulaCheck> res(cells);
  std::vector<std::string> errors(cells);
  parallel_for(cells, cfg.threads, [&](int i) {
    const AxisFormula& f = table[i / grid.size()];
    try {
      res[i] = check_formula(fam, f.k, grid[i % grid.size()], n, cfg.check_tol);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  std::vector<Check> out;
  for (int i = 0; i < cells; ++i) {
    const AxisFormula& f = table[i / grid.size()];
    const double ab = grid[i % grid.size()];
    const std::string name = std::string(to_string(fam)) + " " + (f.k == kExcenters ? "excenters" : "X" + std::to_string(f.k)) +
                             " " + ab_tag(ab);
    if (!errors[i].empty()) {
      out.push_back({name, "fail", NAN, cfg.check_tol, errors[i]});
      continue;
    }
    const FormulaCheck& c = res[i];
    if (c.skipped) {
      out.push_back({name, "skip", NAN, cfg.check_tol, c.note});
      continue;
    }
    std::string detail = "formula (" + format_real(c.formula.first) + ", " + format_real(c.formula.second) + "), fitted (" +
                         format_real(c.fitted_major) + ", " + format_real(c.fitted_minor) + ")";
    if (!c.note.empty()) detail += "; " + c.note;
    if (c.corrected_error >= 0) detail += "; corrected form error " + format_real(c.corrected_error);
    out.push_back(judge(name, c.rel_error, cfg.check_tol, detail));
    if (fam == Family::confocal) {
      if (f.k == 2 || f.k == 7) out.push_back(judge(name + " axis-aligned", std::abs(c.fitted_angle), 1e-8));
      if ((f.k == 4 || f.k == 10 || f.k == 40 || f.k == 84) && std::abs(c.formula.second) > std::abs(c.formula.first))
        out.push_back(judge(name + " major axis vertical", kPi / 2 - std::abs(c.fitted_angle), 1e-8));
    }
  }
  if (fam == Family::confocal) {
    struct Spot {
      int k;
      int axis;
      double expected;
    };
    for (const Spot& s : std::vector<Spot>{{1, 0, 0.635041}, {1, 1, 0.297438}, {11, 0, 1.143075},
                                           {11, 1, 0.237950}, {40, 0, 0.833333}, {40, 1, 1.25}}) {
      const auto v = confocal_axes(s.k, 1.5, 1.0);
      const double x = s.axis == 0 ? v.first : v.second;
      out.push_back(judge("spot X" + std::to_string(s.k) + (s.axis == 0 ? " a" : " b") + " a/b=1.5",
                          std::abs(x - s.expected), 1e-6, "value " + format_real(x)));
    }
    for (const SpecialRatio& s : special_ratios())
      out.push_back({"special X" + std::to_string(s.k) + " " + s.description, s.pass ? "pass" : "fail", s.residual, s.tolerance,
                     "closed form " + format_real(s.closed_form) + ", bisection root " + format_real(s.root)});
    for (double ab : grid)
      for (const ShapeRelation& r : shape_relations(ab, 1.0))
        out.push_back({"shape " + r.name + " " + ab_tag(ab), r.pass ? "pass" : "fail", r.value, r.expected, {}});
  }
  return out;
}

std::vector<Triangle> random_triangles(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> ang(10.0, 150.0), rot(0.0, 2 * kPi), scale(0.5, 2.0), shift(-1.0, 1.0);
  std::vector<Triangle> out;
  while (static_cast<int>(out.size()) < count) {
    const double A = ang(rng), B = ang(rng), C = 180.0 - A - B;
    if (C < 10.0 || C > 150.0) continue;
    const double deg = kPi / 180.0, t0 = rot(rng), s = scale(rng);
    const cplx o(shift(rng), shift(rng));
    // Inscribed angle at a vertex subtends twice that arc.
    const double t1 = t0 + 2 * C * deg, t2 = t1 + 2 * A * deg;
    out.push_back(Triangle{{o + s * std::polar(1.0, t0), o + s * std::polar(1.0, t1), o + s * std::polar(1.0, t2)}});
  }
  return out;
}

std::vector<Check> combos_suite(const RunConfig& cfg) {
  std::vector<Check> out;
  std::mt19937_64 rng(cfg.seed);
  const std::vector<Triangle> tris = random_triangles(rng, 1000);
  const std::vector<int> rows = combo_rows();
  std::vector<Check> row_checks(rows.size());
  parallel_for(static_cast<int>(rows.size()), cfg.threads, [&](int i) {
    const int k = rows[i];
    double worst = 0;
    int skipped = 0;
    for (const Triangle& t : tris) {
      const double rho = inradius_circumradius(t).rho;
      try {
        const auto c = combo_coefficients(k, rho);
        if (std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])}) > 100) {
          ++skipped;  // near a pole of the row
          continue;
        }
        worst = std::max(worst, combo_residual(t, k));
      } catch (const Error& e) {
        if (e.code() != Errc::pole) throw;
        ++skipped;
      }
    }
    row_checks[i] = judge("table row X" + std::to_string(k) + " residual", worst, 1e-8,
                          std::to_string(tris.size() - skipped) + " triangles, " + std::to_string(skipped) + " near a pole");
  });
  out.insert(out.end(), row_checks.begin(), row_checks.end());
  for (int k : rows) {
    double worst = 0;
    for (int i = 1; i <= 50; ++i) {
      const double rho = 0.5 * i / 50.0;
      try {
        const auto c = combo_coefficients(k, rho);
        worst = std::max(worst, std::abs(c[0] + c[1] + c[2] - 1.0) / std::max(1.0, std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2])));
      } catch (const Error&) {
      }
    }
    out.push_back(judge("table row X" + std::to_string(k) + " coefficient sum", worst, 1e-12));
  }
  double x9 = 0;
  for (const Triangle& t : tris) x9 = std::max(x9, x9_identity_residual(t));
  out.push_back(judge("X1 from X2, X3, X9 identity", x9, 1e-8));

  const double ab = cfg.a / cfg.b;
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (Family fam : {Family::confocal, Family::incircle}) {
    const ConcentricPair pair = family_pair(fam, ab, 1.0);
    for (int i = 0; i < 20; ++i) {
      const double al = coef(rng), be = coef(rng);
      const LocusVerdict v = classify_combo(pair, al, be, cfg.samples, cfg.tol);
      const std::string tag = std::string(to_string(fam)) + " alpha=" + format_real(al) + " beta=" + format_real(be);
      out.push_back(judge(tag + " center gap", v.center_gap, 1e-8 * pair.a));
      out.push_back(judge(tag + " axis gap", v.axis_gap, 1e-6));
      out.push_back(judge(tag + " normalized-frame gap", v.normalized_gap, 1e-6));
    }
  }
  return out;
}

std::vector<Check> degeneracy_suite(const RunConfig& cfg) {
  std::vector<Check> out;
  const int n = std::max(cfg.samples, 2880);
  for (double ab : grid_or(cfg, {1.5})) {
    const ConcentricPair pair = family_pair(Family::confocal, ab, 1.0);
    const auto [r1, r2] = degenerate_ratios(ab, 1.0);
    for (double r : {r1, r2}) {
      const LocusVerdict v = classify_combo(pair, r, 1.0, n, cfg.tol);
      out.push_back(judge("segment locus at alpha/beta=" + format_real(r) + " " + ab_tag(ab),
                          v.fit.semi_minor / v.fit.semi_major, 1e-7, std::string("kind ") + to_string(v.kind)));
    }
    const double rho = inradius_circumradius(triangle_at(pair, std::polar(1.0, 0.3)).tri).rho;
    const auto [q1, q2] = degenerate_ratios_rho(rho);
    out.push_back(judge("rho form of degenerate ratios " + ab_tag(ab),
                        std::max(std::abs(q1 - r1) / r1, std::abs(q2 - r2) / r2), 1e-9));

    const CircularRatios cr = circular_ratios(ab, 1.0);
    auto nearest = [&](double x) {
      double best = NAN;
      for (double r : cr.numeric)
        if (!(std::abs(r - x) >= std::abs(best - x))) best = r;
      return best;
    };
    const double np = nearest(cr.printed_plus);
    out.push_back(judge("circular ratio r+ " + ab_tag(ab), std::abs(np - cr.printed_plus), 1e-6,
                        "printed " + format_real(cr.printed_plus) + ", scan " + format_real(np) + ", gamma " +
                            format_real(1.0 / (1.0 + np))));
    const double nm = nearest(cr.printed_minus);
    Check minus = judge("circular ratio r- " + ab_tag(ab), std::abs(nm - cr.printed_minus), 1e-6,
                        "printed " + format_real(cr.printed_minus) + ", scan " + format_real(nm) + ", gamma " +
                            format_real(1.0 / (1.0 + nm)));
    if (minus.status == "fail") {
      minus.status = "warn";
      minus.detail += "; known discrepancy: the printed value does not give a circular locus";
    }
    out.push_back(minus);
    Check sum{"circular ratio sum " + ab_tag(ab), "pass", cr.printed_sum, -3.0,
              "printed sum " + format_real(cr.printed_sum) + ", scan sum " + format_real(cr.numeric_sum)};
    if (std::abs(cr.printed_sum + 3.0) > 1e-6 || !(std::abs(cr.numeric_sum + 3.0) <= 1e-6)) {
      sum.status = "warn";
      sum.detail += "; known discrepancy in the sum observation";
    }
    out.push_back(sum);
  }
  return out;
}

std::vector<int> confocal_catalog() {
  std::vector<int> ks;
  const CenterTable& table = CenterTable::builtin();
  for (int k : builtin_fixture(Family::confocal).ellipses)
    if (table.contains(k)) ks.push_back(k);
  return ks;
}

std::vector<Check> winding_suite(const RunConfig& cfg) {
  std::vector<Check> out;
  const std::vector<int> ks = requested_centers(cfg, confocal_catalog());
  for (double ab : grid_or(cfg, {1.5})) {
    const ConcentricPair pair = family_pair(Family::confocal, ab, 1.0);
    std::vector<Check> cells(ks.size() * 2);
    parallel_for(static_cast<int>(ks.size()), cfg.threads, [&](int i) {
      const int k = ks[i];
      const std::string tag = "X" + std::to_string(k) + " " + ab_tag(ab);
      try {
        const int w = winding_of_locus(pair, k, cfg.samples);
        cells[2 * i] = {tag + " winding over three cycles", std::abs(w) == 3 ? "pass" : "fail", static_cast<double>(w), 3, {}};
      } catch (const Error& e) {
        cells[2 * i] = {tag + " winding over three cycles", "skip", NAN, 3, e.what()};
      }
      if (auto ex = expand_combo(pair, k)) {
        const LocusVerdict v = classify_locus(pair, k, cfg.samples, cfg.tol);
        const int s = v.uvw ? winding_sign_from_uvw(*v.uvw) : 0;
        cells[2 * i + 1] = {tag + " per-cycle winding vs sign(|u|^2-|v|^2)", v.winding == s && s != 0 ? "pass" : "fail",
                            static_cast<double>(v.winding), static_cast<double>(s), {}};
      } else {
        cells[2 * i + 1] = {tag + " per-cycle winding vs sign(|u|^2-|v|^2)", "skip", NAN, NAN, "no X2/X3 expansion"};
      }
    });
    out.insert(out.end(), cells.begin(), cells.end());
  }
  return out;
}

std::vector<Check> monotonicity_suite(const RunConfig& cfg) {
  std::vector<Check> out;
  const std::vector<int> ks = requested_centers(cfg, confocal_catalog());
  for (double ab : grid_or(cfg, {1.5})) {
    const ConcentricPair pair = family_pair(Family::confocal, ab, 1.0);
    std::vector<Check> cells(ks.size());
    parallel_for(static_cast<int>(ks.size()), cfg.threads, [&](int i) {
      const int k = ks[i];
      const std::string tag = "X" + std::to_string(k) + " " + ab_tag(ab) + " minimum speed";
      const auto ex = expand_combo(pair, k);
      if (!ex) {
        cells[i] = {tag, "skip", NAN, 1e-4, "no X2/X3 expansion"};
        return;
      }
      const LocusTrace tr = trace_locus(pair, k, cfg.samples);
      const UVW uvw = uvw_from_combo(normalize(pair), ex->alpha, ex->beta);
      const Monotonicity m = monotonicity_report(tr, uvw);
      if (!m.monotone) {
        cells[i] = {tag, "skip", m.min_speed, 1e-4, "degenerate locus"};
        return;
      }
      const double rel = std::abs(m.min_speed * m.min_speed - m.analytic_min) / m.analytic_min;
      cells[i] = judge(tag, rel, 1e-4, "numeric " + format_real(m.min_speed * m.min_speed) + ", (|u|-|v|)^2 " +
                                           format_real(m.analytic_min));
    });
    out.insert(out.end(), cells.begin(), cells.end());
  }
  return out;
}

std::vector<Check> closure_suite(const RunConfig& cfg) {
  std::vector<Check> out;
  for (double ab : cfg.ab_grid.empty() ? std::vector<double>{1.1, 1.25, 1.5, 2.0, 3.0} : cfg.ab_grid) {
    const ConcentricPair p = family_pair(Family::confocal, ab, 1.0);
    out.push_back(judge("confocal closure " + ab_tag(ab), std::abs(closure_residual(p)), 1e-12));
    Check printed{"printed closure form " + ab_tag(ab), "pass", printed_closure_residual(p), 0, {}};
    if (std::abs(printed.value) > 1e-12) {
      printed.status = "warn";
      printed.detail = "known discrepancy: a/a_c + b/b_c = 1 does not hold";
    }
    out.push_back(printed);
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  const double ab = cfg.a / cfg.b;
  for (Family fam : named_families()) {
    const ConcentricPair p = pair_for(cfg, fam);
    double worst = 0;
    for (int i = 0; i < 100; ++i) worst = std::max(worst, tangent_construction(p, ang(rng)).closure);
    out.push_back(judge(std::string(to_string(fam)) + " tangent construction closure " + ab_tag(ab), worst, 1e-8));
  }
  return out;
}

std::vector<Check> blaschke_suite(const RunConfig& cfg) {
  std::vector<Check> out;
  const double ab = cfg.a / cfg.b;
  for (Family fam : named_families()) {
    const ConcentricPair p = pair_for(cfg, fam);
    const auto tris = family_triangles(p, cfg.samples);
    double on = 0, tang = 0, rmin = INFINITY, rmax = -INFINITY, Rmin = INFINITY, Rmax = -INFINITY;
    for (const TriangleSample& s : tris) {
      for (int i = 0; i < 3; ++i) {
        const cplx z = s.tri.v[i];
        on = std::max(on, std::abs(z.real() * z.real() / (p.a * p.a) + z.imag() * z.imag() / (p.b * p.b) - 1));
        tang = std::max(tang, tangency_residual(z, s.tri.v[(i + 1) % 3], p.a_c, p.b_c));
      }
      const Radii r = inradius_circumradius(s.tri);
      rmin = std::min(rmin, r.rho);
      rmax = std::max(rmax, r.rho);
      Rmin = std::min(Rmin, r.R);
      Rmax = std::max(Rmax, r.R);
    }
    const std::string tag = std::string(to_string(fam)) + " " + ab_tag(ab);
    out.push_back(judge(tag + " vertices on outer", on, 1e-12));
    out.push_back(judge(tag + " sides tangent to caustic", tang, 1e-9));
    if (fam == Family::confocal || fam == Family::incircle)
      out.push_back(judge(tag + " rho spread", rmax - rmin, 1e-10, "rho " + format_real(rmin)));
    if (fam == Family::incircle || fam == Family::circumcircle)
      out.push_back(judge(tag + " circumradius spread", Rmax - Rmin, 1e-10, "R " + format_real(Rmin)));
  }
  return out;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::usage:
    case Errc::missing_center:
    case Errc::missing_formula:
    case Errc::domain:
    case Errc::parse:
      return kExitUsage;
    case Errc::no_solution:
      return kExitNoSolution;
    default:
      return kExitFailure;
  }
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_for(e);
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> s = {"confocal-formulas", "homothetic-formulas", "combos", "degeneracy",
                                             "winding",           "monotonicity",        "closure", "blaschke"};
  return s;
}

// ---------------------------------------------------------------- commands

int cmd_trace(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    if (cfg.format == "json") throw Error(Errc::usage, "trace writes csv or svg");
    const ConcentricPair pair = pair_for(cfg, cfg.family);
    const std::vector<int> ks = requested_centers(cfg, {1});
    std::vector<LocusTrace> traces(ks.size());
    parallel_for(static_cast<int>(ks.size()), cfg.threads, [&](int i) { traces[i] = trace_locus(pair, ks[i], cfg.samples); });
    const std::string fam = to_string(cfg.family);
    if (cfg.format == "csv") {
      for (const LocusTrace& t : traces)
        emit(cfg, fam + "_X" + std::to_string(t.k) + ".csv", trace_csv(t), out, ks.size() == 1);
      return kExitOk;
    }
    std::vector<SvgCurve> curves;
    curves.push_back({ellipse_points(pair.a, pair.b, 360), "black", true});
    curves.push_back({ellipse_points(pair.a_c, pair.b_c, 360), "black", true});
    double extent = std::max(pair.a, pair.b);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      curves.push_back({traces[i].points, kPalette[i % 8], true});
      for (const cplx& z : traces[i].points)
        if (std::isfinite(std::abs(z))) extent = std::max(extent, std::max(std::abs(z.real()), std::abs(z.imag())));
    }
    const Triangle t = triangle_at(pair, std::polar(1.0, 0.3)).tri;
    curves.push_back({{t.v[0], t.v[1], t.v[2]}, "blue", true});
    std::string name = fam;
    for (int k : ks) name += "_X" + std::to_string(k);
    emit(cfg, name + ".svg", render_svg(curves, extent), out, true);
    return kExitOk;
  });
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    const CenterTable& table = CenterTable::builtin();
    const Fixture& fx = builtin_fixture(cfg.family);
    const ConcentricPair pair = pair_for(cfg, cfg.family);
    std::vector<int> fallback;
    {
      std::set<int> s;
      if (table.contains(fx.stationary)) s.insert(fx.stationary);
      for (int k : fx.ellipses) s.insert(k);
      for (int k : fx.circles) s.insert(k);
      fallback.assign(s.begin(), s.end());
    }
    std::vector<int> ks;
    if (cfg.centers.empty()) {
      ks = fallback;  // listed centers missing from the table are reported untested
    } else {
      ks = requested_centers(cfg, {});
    }
    struct Cell {
      LocusVerdict v;
      std::string error;
    };
    std::vector<Cell> cells(ks.size());
    parallel_for(static_cast<int>(ks.size()), cfg.threads, [&](int i) {
      if (!table.contains(ks[i])) return;
      try {
        cells[i].v = classify_locus(pair, ks[i], cfg.samples, cfg.tol);
      } catch (const Error& e) {
        cells[i].error = e.what();
      }
    });
    json rep;
    rep["family"] = to_string(cfg.family);
    rep["a_over_b"] = pair.a / pair.b;
    rep["a"] = pair.a;
    rep["b"] = pair.b;
    rep["a_c"] = pair.a_c;
    rep["b_c"] = pair.b_c;
    rep["samples"] = cfg.samples;
    json recs = json::array(), conj = json::array();
    int yes = 0, no = 0, waived = 0, untested = 0;
    std::vector<std::string> diffs;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const int k = ks[i];
      json r;
      r["k"] = k;
      const auto expect = fx.expected(k);
      if (!table.contains(k)) {
        r["kind"] = nullptr;
        r["matches_appendix"] = "untested";
        r["expected"] = expect ? to_string(*expect) : nullptr;
        r["diagnostics"] = "center not in the table";
        ++untested;
        recs.push_back(r);
        continue;
      }
      const LocusVerdict& v = cells[i].v;
      const bool failed = !cells[i].error.empty();
      r["kind"] = failed ? "other" : to_string(v.kind);
      r["semi_major"] = v.fit.semi_major;
      r["semi_minor"] = v.fit.semi_minor;
      r["angle"] = v.fit.angle;
      r["center"] = {v.fit.center.real(), v.fit.center.imag()};
      r["residual"] = v.fit.residual_rms;
      r["winding"] = v.winding;
      r["repaired"] = v.repaired;
      r["expected"] = expect ? to_string(*expect) : nullptr;
      std::string status = "untested", diag;
      if (expect) {
        if (!failed && v.kind == *expect) {
          status = "yes";
          ++yes;
        } else {
          status = "no";
          diag = "expected " + std::string(to_string(*expect)) + ", observed " + (failed ? "error: " + cells[i].error
                                                                                      : std::string(to_string(v.kind))) +
                 "; axes " + format_real(v.fit.semi_major) + "/" + format_real(v.fit.semi_minor) + ", residual " +
                 format_real(v.fit.residual_rms);
          if (!v.fit.diagnostics.empty()) diag += "; " + v.fit.diagnostics;
          const std::string key = std::string(to_string(cfg.family)) + ":" + std::to_string(k);
          if (std::find(cfg.waivers.begin(), cfg.waivers.end(), key) != cfg.waivers.end()) {
            diag += "; waived";
            r["waived"] = true;
            ++waived;
          } else {
            ++no;
            diffs.push_back("X" + std::to_string(k) + ": " + diag);
          }
        }
      } else {
        ++untested;
        if (!failed && is_conic(v.kind)) diag = "unlisted conic";
      }
      r["matches_appendix"] = status;
      if (!diag.empty()) r["diagnostics"] = diag;
      recs.push_back(r);
      conj.push_back(json{{"k", k}, {"squared_rational", table.at(k).squared_rational}, {"observed", r["kind"]}});
    }
    rep["records"] = recs;
    rep["conjecture"] = conj;
    rep["summary"] = json{{"matched", yes}, {"mismatched", no}, {"waived", waived}, {"untested", untested}};
    emit(cfg, std::string("scan_") + to_string(cfg.family) + ".json", rep.dump(2) + "\n", out, true);
    for (const std::string& d : diffs) err << "mismatch " << d << "\n";
    return no == 0 ? kExitOk : kExitFailure;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    std::vector<Check> checks;
    const std::string& s = cfg.suite;
    if (s == "confocal-formulas")
      checks = formula_suite(cfg, Family::confocal);
    else if (s == "homothetic-formulas")
      checks = formula_suite(cfg, Family::homothetic);
    else if (s == "combos")
      checks = combos_suite(cfg);
    else if (s == "degeneracy")
      checks = degeneracy_suite(cfg);
    else if (s == "winding")
      checks = winding_suite(cfg);
    else if (s == "monotonicity")
      checks = monotonicity_suite(cfg);
    else if (s == "closure")
      checks = closure_suite(cfg);
    else if (s == "blaschke")
      checks = blaschke_suite(cfg);
    else
      throw Error(Errc::usage, "unknown suite '" + s + "'");
    json rep;
    rep["suite"] = s;
    json arr = json::array();
    std::map<std::string, int> counts{{"pass", 0}, {"fail", 0}, {"warn", 0}, {"skip", 0}};
    for (const Check& c : checks) {
      ++counts[c.status];
      json j{{"name", c.name}, {"status", c.status}, {"value", c.value}, {"limit", c.limit}};
      if (!c.detail.empty()) j["detail"] = c.detail;
      arr.push_back(j);
      if (c.status == "fail") err << "FAIL " << c.name << " (" << format_real(c.value) << "): " << c.detail << "\n";
      if (c.status == "warn") err << "WARN " << c.name << ": " << c.detail << "\n";
    }
    rep["checks"] = arr;
    rep["summary"] = json{{"pass", counts["pass"]}, {"fail", counts["fail"]}, {"warn", counts["warn"]}, {"skip", counts["skip"]}};
    emit(cfg, "verify_" + s + ".json", rep.dump(2) + "\n", out, true);
    return counts["fail"] == 0 ? kExitOk : kExitFailure;
  });
}

int cmd_find_caustic(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    const StationaryCaustic s = find_stationary_caustic(cfg.a, cfg.b, cfg.stationary);
    out << "stationary X" << cfg.stationary << " outer (" << format_real(cfg.a) << ", " << format_real(cfg.b) << ")\n";
    out << "t = " << format_real(s.t) << "\n";
    out << "caustic = (" << format_real(s.a_c) << ", " << format_real(s.b_c) << ")\n";
    if (std::abs(s.a_c - s.b_c) <= 1e-6 * std::max(s.a_c, s.b_c)) out << "caustic circle r = " << format_real(s.a_c) << "\n";
    out << "locus diameter = " << format_real(s.diameter) << "\n";
    if (cfg.stationary == 9 && cfg.a > cfg.b) {
      const double d = delta(cfg.a, cfg.b), c2 = cfg.a * cfg.a - cfg.b * cfg.b;
      const auto [ac, bc] = confocal_caustic(cfg.a, cfg.b);
      out << "confocal closed form t = " << format_real((d - cfg.b * cfg.b) / c2) << ", caustic = (" << format_real(ac) << ", "
          << format_real(bc) << ")\n";
    }
    return kExitOk;
  });
}

int cmd_conjecture(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    const CenterTable& table = CenterTable::builtin();
    const std::vector<int> ks = requested_centers(cfg, table.indices());
    const auto& fams = named_families();
    std::vector<ConcentricPair> pairs;
    for (Family f : fams) pairs.push_back(pair_for(cfg, f));
    const int cells = static_cast<int>(ks.size() * fams.size());
    std::vector<std::string> kinds(cells);
    parallel_for(cells, cfg.threads, [&](int i) {
      const int k = ks[i / fams.size()];
      try {
        kinds[i] = to_string(classify_locus(pairs[i % fams.size()], k, cfg.samples, cfg.tol).kind);
      } catch (const Error& e) {
        kinds[i] = std::string("error: ") + e.what();
      }
    });
    json rep;
    rep["a_over_b"] = cfg.a / cfg.b;
    json recs = json::array();
    int support = 0, violation = 0, failed = 0, flagged = 0, excluded = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const bool sr = table.at(ks[i]).squared_rational;
      (sr ? flagged : excluded)++;
      json r{{"k", ks[i]}, {"squared_rational", sr}, {"weight", table.at(ks[i]).source}};
      json obs;
      for (std::size_t f = 0; f < fams.size(); ++f) {
        const std::string& kd = kinds[i * fams.size() + f];
        obs[to_string(fams[f])] = kd;
        if (!sr) continue;
        if (kd.rfind("error", 0) == 0)
          ++failed;
        else if (kd == "other")
          ++violation;
        else
          ++support;
      }
      r["observed"] = obs;
      if (!sr) r["note"] = "excluded: weight not rational in the squared sidelengths";
      recs.push_back(r);
    }
    rep["records"] = recs;
    rep["summary"] = json{{"flagged", flagged}, {"excluded", excluded}, {"support", support}, {"violation", violation},
                          {"errors", failed}};
    emit(cfg, "conjecture.json", rep.dump(2) + "\n", out, true);
    return kExitOk;
  });
}

}  // namespace poncelet::report
