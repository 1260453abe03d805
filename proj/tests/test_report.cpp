#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "poncelet/report.hpp"

using namespace poncelet;
using namespace poncelet::report;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(int (*cmd)(const RunConfig&, std::ostream&, std::ostream&), const RunConfig& cfg) {
  ::unsetenv("PONCELET_OUT_DIR");
  std::ostringstream o, e;
  const int code = cmd(cfg, o, e);
  return {code, o.str(), e.str()};
}

int usage_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == Errc::usage || e.code() == Errc::parse ? kExitUsage : kExitFailure;
  }
  return kExitOk;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("settings and config text") {
  RunConfig cfg;
  apply_config_text(cfg, "# demo\nfamily = incircle\nab = 2\nsamples=1000\ncenters = 1..10, 20\nfit-tol = 1e-8\n");
  CHECK(cfg.family == Family::incircle);
  CHECK(cfg.a == 2);
  CHECK(cfg.b == 1);
  CHECK(cfg.samples == 1000);
  CHECK(cfg.centers.size() == 11);
  CHECK(cfg.centers_is_range);
  CHECK(cfg.tol.fit_tol == 1e-8);
  // Later settings win, as command-line flags do over the file.
  apply_setting(cfg, "samples", "2000");
  CHECK(cfg.samples == 2000);
  apply_setting(cfg, "waive", "confocal:7");
  CHECK(cfg.waivers == std::vector<std::string>{"confocal:7"});
  CHECK(usage_code([&] { apply_setting(cfg, "colour", "red"); }) == kExitUsage);
  CHECK(usage_code([&] { apply_setting(cfg, "samples", "many"); }) == kExitUsage);
  CHECK(usage_code([&] { apply_config_text(cfg, "family\n"); }) == kExitUsage);
  CHECK(usage_code([&] { apply_config_file(cfg, "/nonexistent/poncelet.cfg"); }) != kExitOk);
}

TEST_CASE("center lists and real lists") {
  bool range = false;
  CHECK(parse_centers("1,2,5..7", &range) == std::vector<int>{1, 2, 5, 6, 7});
  CHECK(range);
  CHECK(parse_centers("4, 3", &range) == std::vector<int>{4, 3});
  CHECK_FALSE(range);
  CHECK_THROWS_AS(parse_centers("7..3"), Error);
  CHECK_THROWS_AS(parse_centers("x"), Error);
  CHECK(parse_real_list("1.2, 1.5,2") == std::vector<double>{1.2, 1.5, 2});
  CHECK(parse_real_list("1.2,,") == std::vector<double>{1.2});
  CHECK_THROWS_AS(parse_real_list(" , "), Error);
  CHECK_THROWS_AS(parse_real_list("1.2,x"), Error);
}

TEST_CASE("validation") {
  RunConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  for (auto [k, v] : {std::pair{"samples", "10"}, {"a", "-1"}, {"format", "png"}, {"fit_tol", "0"}, {"ab_grid", "1.5,0.9"}}) {
    RunConfig c;
    INFO(k << "=" << v);
    CHECK(usage_code([&] {
            apply_setting(c, k, v);
            validate(c);
          }) == kExitUsage);
  }
}

TEST_CASE("fixtures") {
  const Fixture f = parse_fixture("family: incircle\nstationary: 1\nellipses: 2, 4\ncircles: 3\n");
  CHECK(f.family == Family::incircle);
  CHECK(f.expected(2) == ConicKind::ellipse);
  CHECK(f.expected(3) == ConicKind::circle);
  CHECK_FALSE(f.expected(5).has_value());
  CHECK_THROWS_AS(parse_fixture("stationary: 1\n"), Error);
  CHECK_THROWS_AS(parse_fixture("family: confocal\ncolour: red\n"), Error);
  for (Family fam : named_families()) CHECK(builtin_fixture(fam).family == fam);
  CHECK(builtin_fixture(Family::homothetic).stationary == 2);
}

TEST_CASE("worker pool") {
  std::atomic<int> sum{0};
  parallel_for(1000, 4, [&](int i) { sum += i; });
  CHECK(sum == 999 * 1000 / 2);
  CHECK_THROWS_AS(parallel_for(10, 3, [](int i) {
                    if (i == 7) throw Error(Errc::geometry, "boom");
                  }),
                  Error);
}

TEST_CASE("real formatting and atomic writes") {
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0 / 3) == "0.333333333333333");
  const fs::path dir = fs::temp_directory_path() / "poncelet_report_test";
  fs::remove_all(dir);
  const std::string path = (dir / "sub" / "x.txt").string();
  atomic_write(path, "one");
  atomic_write(path, "two");
  CHECK(slurp(path) == "two");
  CHECK_FALSE(fs::exists(path + ".tmp"));
  RunConfig cfg;
  cfg.out = (dir / "single.csv").string();
  CHECK(output_path(cfg, "confocal_X1.csv", true) == cfg.out);
  cfg.out = dir.string() + "/";
  CHECK(output_path(cfg, "confocal_X1.csv", false) == (dir / "confocal_X1.csv").string());
  fs::remove_all(dir);
}

TEST_CASE("trace output is deterministic") {
  RunConfig cfg;
  cfg.centers = {1};
  const Run r1 = run(cmd_trace, cfg), r2 = run(cmd_trace, cfg);
  CHECK(r1.code == kExitOk);
  CHECK(r1.out == r2.out);
  std::istringstream in(r1.out);
  std::string line;
  int lines = 0;
  std::getline(in, line);
  CHECK(line == "lambda_arg,x,y");
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 720);
  cfg.threads = 1;
  CHECK(run(cmd_trace, cfg).out == r1.out);
}

TEST_CASE("svg output") {
  RunConfig cfg;
  cfg.format = "svg";
  cfg.centers = {1, 2, 3};
  const Run r = run(cmd_trace, cfg);
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("<?xml", 0) == 0);
  std::size_t paths = 0;
  for (std::size_t p = r.out.find("<path"); p != std::string::npos; p = r.out.find("<path", p + 1)) ++paths;
  // Billiard, caustic, three loci and one triangle.
  CHECK(paths == 6);
  cfg.format = "json";
  CHECK(run(cmd_trace, cfg).code == kExitUsage);
}

TEST_CASE("exit codes") {
  RunConfig cfg;
  cfg.centers = {99999};
  CHECK(run(cmd_trace, cfg).code == kExitUsage);
  RunConfig bad;
  bad.a = 1;
  bad.b = 1.5;
  CHECK(run(cmd_trace, bad).code == kExitUsage);
  RunConfig fc;
  fc.stationary = 8;
  const Run r = run(cmd_find_caustic, fc);
  CHECK(r.code == kExitNoSolution);
  CHECK_FALSE(r.err.empty());
  fc.stationary = 9;
  const Run ok = run(cmd_find_caustic, fc);
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("0.762049935181") != std::string::npos);
  RunConfig v;
  v.suite = "nonsense";
  CHECK(run(cmd_verify, v).code == kExitUsage);
}

TEST_CASE("scan matches the bundled fixture and honours waivers") {
  RunConfig cfg;
  cfg.family = Family::incircle;
  const Run r = run(cmd_scan, cfg);
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["summary"]["mismatched"] == 0);
  CHECK(j["summary"]["matched"].get<int>() >= 35);
  CHECK(run(cmd_scan, cfg).out == r.out);

  // With an impossible fit tolerance every locus reads as "other".
  cfg.centers = {2, 3};
  cfg.tol.fit_tol = 1e-30;
  const Run bad = run(cmd_scan, cfg);
  CHECK(bad.code == kExitFailure);
  CHECK(bad.err.find("mismatch X2") != std::string::npos);
  cfg.waivers = {"incircle:2", "incircle:3"};
  const Run waived = run(cmd_scan, cfg);
  CHECK(waived.code == kExitOk);
  CHECK(nlohmann::json::parse(waived.out)["summary"]["waived"] == 2);
}

TEST_CASE("verify reports checks as json") {
  RunConfig cfg;
  cfg.suite = "blaschke";
  const Run r = run(cmd_verify, cfg);
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["suite"] == "blaschke");
  CHECK(j["checks"].size() > 0);
  for (const auto& c : j["checks"]) CHECK(c["status"] == "pass");
  CHECK(std::find(suite_names().begin(), suite_names().end(), "closure") != suite_names().end());
}

TEST_CASE("conjecture always succeeds") {
  RunConfig cfg;
  cfg.centers = {1, 2, 3, 6};
  cfg.samples = 360;
  const Run r = run(cmd_conjecture, cfg);
  CHECK(r.code == kExitOk);
  CHECK_FALSE(r.out.empty());
}
