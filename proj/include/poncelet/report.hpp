#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "poncelet/formulas.hpp"

namespace poncelet::report {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitNoSolution = 2;
inline constexpr int kExitUsage = 64;

struct RunConfig {
  Family family = Family::confocal;
  double a = 1.5, b = 1.0;
  std::optional<double> circum_ac;
  std::vector<int> centers;     // empty: command default
  bool centers_is_range = false;  // ranges keep only indices present in the table
  int samples = 720;
  Tolerances tol;
  double check_tol = 1e-6;  // verification tolerance (--tol)
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 1;
  std::string suite;
  std::vector<double> ab_grid;
  int stationary = 9;
  std::vector<std::string> waivers;  // "family:k"
  int threads = 0;                   // 0: hardware concurrency
};

// Applies one key=value setting (keys mirror the command-line flags without dashes).
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
// Flat key=value text; '#' starts a comment.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);
void validate(const RunConfig& cfg);

// "1..200", "1,2,5..9".
std::vector<int> parse_centers(const std::string& s, bool* has_range = nullptr);
std::vector<double> parse_real_list(const std::string& s);

struct Fixture {
  Family family = Family::confocal;
  int stationary = 0;
  std::vector<int> ellipses, circles;
  // Expected kind for k, if the fixture lists it.
  std::optional<ConicKind> expected(int k) const;
};
Fixture parse_fixture(const std::string& text);
const Fixture& builtin_fixture(Family f);

// Runs job(i) for i < n on a bounded pool. Exceptions are rethrown after all workers stop.
void parallel_for(int n, int threads, const std::function<void(int)>& job);

// Output helpers.
std::string format_real(double x);  // %.15g
void atomic_write(const std::string& path, const std::string& content);
// Destination for a named artifact: --out when it names a file, else a directory from --out or
// PONCELET_OUT_DIR. Empty when the artifact goes to stdout.
std::string output_path(const RunConfig& cfg, const std::string& default_name, bool single_artifact);

std::string trace_csv(const LocusTrace& trace);
struct SvgCurve {
  std::vector<cplx> points;
  std::string stroke;
  bool closed = true;
};
std::string render_svg(const std::vector<SvgCurve>& curves, double extent);

// Commands. Text goes to out, diagnostics to err; the return value is the exit code.
int cmd_trace(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_find_caustic(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_conjecture(const RunConfig& cfg, std::ostream& out, std::ostream& err);

const std::vector<std::string>& suite_names();

}  // namespace poncelet::report
