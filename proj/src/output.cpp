#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "poncelet/report.hpp"

namespace poncelet::report {

namespace fs = std::filesystem;

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x == 0 ? 0.0 : x);  // no "-0"
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw Error(Errc::io, "cannot create directory " + target.parent_path().string() + ": " + ec.message());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::io, "cannot open " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw Error(Errc::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(Errc::io, "cannot move output into place at " + path);
  }
}

std::string output_path(const RunConfig& cfg, const std::string& default_name, bool single_artifact) {
  if (!cfg.out.empty()) {
    const bool dir_like = cfg.out.back() == '/' || fs::is_directory(cfg.out);
    if (single_artifact && !dir_like) return cfg.out;
    return (fs::path(cfg.out) / default_name).string();
  }
  if (const char* env = std::getenv("PONCELET_OUT_DIR"); env && *env) return (fs::path(env) / default_name).string();
  return {};
}

std::string trace_csv(const LocusTrace& trace) {
  std::string s = "lambda_arg,x,y\n";
  for (std::size_t j = 0; j < trace.points.size(); ++j) {
    double t = std::arg(trace.lambdas[j]);
    if (t < 0) t += 2 * kPi;
    s += format_real(t) + "," + format_real(trace.points[j].real()) + "," + format_real(trace.points[j].imag()) + "\n";
  }
  return s;
}

std::string render_svg(const std::vector<SvgCurve>& curves, double extent) {
  const double half = 1.1 * extent;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"" << format_real(-half) << " "
    << format_real(-half) << " " << format_real(2 * half) << " " << format_real(2 * half) << "\">\n"
    << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << format_real(half / 400) << "\">\n";
  for (const SvgCurve& c : curves) {
    s << "<path stroke=\"" << c.stroke << "\" d=\"";
    for (std::size_t j = 0; j < c.points.size(); ++j)
      s << (j == 0 ? "M" : " L") << format_real(c.points[j].real()) << "," << format_real(c.points[j].imag());
    if (c.closed) s << " Z";
    s << "\"/>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace poncelet::report
