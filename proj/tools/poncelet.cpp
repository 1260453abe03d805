#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "poncelet/report.hpp"

namespace rp = poncelet::report;

namespace {

// Flags in the order they are applied on top of the config file.
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"family", "confocal|incircle|circumcircle|homothetic|excentral|dual"},
    {"ab", "aspect ratio a/b with b = 1"},
    {"a", "outer semi-axis a"},
    {"b", "outer semi-axis b"},
    {"circum-ac", "caustic semi-axis a_c of the circumcircle family"},
    {"center", "single center index"},
    {"centers", "list or range, e.g. 1..200 or 1,2,5..9"},
    {"samples", "lambda samples per cycle"},
    {"tol", "verification tolerance"},
    {"circle-tol", "relative axis agreement for circles"},
    {"degen-tol", "degeneracy tolerance"},
    {"fit-tol", "conic fit residual tolerance"},
    {"format", "csv|json|svg"},
    {"out", "output file or directory"},
    {"seed", "seed for randomized checks"},
    {"suite", "verification suite"},
    {"ab-grid", "comma-separated aspect ratios"},
    {"stationary", "center to keep stationary"},
    {"waive", "family:k cells whose mismatch is tolerated"},
    {"threads", "worker threads (0: all cores)"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poncelet triangle families: center loci, classification and closed-form checks"};
  app.require_subcommand(1);
  struct Sub {
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::string config;
  };
  const std::vector<std::string> names = {"trace", "scan", "verify", "find-caustic", "conjecture"};
  const std::map<std::string, std::string> help = {
      {"trace", "write the locus of each center as CSV or SVG"},
      {"scan", "classify loci and compare with the bundled lists"},
      {"verify", "run a verification suite"},
      {"find-caustic", "find the caustic that keeps a center fixed"},
      {"conjecture", "observe loci of centers with weights rational in squared sides"}};
  std::map<std::string, Sub> subs;
  for (const std::string& n : names) {
    Sub& s = subs[n];
    s.app = app.add_subcommand(n, help.at(n));
    for (const auto& [flag, desc] : kFlags) s.app->add_option("--" + flag, s.values[flag], desc);
    s.app->add_option("--config", s.config, "key=value file; flags override it");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rp::kExitUsage;
  }

  for (const std::string& n : names) {
    Sub& s = subs[n];
    if (!s.app->parsed()) continue;
    rp::RunConfig cfg;
    try {
      if (!s.config.empty()) rp::apply_config_file(cfg, s.config);
      for (const auto& [flag, desc] : kFlags)
        if (s.app->count("--" + flag) > 0) rp::apply_setting(cfg, flag, s.values[flag]);
    } catch (const poncelet::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return rp::kExitUsage;
    }
    if (n == "trace") return rp::cmd_trace(cfg, std::cout, std::cerr);
    if (n == "scan") return rp::cmd_scan(cfg, std::cout, std::cerr);
    if (n == "verify") {
      if (cfg.suite.empty()) {
        std::cerr << "error: verify needs --suite\n";
        return rp::kExitUsage;
      }
      return rp::cmd_verify(cfg, std::cout, std::cerr);
    }
    if (n == "find-caustic") return rp::cmd_find_caustic(cfg, std::cout, std::cerr);
    if (n == "conjecture") return rp::cmd_conjecture(cfg, std::cout, std::cerr);
  }
  return rp::kExitUsage;
}
