#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eonovm/config_text.hpp"
#include "eonovm/engine.hpp"
#include "eonovm/experiment.hpp"
#include "eonovm/metrics.hpp"

namespace {

void warn_unstable(const std::vector<eonovm::RunRow>& rows) {
  int unstable = 0;
  for (const auto& r : rows)
    if (!r.stats.stable) ++unstable;
  if (unstable > 0)
    std::cerr << "warning: " << unstable << " of " << rows.size()
              << " runs flagged unstable (offered load exceeds capacity or "
                 "backlog kept growing)\n";
}

// --single N=16 W=2 L=0.6 seed=7 ...
void apply_overrides(eonovm::SimConfig& cfg,
                     const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw eonovm::ConfigError(0, "override '" + kv +
                                       "' is not of the form key=value");
    eonovm::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
}

int run_command(const std::string& config_path, const std::string& fig,
                int seeds, const std::string& runtime,
                const std::string& out_dir, int jobs,
                const std::vector<std::string>& single) {
  namespace fs = std::filesystem;
  eonovm::ParsedConfig parsed;
  if (!config_path.empty()) parsed = eonovm::parse_config_file(config_path);

  if (const char* env_seed = std::getenv("EONOVM_SEED"))
    eonovm::apply_setting(parsed.base, "seed", env_seed);
  std::optional<eonovm::SimTime> runtime_ns;
  if (!runtime.empty()) {
    runtime_ns = eonovm::parse_duration_ns(runtime);
    parsed.base.run_time_ns = *runtime_ns;
  }

  fs::create_directories(out_dir);

  if (!single.empty()) {
    eonovm::SimConfig cfg = parsed.base;
    apply_overrides(cfg, single);
    cfg.validate();
    const auto rows = eonovm::run_grid({cfg}, 1);
    eonovm::write_csv(fs::path(out_dir) / "single.csv", rows);
    std::cout << eonovm::csv_header() << "\n"
              << eonovm::csv_row(rows[0].cfg, rows[0].stats) << "\n";
    if (!rows[0].stats.stable)
      std::cerr << "warning: run flagged unstable (offered load exceeds "
                   "capacity or backlog kept growing)\n";
    return 0;
  }

  if (!fig.empty()) {
    const auto spec = eonovm::make_figure(fig, parsed.base, seeds, runtime_ns);
    for (const auto& p : spec.points) p.validate();
    const auto rows = eonovm::run_figure(spec, out_dir, jobs);
    warn_unstable(rows);
    std::cout << "wrote " << rows.size() << " runs to " << out_dir << "\n";
    return 0;
  }

  const auto points = eonovm::expand_grid(parsed, seeds);
  for (const auto& p : points) p.validate();
  const auto rows = eonovm::run_grid(points, jobs);
  eonovm::write_csv(fs::path(out_dir) / "sweep.csv", rows);
  warn_unstable(rows);
  std::cout << "wrote " << rows.size() << " runs to " << out_dir
            << "/sweep.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TWDM-PON upstream scheduling simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand(
      "run", "Execute a single run, a config sweep, or a figure preset");
  std::string config_path;
  std::string fig;
  int seeds = 1;
  std::string runtime;
  std::string out_dir = "out";
  int jobs = 0;
  std::vector<std::string> single;
  run->add_option("--config", config_path, "key=value config file");
  run->add_option("--fig", fig, "figure preset: 5, 6, 7a, 7b or 8");
  run->add_option("--seeds", seeds, "seeds per sweep point")
      ->check(CLI::PositiveNumber);
  run->add_option("--runtime", runtime, "simulated time, e.g. 2s or 500ms");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--jobs", jobs, "parallel workers (0 = hardware)");
  run->add_option("--single", single,
                  "run one point with key=value overrides")
      ->expected(-1);

  CLI11_PARSE(app, argc, argv);

  try {
    return run_command(config_path, fig, seeds, runtime, out_dir, jobs,
                       single);
  } catch (const eonovm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
