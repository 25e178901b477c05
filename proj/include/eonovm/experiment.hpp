#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eonovm/config.hpp"
#include "eonovm/config_text.hpp"
#include "eonovm/metrics.hpp"

namespace eonovm {

struct RunRow {
  SimConfig cfg;
  RunStats stats;
};

/// Cross product of the parsed sweep axes (file order), each point repeated
/// for `seeds` consecutive seed values.
std::vector<SimConfig> expand_grid(const ParsedConfig& parsed, int seeds);

/// Executes points on a worker pool; rows come back in input order, so the
/// output is independent of scheduling. jobs <= 0 uses the hardware count.
std::vector<RunRow> run_grid(const std::vector<SimConfig>& points, int jobs);

/// CSV with a timestamp comment line, the fixed header, then one row per
/// run. Bodies are byte-identical across reruns of the same grid.
void write_csv(const std::filesystem::path& file,
               const std::vector<RunRow>& rows);

/// A named experiment reproducing one figure's axes: a load sweep per
/// variant curve, postprocessed into two-column (load, value) series files.
struct FigureSpec {
  std::string name;
  std::vector<SimConfig> points;
  std::function<std::string(const SimConfig&)> variant;  // curve key
  bool eta_curve = false;    // also emit the analytical bound vs load
  bool delay_series = false; // also emit avg delay per curve
};

/// The default load axis: 0.05 to 0.95 in steps of 0.05.
std::vector<double> default_load_grid();

/// Presets: "5" (fixed vs variable budget, N=16/W=2), "6" (wake ramp sweep,
/// N=64/W=8, with bound curve), "7a" (delay bound sweep), "7b" (N:W scaling),
/// "8" (ON-shape sweep). Throws ConfigError on unknown names.
FigureSpec make_figure(const std::string& name, SimConfig base, int seeds,
                       std::optional<SimTime> runtime_ns);

/// Runs a figure and writes its CSV plus series files under `out_dir`.
std::vector<RunRow> run_figure(const FigureSpec& fig,
                               const std::filesystem::path& out_dir,
                               int jobs);

}  // namespace eonovm
