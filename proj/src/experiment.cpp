#include "eonovm/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "eonovm/engine.hpp"

namespace eonovm {

namespace fs = std::filesystem;

std::vector<SimConfig> expand_grid(const ParsedConfig& parsed, int seeds) {
  std::vector<SimConfig> combos{parsed.base};
  for (const auto& [key, values] : parsed.sweeps) {
    std::vector<SimConfig> next;
    next.reserve(combos.size() * values.size());
    for (const SimConfig& c : combos) {
      for (const std::string& v : values) {
        SimConfig cfg = c;
        apply_setting(cfg, key, v);
        next.push_back(cfg);
      }
    }
    combos = std::move(next);
  }

  std::vector<SimConfig> out;
  out.reserve(combos.size() * static_cast<std::size_t>(std::max(seeds, 1)));
  for (const SimConfig& c : combos) {
    for (int s = 0; s < std::max(seeds, 1); ++s) {
      SimConfig cfg = c;
      cfg.seed = c.seed + static_cast<std::uint64_t>(s);
      out.push_back(cfg);
    }
  }
  return out;
}

std::vector<RunRow> run_grid(const std::vector<SimConfig>& points, int jobs) {
  std::vector<RunRow> rows(points.size());
  if (points.empty()) return rows;
  unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                              : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers,
                               static_cast<unsigned>(points.size()));

  std::atomic<std::size_t> cursor{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= points.size()) return;
      try {
        rows[i].cfg = points[i];
        rows[i].stats = run(points[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

void write_csv(const fs::path& file, const std::vector<RunRow>& rows) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  const auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  char stamp[64];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "# generated " << stamp << "\n" << csv_header() << "\n";
  for (const RunRow& r : rows) out << csv_row(r.cfg, r.stats) << "\n";
}

std::vector<double> default_load_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
  return grid;
}

namespace {

std::string duration_label(SimTime ns) {
  char buf[32];
  if (ns % kMillisecond == 0)
    std::snprintf(buf, sizeof(buf), "%lldms",
                  static_cast<long long>(ns / kMillisecond));
  else
    std::snprintf(buf, sizeof(buf), "%lldus",
                  static_cast<long long>(ns / kMicrosecond));
  return buf;
}

std::vector<SimConfig> load_sweep(const SimConfig& base, int seeds) {
  std::vector<SimConfig> out;
  for (double l : default_load_grid()) {
    for (int s = 0; s < std::max(seeds, 1); ++s) {
      SimConfig cfg = base;
      cfg.load = l;
      cfg.seed = base.seed + static_cast<std::uint64_t>(s);
      out.push_back(cfg);
    }
  }
  return out;
}

void append(std::vector<SimConfig>& all, const std::vector<SimConfig>& part) {
  all.insert(all.end(), part.begin(), part.end());
}

}  // namespace

FigureSpec make_figure(const std::string& name, SimConfig base, int seeds,
                       std::optional<SimTime> runtime_ns) {
  if (runtime_ns) base.run_time_ns = *runtime_ns;
  FigureSpec fig;
  fig.name = "fig" + name;

  if (name == "5") {
    base.n_onus = 16;
    base.n_wavelengths = 2;
    for (DelayPolicy p : {DelayPolicy::Fixed, DelayPolicy::Variable}) {
      SimConfig c = base;
      c.delay_policy = p;
      append(fig.points, load_sweep(c, seeds));
    }
    fig.variant = [](const SimConfig& c) {
      return std::string(to_string(c.delay_policy));
    };
  } else if (name == "6") {
    base.n_onus = 64;
    base.n_wavelengths = 8;
    for (SimTime tsw : {kMillisecond / 2, kMillisecond, 2 * kMillisecond}) {
      SimConfig c = base;
      c.sleep_wake_ns = tsw;
      append(fig.points, load_sweep(c, seeds));
    }
    fig.variant = [](const SimConfig& c) {
      return "tsw_" + duration_label(c.sleep_wake_ns);
    };
    fig.eta_curve = true;
  } else if (name == "7a") {
    base.n_onus = 16;
    base.n_wavelengths = 2;
    for (SimTime dmax :
         {5 * kMillisecond, 10 * kMillisecond, 15 * kMillisecond}) {
      SimConfig c = base;
      c.d_max_ns = dmax;
      append(fig.points, load_sweep(c, seeds));
    }
    fig.variant = [](const SimConfig& c) {
      return "dmax_" + duration_label(c.d_max_ns);
    };
    fig.delay_series = true;
  } else if (name == "7b") {
    for (int scale : {1, 2, 4}) {
      SimConfig c = base;
      c.n_onus = 16 * scale;
      c.n_wavelengths = 2 * scale;
      append(fig.points, load_sweep(c, seeds));
    }
    fig.variant = [](const SimConfig& c) {
      return "n" + std::to_string(c.n_onus) + "_w" +
             std::to_string(c.n_wavelengths);
    };
    fig.delay_series = true;
  } else if (name == "8") {
    base.n_onus = 16;
    base.n_wavelengths = 2;
    for (double aon : {1.2, 1.5, 1.9}) {
      SimConfig c = base;
      c.alpha_on = aon;
      append(fig.points, load_sweep(c, seeds));
    }
    fig.variant = [](const SimConfig& c) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "aon_%.1f", c.alpha_on);
      return std::string(buf);
    };
  } else {
    throw ConfigError(0, "unknown figure '" + name +
                             "' (expected 5, 6, 7a, 7b or 8)");
  }
  return fig;
}

std::vector<RunRow> run_figure(const FigureSpec& fig,
                               const fs::path& out_dir, int jobs) {
  fs::create_directories(out_dir);
  const std::vector<RunRow> rows = run_grid(fig.points, jobs);
  write_csv(out_dir / (fig.name + ".csv"), rows);

  // (variant, load) -> mean over seeds.
  std::map<std::string, std::map<double, std::pair<double, double>>> eff;
  std::map<std::string, std::map<double, std::pair<double, double>>> delay;
  for (const RunRow& r : rows) {
    const std::string key = fig.variant(r.cfg);
    auto& e = eff[key][r.cfg.load];
    e.first += r.stats.efficiency_pct;
    e.second += 1;
    auto& d = delay[key][r.cfg.load];
    d.first += r.stats.avg_delay_ns;
    d.second += 1;
  }

  auto write_two_col = [&](const fs::path& file, const auto& series) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    char line[64];
    for (const auto& [load, acc] : series) {
      std::snprintf(line, sizeof(line), "%.2f %.4f\n", load,
                    acc.first / acc.second);
      out << line;
    }
  };

  for (const auto& [key, series] : eff)
    write_two_col(out_dir / (fig.name + "_" + key + ".dat"), series);
  if (fig.delay_series) {
    for (const auto& [key, series] : delay)
      write_two_col(out_dir / (fig.name + "_" + key + "_delay.dat"), series);
  }
  if (fig.eta_curve && !rows.empty()) {
    std::ofstream out(out_dir / (fig.name + "_eta_max.dat"));
    char line[64];
    for (double l : default_load_grid()) {
      SimConfig c = rows.front().cfg;
      c.load = l;
      std::snprintf(line, sizeof(line), "%.2f %.4f\n", l, eta_max(c));
      out << line;
    }
  }
  return rows;
}

}  // namespace eonovm
