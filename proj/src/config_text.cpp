#include "eonovm/config_text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace eonovm {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string& text, const char* what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError(0, std::string("expected a ") + what + ": '" + text +
                             "'");
  }
  if (pos != text.size())
    throw ConfigError(0, std::string("trailing characters in ") + what +
                             ": '" + text + "'");
  return v;
}

std::int64_t parse_int(const std::string& text, const char* what) {
  const double v = parse_number(text, what);
  if (v != std::floor(v))
    throw ConfigError(0, std::string(what) + " must be an integer: '" + text +
                             "'");
  return static_cast<std::int64_t>(v);
}

}  // namespace

SimTime parse_duration_ns(const std::string& raw) {
  const std::string text = lower(trim(raw));
  struct Unit {
    const char* suffix;
    double ns;
  };
  static constexpr Unit units[] = {
      {"ns", 1.0}, {"us", 1e3}, {"ms", 1e6}, {"s", 1e9}};
  for (const Unit& u : units) {
    const std::size_t n = std::string(u.suffix).size();
    if (text.size() > n && text.ends_with(u.suffix)) {
      const std::string head = trim(text.substr(0, text.size() - n));
      if (head.empty() || !std::isdigit(static_cast<unsigned char>(
                              head[head.size() - 1])))
        continue;  // e.g. "5ms" matches "ms" not "s"
      return static_cast<SimTime>(
          std::llround(parse_number(head, "duration") * u.ns));
    }
  }
  return static_cast<SimTime>(parse_int(text, "duration (ns)"));
}

std::int64_t parse_rate_bps(const std::string& raw) {
  const std::string text = lower(trim(raw));
  struct Unit {
    const char* suffix;
    double scale;
  };
  static constexpr Unit units[] = {{"gbps", 1e9}, {"mbps", 1e6},
                                   {"kbps", 1e3}, {"bps", 1.0}};
  for (const Unit& u : units) {
    if (text.size() > std::string(u.suffix).size() &&
        text.ends_with(u.suffix)) {
      const std::string head =
          trim(text.substr(0, text.size() - std::string(u.suffix).size()));
      return static_cast<std::int64_t>(
          std::llround(parse_number(head, "rate") * u.scale));
    }
  }
  return parse_int(text, "rate (bps)");
}

void apply_setting(SimConfig& cfg, const std::string& raw_key,
                   const std::string& raw_value) {
  const std::string key = lower(trim(raw_key));
  const std::string value = trim(raw_value);

  if (key == "n" || key == "n_onus") {
    cfg.n_onus = static_cast<int>(parse_int(value, "n_onus"));
  } else if (key == "w" || key == "n_wavelengths") {
    cfg.n_wavelengths = static_cast<int>(parse_int(value, "n_wavelengths"));
  } else if (key == "l" || key == "load") {
    cfg.load = parse_number(value, "load");
  } else if (key == "t_sw" || key == "sleep_wake") {
    cfg.sleep_wake_ns = parse_duration_ns(value);
  } else if (key == "d_max" || key == "delay_bound") {
    cfg.d_max_ns = parse_duration_ns(value);
  } else if (key == "t_rtt" || key == "rtt") {
    cfg.rtt_ns = parse_duration_ns(value);
  } else if (key == "alpha_on") {
    cfg.alpha_on = parse_number(value, "alpha_on");
  } else if (key == "alpha_off") {
    cfg.alpha_off = parse_number(value, "alpha_off");
  } else if (key == "run_time" || key == "runtime") {
    cfg.run_time_ns = parse_duration_ns(value);
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_int(value, "seed"));
  } else if (key == "peak_rate" || key == "r_peak") {
    cfg.peak_rate_bps = parse_rate_bps(value);
  } else if (key == "line_rate" || key == "r_line") {
    cfg.line_rate_bps = parse_rate_bps(value);
  } else if (key == "t_g" || key == "guard") {
    cfg.guard_ns = parse_duration_ns(value);
  } else if (key == "t_p" || key == "gate_gen") {
    cfg.gate_gen_ns = parse_duration_ns(value);
  } else if (key == "t_tx" || key == "gate_tx") {
    cfg.gate_tx_ns = parse_duration_ns(value);
  } else if (key == "t_t" || key == "tune_step") {
    cfg.tune_step_ns = parse_duration_ns(value);
  } else if (key == "n_r" || key == "report_bytes") {
    cfg.report_bytes = static_cast<int>(parse_int(value, "report_bytes"));
  } else if (key == "packet_bytes") {
    cfg.packet_bytes = static_cast<int>(parse_int(value, "packet_bytes"));
  } else if (key == "mean_on") {
    cfg.mean_on_ns = parse_duration_ns(value);
  } else if (key == "burst_cap_ratio") {
    cfg.burst_cap_ratio = parse_number(value, "burst_cap_ratio");
  } else if (key == "delay_policy") {
    const std::string v = lower(value);
    if (v == "fixed")
      cfg.delay_policy = DelayPolicy::Fixed;
    else if (v == "variable")
      cfg.delay_policy = DelayPolicy::Variable;
    else
      throw ConfigError(0, "delay_policy must be fixed or variable");
  } else if (key == "scheduler") {
    const std::string v = lower(value);
    if (v == "eonovm")
      cfg.scheduler = SchedulerKind::EoNovm;
    else if (v == "eft" || v == "eft_sleep")
      cfg.scheduler = SchedulerKind::EftSleep;
    else
      throw ConfigError(0, "scheduler must be eonovm or eft");
  } else if (key == "traffic") {
    const std::string v = lower(value);
    if (v == "pareto")
      cfg.traffic = TrafficModel::ParetoOnOff;
    else if (v == "poisson")
      cfg.traffic = TrafficModel::Poisson;
    else
      throw ConfigError(0, "traffic must be pareto or poisson");
  } else {
    throw ConfigError(0, "unknown key '" + key + "'");
  }
}

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool in_sweep = false;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;

    if (body.front() == '[') {
      if (lower(body) == "[sweep]") {
        in_sweep = true;
        continue;
      }
      throw ConfigError(lineno, "unknown section " + body);
    }

    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(lineno, "expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError(lineno, "empty key");
    if (value.empty()) throw ConfigError(lineno, "empty value for '" + key +
                                                     "'");

    try {
      if (!in_sweep) {
        apply_setting(out.base, key, value);
      } else {
        std::vector<std::string> values;
        std::string token;
        std::istringstream vs(value);
        while (std::getline(vs, token, ' ')) {
          for (auto& piece : {token}) {
            std::istringstream cs(piece);
            std::string sub;
            while (std::getline(cs, sub, ',')) {
              sub = trim(sub);
              if (!sub.empty()) values.push_back(sub);
            }
          }
        }
        if (values.empty()) throw ConfigError(0, "empty sweep list");
        // Validate each value against a scratch config now, so errors carry
        // this line number instead of failing mid-sweep.
        for (const auto& v : values) {
          SimConfig scratch = out.base;
          apply_setting(scratch, key, v);
        }
        out.sweeps.emplace_back(lower(trim(key)), std::move(values));
      }
    } catch (const ConfigError& e) {
      throw ConfigError(lineno, e.what());
    }
  }
  return out;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace eonovm
