#include "vrsgd/bench/config.hpp"

#include "vrsgd/data.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace vrsgd::bench {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

double to_double(std::string_view s, std::size_t line) {
  double v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError(line, "expected a number, got '" + std::string(s) + "'");
  return v;
}

long long to_int(std::string_view s, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError(line, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

bool to_bool(std::string_view s, std::size_t line) {
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw ConfigError(line, "expected true or false, got '" + std::string(s) + "'");
}

SnapshotOption snapshot_from(std::string_view s, std::size_t line) {
  if (s == "last" || s == "I") return SnapshotOption::last;
  if (s == "average" || s == "average_all" || s == "II") return SnapshotOption::average_all;
  if (s == "average_then_last" || s == "III") return SnapshotOption::average_then_last;
  throw ConfigError(line, "unknown snapshot option '" + std::string(s) + "'");
}

template <typename Fn>
auto wrap(std::size_t line, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(line, e.what());
  }
}

void apply_solver_key(SolverEntry& e, std::string_view key, std::string_view value, std::size_t line) {
  auto& c = e.config;
  if (key == "algorithm") {
    c.algorithm = wrap(line, [&] { return algorithm_from_string(value); });
  } else if (key == "name") {
    e.name = std::string(value);
  } else if (key == "epochs") {
    c.epochs = static_cast<int>(to_int(value, line));
  } else if (key == "epoch_length" || key == "m") {
    c.epoch_length = static_cast<Index>(to_int(value, line));
  } else if (key == "eta") {
    e.eta = wrap(line, [&] { return parse_step(value); });
  } else if (key == "alpha") {
    c.alpha = to_double(value, line);
  } else if (key == "lr_mode") {
    if (value == "fixed") c.lr_mode = LrMode::fixed;
    else if (value == "varying") c.lr_mode = LrMode::varying;
    else throw ConfigError(line, "lr_mode must be fixed or varying");
  } else if (key == "snapshot") {
    c.snapshot = snapshot_from(value, line);
  } else if (key == "window") {
    if (value == "all") c.average_window = AverageWindow::all;
    else if (value == "exclude_last") c.average_window = AverageWindow::exclude_last;
    else throw ConfigError(line, "window must be all or exclude_last");
  } else if (key == "update") {
    if (value == "smooth") c.update_rule = UpdateRule::smooth;
    else if (value == "proximal" || value == "prox") c.update_rule = UpdateRule::proximal;
    else throw ConfigError(line, "update must be smooth or proximal");
  } else if (key == "batch") {
    c.batch_size = static_cast<Index>(to_int(value, line));
  } else if (key == "sampling") {
    if (value == "uniform") c.sampling = SamplingKind::uniform;
    else if (value == "lipschitz") c.sampling = SamplingKind::lipschitz_weighted;
    else throw ConfigError(line, "sampling must be uniform or lipschitz");
  } else if (key == "rho") {
    c.growth.rho = to_double(value, line);
  } else if (key == "m1") {
    c.growth.m1 = static_cast<Index>(to_int(value, line));
  } else if (key == "w1") {
    c.katyusha.w1 = to_double(value, line);
  } else if (key == "w2") {
    c.katyusha.w2 = to_double(value, line);
  } else if (key == "variant") {
    if (value == "I") c.katyusha.variant = KatyushaVariant::I;
    else if (value == "II") c.katyusha.variant = KatyushaVariant::II;
    else throw ConfigError(line, "variant must be I or II");
  } else if (key == "momentum") {
    if (value == "I") c.momentum_option = MomentumOption::I;
    else if (value == "II") c.momentum_option = MomentumOption::II;
    else throw ConfigError(line, "momentum must be I or II");
  } else if (key == "lazy") {
    c.lazy = to_bool(value, line);
  } else if (key == "track_start") {
    c.track_start_objective = to_bool(value, line);
  } else {
    throw ConfigError(line, "unknown solver key '" + std::string(key) + "'");
  }
}

}  // namespace

StepSpec parse_step(std::string_view text) {
  text = trim(text);
  StepSpec s;
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    if (trim(text.substr(slash + 1)) != "L") throw std::invalid_argument("step must be a number or 'X/L'");
    s.per_smoothness = true;
    text = trim(text.substr(0, slash));
  }
  if (!detail::parse_real(text, s.value)) throw std::invalid_argument("step must be a number or 'X/L', got '" + std::string(text) + "'");
  if (!(s.value > 0)) throw std::invalid_argument("step must be positive");
  return s;
}

void ExperimentConfig::validate() const {
  if (solvers.empty()) throw ConfigError(0, "at least one solver entry is required");
  if (seeds.empty()) throw ConfigError(0, "at least one seed is required");
  if (data_path.empty() && !synthetic) throw ConfigError(0, "either data or synthetic must be set");
  if (!data_path.empty() && synthetic) throw ConfigError(0, "data and synthetic are mutually exclusive");
  if (long_run_factor < 1) throw ConfigError(0, "long_run_factor must be >= 1");
  for (double t : tolerances)
    if (!(t > 0)) throw ConfigError(0, "tolerances must be positive");
  for (const auto& s : solvers) {
    try {
      s.config.validate();
    } catch (const std::exception& e) {
      throw ConfigError(0, "solver '" + s.name + "': " + e.what());
    }
  }
}

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  std::map<long long, SolverEntry> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(line_no, "empty key or value");

    if (key.starts_with("solver.")) {
      const auto rest = key.substr(7);
      const auto dot = rest.find('.');
      if (dot == std::string_view::npos) throw ConfigError(line_no, "solver keys look like solver.<i>.<key>");
      const long long idx = to_int(rest.substr(0, dot), line_no);
      if (idx < 0) throw ConfigError(line_no, "solver index must be >= 0");
      apply_solver_key(entries[idx], rest.substr(dot + 1), value, line_no);
    } else if (key == "data") {
      cfg.data_path = std::filesystem::path(std::string(value));
    } else if (key == "synthetic") {
      // synthetic = <kind> <n> <d> [seed] [density]
      std::vector<std::string_view> parts;
      for (auto p : split(value, ' '))
        if (!p.empty()) parts.push_back(p);
      if (parts.size() < 3 || parts.size() > 5) throw ConfigError(line_no, "synthetic = <kind> <n> <d> [seed] [density]");
      SyntheticSpec s;
      s.kind = std::string(parts[0]);
      s.n = static_cast<Index>(to_int(parts[1], line_no));
      s.d = static_cast<Index>(to_int(parts[2], line_no));
      if (parts.size() > 3) s.seed = static_cast<std::uint64_t>(to_int(parts[3], line_no));
      if (parts.size() > 4) s.density = to_double(parts[4], line_no);
      cfg.synthetic = s;
    } else if (key == "dim") {
      cfg.dim = static_cast<Index>(to_int(value, line_no));
    } else if (key == "normalize") {
      cfg.normalize = to_bool(value, line_no);
    } else if (key == "loss") {
      cfg.loss = wrap(line_no, [&] { return loss_from_string(value); });
    } else if (key == "lambda1") {
      cfg.lambda1 = to_double(value, line_no);
    } else if (key == "lambda2") {
      cfg.lambda2 = to_double(value, line_no);
    } else if (key == "fold_l2") {
      if (value == "auto") cfg.fold_l2.reset();
      else cfg.fold_l2 = to_bool(value, line_no);
    } else if (key == "optimum") {
      if (value == "none") cfg.optimum_mode = OptimumMode::none;
      else if (value == "ridge-oracle") cfg.optimum_mode = OptimumMode::ridge_oracle;
      else if (value == "best-of-long-run") cfg.optimum_mode = OptimumMode::best_of_long_run;
      else {
        cfg.optimum_mode = OptimumMode::given;
        cfg.optimum_value = to_double(value, line_no);
      }
    } else if (key == "long_run_factor") {
      cfg.long_run_factor = static_cast<int>(to_int(value, line_no));
    } else if (key == "output") {
      cfg.output_dir = std::filesystem::path(std::string(value));
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (auto p : split(value, ',')) cfg.seeds.push_back(static_cast<std::uint64_t>(to_int(p, line_no)));
    } else if (key == "repetitions") {
      const long long r = to_int(value, line_no);
      if (r < 1) throw ConfigError(line_no, "repetitions must be >= 1");
      cfg.seeds.clear();
      for (long long s = 1; s <= r; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    } else if (key == "tolerance" || key == "tolerances") {
      cfg.tolerances.clear();
      for (auto p : split(value, ',')) cfg.tolerances.push_back(to_double(p, line_no));
    } else {
      throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!cfg.data_path.empty() && cfg.data_path.is_relative()) cfg.data_path = base_dir / cfg.data_path;
  if (cfg.output_dir.is_relative()) cfg.output_dir = base_dir / cfg.output_dir;
  for (auto& [idx, e] : entries) {
    if (e.name.empty()) e.name = std::to_string(idx) + "_" + std::string(to_string(e.config.algorithm));
    cfg.solvers.push_back(std::move(e));
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str(), path.parent_path());
}

}  // namespace vrsgd::bench
