#include "clayer/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace clayer {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_double(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    fail(line, "key '" + key + "': cannot parse '" + v + "' as a number");
  }
}

long long parse_int(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    fail(line, "key '" + key + "': cannot parse '" + v + "' as an integer");
  }
}

std::uint64_t parse_u64(int line, const std::string& key,
                        const std::string& v) {
  try {
    std::size_t pos = 0;
    unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size() || v.find('-') != std::string::npos) {
      throw std::invalid_argument("bad unsigned");
    }
    return x;
  } catch (const std::exception&) {
    fail(line, "key '" + key + "': cannot parse '" + v +
                   "' as a nonnegative integer");
  }
}

std::vector<double> parse_double_list(int line, const std::string& key,
                                      const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(line, "key '" + key + "': empty list entry");
    out.push_back(parse_double(line, key, item));
  }
  if (out.empty()) fail(line, "key '" + key + "': empty list");
  return out;
}

std::vector<int> parse_int_list(int line, const std::string& key,
                                const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(line, "key '" + key + "': empty list entry");
    out.push_back(static_cast<int>(parse_int(line, key, item)));
  }
  if (out.empty()) fail(line, "key '" + key + "': empty list");
  return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      static const std::set<std::string> known = {
          "parameters", "grid", "integrator", "initial", "run", "mms"};
      if (known.find(section) == known.end()) {
        fail(lineno, "unknown section '" + section + "'");
      }
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (val.empty()) fail(lineno, "key '" + key + "': empty value");
    if (section.empty()) fail(lineno, "key '" + key + "' outside any section");

    std::string qual = section + "." + key;
    if (!seen.insert(qual).second) fail(lineno, "duplicate key '" + qual + "'");

    if (section == "parameters") {
      if (key == "H") cfg.params.H = parse_double(lineno, key, val);
      else if (key == "J") cfg.params.J = parse_double(lineno, key, val);
      else if (key == "kappa") cfg.params.kappa = parse_double(lineno, key, val);
      else if (key == "Pr_m") cfg.params.Pr_m = parse_double(lineno, key, val);
      else if (key == "tau0") cfg.params.tau0 = parse_double(lineno, key, val);
      else if (key == "s") cfg.params.s = parse_double(lineno, key, val);
      else fail(lineno, "unknown key '" + qual + "'");
    } else if (section == "grid") {
      if (key == "n_x") cfg.n_x = static_cast<int>(parse_int(lineno, key, val));
      else if (key == "L_x") cfg.L_x = parse_double(lineno, key, val);
      else if (key == "n_y") cfg.n_y = static_cast<int>(parse_int(lineno, key, val));
      else fail(lineno, "unknown key '" + qual + "'");
    } else if (section == "integrator") {
      if (key == "dt") cfg.dt = parse_double(lineno, key, val);
      else if (key == "t_end") cfg.t_end = parse_double(lineno, key, val);
      else if (key == "scheme") {
        if (val == "imex_cn_ab2") cfg.scheme = Scheme::imex_cn_ab2;
        else if (val == "imex_euler") cfg.scheme = Scheme::imex_euler;
        else fail(lineno, "scheme must be imex_cn_ab2 or imex_euler");
      } else if (key == "monitor_every") {
        cfg.monitor_every = static_cast<int>(parse_int(lineno, key, val));
      } else if (key == "max_norm_guard") {
        cfg.max_norm_guard = parse_double(lineno, key, val);
      } else if (key == "mms_forcing") {
        if (val == "none") cfg.mms_forcing = ForcingChoice::none;
        else if (val == "continuous") cfg.mms_forcing = ForcingChoice::continuous;
        else fail(lineno, "mms_forcing must be none or continuous");
      } else fail(lineno, "unknown key '" + qual + "'");
    } else if (section == "initial") {
      if (key == "preset") {
        if (val == "zero") cfg.preset = InitialPreset::zero;
        else if (val == "analytic_band") cfg.preset = InitialPreset::analytic_band;
        else if (val == "checkpoint") cfg.preset = InitialPreset::checkpoint;
        else fail(lineno, "preset must be zero, analytic_band, or checkpoint");
      } else if (key == "amplitude") {
        cfg.amplitude = parse_double(lineno, key, val);
      } else if (key == "slope") {
        cfg.slope = parse_double(lineno, key, val);
      } else if (key == "checkpoint") {
        cfg.checkpoint = val;
      } else fail(lineno, "unknown key '" + qual + "'");
    } else if (section == "run") {
      if (key == "seed") cfg.seed = parse_u64(lineno, key, val);
      else if (key == "output_dir") cfg.output_dir = val;
      else fail(lineno, "unknown key '" + qual + "'");
    } else if (section == "mms") {
      if (key == "dt_list") cfg.mms_dt_list = parse_double_list(lineno, key, val);
      else if (key == "ny_list") cfg.mms_ny_list = parse_int_list(lineno, key, val);
      else if (key == "t_end_temporal") cfg.mms_t_end_temporal = parse_double(lineno, key, val);
      else if (key == "t_end_spatial") cfg.mms_t_end_spatial = parse_double(lineno, key, val);
      else if (key == "dt_spatial") cfg.mms_dt_spatial = parse_double(lineno, key, val);
      else fail(lineno, "unknown key '" + qual + "'");
    }
  }

  validate_config(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void validate_config(const RunConfig& cfg) {
  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("[parameters] ") + ex.what());
  }
  if (cfg.n_x < 4 || cfg.n_x % 2 != 0) {
    throw ConfigError("[grid] n_x must be even and at least 4");
  }
  if (cfg.n_y < 3) throw ConfigError("[grid] n_y must be at least 3");
  if (!(cfg.L_x > 0.0)) throw ConfigError("[grid] L_x must be positive");
  if (!(cfg.dt > 0.0)) throw ConfigError("[integrator] dt must be positive");
  if (!(cfg.t_end >= 0.0)) {
    throw ConfigError("[integrator] t_end must be nonnegative");
  }
  if (cfg.monitor_every < 1) {
    throw ConfigError("[integrator] monitor_every must be at least 1");
  }
  if (!(cfg.max_norm_guard > 0.0)) {
    throw ConfigError("[integrator] max_norm_guard must be positive");
  }
  if (!(cfg.amplitude >= 0.0)) {
    throw ConfigError("[initial] amplitude must be nonnegative");
  }
  if (!(cfg.slope > 0.0)) throw ConfigError("[initial] slope must be positive");
  if (cfg.preset == InitialPreset::checkpoint && cfg.checkpoint.empty()) {
    throw ConfigError("[initial] preset checkpoint requires a checkpoint path");
  }
  for (double d : cfg.mms_dt_list) {
    if (!(d > 0.0)) throw ConfigError("[mms] dt_list entries must be positive");
  }
  for (int n : cfg.mms_ny_list) {
    if (n < 3) throw ConfigError("[mms] ny_list entries must be at least 3");
  }
  if (!(cfg.mms_t_end_temporal > 0.0) || !(cfg.mms_t_end_spatial > 0.0) ||
      !(cfg.mms_dt_spatial > 0.0)) {
    throw ConfigError("[mms] study times and steps must be positive");
  }
}

}  // namespace clayer
