// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/config.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "core/channel.hpp"

namespace splp {

int bits_per_symbol(Constellation c) {
  return c == Constellation::Qam16 ? 4 : 6;
}

RateFraction rate_fraction(CodeRate r) {
  switch (r) {
    case CodeRate::Uncoded: return {1, 1};
    case CodeRate::Half: return {1, 2};
    case CodeRate::ThreeQuarters: return {3, 4};
    case CodeRate::FiveSixths: return {5, 6};
  }
  return {1, 1};
}

std::string to_string(Constellation c) {
  return c == Constellation::Qam16 ? "16qam" : "64qam";
}
std::string to_string(CodeRate r) {
  switch (r) {
    case CodeRate::Uncoded: return "uncoded";
    case CodeRate::Half: return "1/2";
    case CodeRate::ThreeQuarters: return "3/4";
    case CodeRate::FiveSixths: return "5/6";
  }
  return "uncoded";
}
std::string to_string(ChannelId c) {
  switch (c) {
    case ChannelId::Flat: return "flat";
    case ChannelId::F1: return "f1";
    case ChannelId::P1: return "p1";
    case ChannelId::Custom: return "custom";
  }
  return "flat";
}
std::string to_string(Equalizer e) {
  return e == Equalizer::Zf ? "zf" : "mmse";
}
std::string to_string(MappingMode m) {
  return m == MappingMode::ZigzagTime ? "zigzag_time" : "zigzag_freq";
}
std::string to_string(Accounting a) {
  switch (a) {
    case Accounting::Auto: return "auto";
    case Accounting::Lp: return "lp";
    case Accounting::Dvbt: return "dvbt";
    case Accounting::None: return "none";
  }
  return "auto";
}
std::string to_string(Interleaver i) {
  return i == Interleaver::Random ? "random" : "none";
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T, size_t N>
T parse_enum(const std::string& key, const std::string& value,
             const std::pair<const char*, T> (&table)[N]) {
  for (const auto& [name, v] : table)
    if (value == name) return v;
  throw ConfigError("invalid value '" + value + "' for " + key);
}

Constellation parse_constellation(const std::string& v) {
  static const std::pair<const char*, Constellation> t[] = {
      {"16qam", Constellation::Qam16}, {"64qam", Constellation::Qam64}};
  return parse_enum("constellation", v, t);
}
CodeRate parse_code_rate(const std::string& v) {
  static const std::pair<const char*, CodeRate> t[] = {
      {"uncoded", CodeRate::Uncoded},
      {"1/2", CodeRate::Half},
      {"3/4", CodeRate::ThreeQuarters},
      {"5/6", CodeRate::FiveSixths}};
  return parse_enum("code_rate", v, t);
}
ChannelId parse_channel_id(const std::string& v) {
  static const std::pair<const char*, ChannelId> t[] = {
      {"flat", ChannelId::Flat},
      {"f1", ChannelId::F1},
      {"p1", ChannelId::P1},
      {"custom", ChannelId::Custom}};
  return parse_enum("channel", v, t);
}
Equalizer parse_equalizer(const std::string& v) {
  static const std::pair<const char*, Equalizer> t[] = {
      {"zf", Equalizer::Zf}, {"mmse", Equalizer::Mmse}};
  return parse_enum("equalizer", v, t);
}
MappingMode parse_mapping(const std::string& v) {
  static const std::pair<const char*, MappingMode> t[] = {
      {"zigzag_time", MappingMode::ZigzagTime},
      {"zigzag_freq", MappingMode::ZigzagFreq}};
  return parse_enum("mapping", v, t);
}
Accounting parse_accounting(const std::string& v) {
  static const std::pair<const char*, Accounting> t[] = {
      {"auto", Accounting::Auto},
      {"lp", Accounting::Lp},
      {"dvbt", Accounting::Dvbt},
      {"none", Accounting::None}};
  return parse_enum("accounting", v, t);
}
Interleaver parse_interleaver(const std::string& v) {
  static const std::pair<const char*, Interleaver> t[] = {
      {"none", Interleaver::None}, {"random", Interleaver::Random}};
  return parse_enum("interleaver", v, t);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("invalid value '" + v + "' for " + key);
}

long long parse_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  long long r = std::strtoll(v.c_str(), &end, 10);
  if (errno != 0 || end == v.c_str() || *end != '\0')
    throw ConfigError("invalid integer '" + v + "' for " + key);
  return r;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  unsigned long long r = std::strtoull(v.c_str(), &end, 10);
  if (errno != 0 || end == v.c_str() || *end != '\0' || v[0] == '-')
    throw ConfigError("invalid unsigned integer '" + v + "' for " + key);
  return r;
}

double parse_real(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  double r = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("invalid number '" + v + "' for " + key);
  return r;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  std::string last = trim(cur);
  if (!last.empty() || !out.empty()) out.push_back(last);
  return out;
}

std::vector<double> parse_real_list(const std::string& key,
                                    const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) {
    if (item.empty()) throw ConfigError("empty element in list for " + key);
    out.push_back(parse_real(key, item));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  for (const auto& item : split_list(v)) {
    if (item.empty()) throw ConfigError("empty element in list for " + key);
    out.push_back(static_cast<int>(parse_int(key, item)));
  }
  return out;
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

bool is_pow2(long long v) { return v > 0 && (v & (v - 1)) == 0; }

// Fixed serialization order; also the set of legal keys.
const char* const kKeyOrder[] = {
    "fft_size", "guard_samples", "bandwidth_hz", "n_symbols", "n_carriers",
    "lt", "lf", "pilot_index", "boost", "mapping",
    "constellation", "code_rate", "interleaver",
    "channel", "channel_file", "time_domain", "rerandomize_channel",
    "equalizer", "perfect_csi", "oracle_mode", "zf_erasure_epsilon",
    "llr_saturation",
    "baseline_mode", "dvbt_data_carriers", "dvbt_pilot_spacing",
    "dvbt_pilot_amplitude",
    "accounting",
    "snr_grid_db", "ebn0_grid_db", "lf_sweep", "boost_grid",
    "master_seed", "mse_trials", "ber_target_errors",
    "ber_min_errors_reliable", "ber_max_info_bits", "workers",
};

}  // namespace

std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  // integers stay in plain notation unless scientific is strictly shorter
  if (v == std::floor(v) && std::abs(v) < 1e18) {
    char plain[40];
    std::snprintf(plain, sizeof(plain), "%.0f", v);
    if (std::strtod(plain, nullptr) == v &&
        std::strlen(plain) <= std::strlen(buf))
      return plain;
  }
  return buf;
}

LinkConfig default_config() { return LinkConfig{}; }

void set_config_value(LinkConfig& cfg, const std::string& rawkey,
                      const std::string& rawvalue) {
  const std::string key = trim(rawkey);
  const std::string value = trim(rawvalue);
  if (key == "fft_size") cfg.fft_size = static_cast<int>(parse_int(key, value));
  else if (key == "guard_samples") cfg.guard_samples = static_cast<int>(parse_int(key, value));
  else if (key == "bandwidth_hz") cfg.bandwidth_hz = parse_real(key, value);
  else if (key == "n_symbols") cfg.n_symbols = static_cast<int>(parse_int(key, value));
  else if (key == "n_carriers") cfg.n_carriers = static_cast<int>(parse_int(key, value));
  else if (key == "lt") cfg.lt = static_cast<int>(parse_int(key, value));
  else if (key == "lf") cfg.lf = static_cast<int>(parse_int(key, value));
  else if (key == "pilot_index") cfg.pilot_index = static_cast<int>(parse_int(key, value));
  else if (key == "boost") cfg.boost = parse_real(key, value);
  else if (key == "mapping") cfg.mapping = parse_mapping(value);
  else if (key == "constellation") cfg.constellation = parse_constellation(value);
  else if (key == "code_rate") cfg.code_rate = parse_code_rate(value);
  else if (key == "interleaver") cfg.interleaver = parse_interleaver(value);
  else if (key == "channel") cfg.channel_id = parse_channel_id(value);
  else if (key == "channel_file") cfg.channel_file = value;
  else if (key == "time_domain") cfg.time_domain = parse_bool(key, value);
  else if (key == "rerandomize_channel") cfg.rerandomize_channel = parse_bool(key, value);
  else if (key == "equalizer") cfg.equalizer = parse_equalizer(value);
  else if (key == "perfect_csi") cfg.perfect_csi = parse_bool(key, value);
  else if (key == "oracle_mode") cfg.oracle_mode = parse_bool(key, value);
  else if (key == "zf_erasure_epsilon") cfg.zf_erasure_epsilon = parse_real(key, value);
  else if (key == "llr_saturation") cfg.llr_saturation = parse_real(key, value);
  else if (key == "baseline_mode") cfg.baseline_mode = parse_bool(key, value);
  else if (key == "dvbt_data_carriers") cfg.dvbt_data_carriers = static_cast<int>(parse_int(key, value));
  else if (key == "dvbt_pilot_spacing") cfg.dvbt_pilot_spacing = static_cast<int>(parse_int(key, value));
  else if (key == "dvbt_pilot_amplitude") cfg.dvbt_pilot_amplitude = parse_real(key, value);
  else if (key == "accounting") cfg.accounting = parse_accounting(value);
  else if (key == "snr_grid_db") cfg.snr_grid_db = parse_real_list(key, value);
  else if (key == "ebn0_grid_db") cfg.ebn0_grid_db = parse_real_list(key, value);
  else if (key == "lf_sweep") cfg.lf_sweep = parse_int_list(key, value);
  else if (key == "boost_grid") cfg.boost_grid = parse_real_list(key, value);
  else if (key == "master_seed") cfg.master_seed = parse_uint(key, value);
  else if (key == "mse_trials") cfg.mse_trials = parse_uint(key, value);
  else if (key == "ber_target_errors") cfg.ber_target_errors = parse_uint(key, value);
  else if (key == "ber_min_errors_reliable") cfg.ber_min_errors_reliable = parse_uint(key, value);
  else if (key == "ber_max_info_bits") cfg.ber_max_info_bits = parse_uint(key, value);
  else if (key == "workers") cfg.workers = static_cast<int>(parse_int(key, value));
  else throw ConfigError("unknown key: " + key);
}

std::string get_config_value(const LinkConfig& cfg, const std::string& key) {
  if (key == "fft_size") return std::to_string(cfg.fft_size);
  if (key == "guard_samples") return std::to_string(cfg.guard_samples);
  if (key == "bandwidth_hz") return format_double(cfg.bandwidth_hz);
  if (key == "n_symbols") return std::to_string(cfg.n_symbols);
  if (key == "n_carriers") return std::to_string(cfg.n_carriers);
  if (key == "lt") return std::to_string(cfg.lt);
  if (key == "lf") return std::to_string(cfg.lf);
  if (key == "pilot_index") return std::to_string(cfg.pilot_index);
  if (key == "boost") return format_double(cfg.boost);
  if (key == "mapping") return to_string(cfg.mapping);
  if (key == "constellation") return to_string(cfg.constellation);
  if (key == "code_rate") return to_string(cfg.code_rate);
  if (key == "interleaver") return to_string(cfg.interleaver);
  if (key == "channel") return to_string(cfg.channel_id);
  if (key == "channel_file") return cfg.channel_file;
  if (key == "time_domain") return cfg.time_domain ? "true" : "false";
  if (key == "rerandomize_channel") return cfg.rerandomize_channel ? "true" : "false";
  if (key == "equalizer") return to_string(cfg.equalizer);
  if (key == "perfect_csi") return cfg.perfect_csi ? "true" : "false";
  if (key == "oracle_mode") return cfg.oracle_mode ? "true" : "false";
  if (key == "zf_erasure_epsilon") return format_double(cfg.zf_erasure_epsilon);
  if (key == "llr_saturation") return format_double(cfg.llr_saturation);
  if (key == "baseline_mode") return cfg.baseline_mode ? "true" : "false";
  if (key == "dvbt_data_carriers") return std::to_string(cfg.dvbt_data_carriers);
  if (key == "dvbt_pilot_spacing") return std::to_string(cfg.dvbt_pilot_spacing);
  if (key == "dvbt_pilot_amplitude") return format_double(cfg.dvbt_pilot_amplitude);
  if (key == "accounting") return to_string(cfg.accounting);
  if (key == "snr_grid_db") return join_reals(cfg.snr_grid_db);
  if (key == "ebn0_grid_db") return join_reals(cfg.ebn0_grid_db);
  if (key == "lf_sweep") return join_ints(cfg.lf_sweep);
  if (key == "boost_grid") return join_reals(cfg.boost_grid);
  if (key == "master_seed") return std::to_string(cfg.master_seed);
  if (key == "mse_trials") return std::to_string(cfg.mse_trials);
  if (key == "ber_target_errors") return std::to_string(cfg.ber_target_errors);
  if (key == "ber_min_errors_reliable") return std::to_string(cfg.ber_min_errors_reliable);
  if (key == "ber_max_info_bits") return std::to_string(cfg.ber_max_info_bits);
  if (key == "workers") return std::to_string(cfg.workers);
  throw ConfigError("unknown key: " + key);
}

LinkConfig parse_config(const std::string& text) {
  LinkConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    set_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

std::string serialize_config(const LinkConfig& cfg) {
  std::string out;
  for (const char* key : kKeyOrder) {
    out += key;
    out += " = ";
    out += get_config_value(cfg, key);
    out += "\n";
  }
  return out;
}

ValidationResult validate_config(const LinkConfig& cfg) {
  ValidationResult r;
  auto fail = [&](const std::string& msg) {
    r.ok = false;
    r.error = msg;
    return r;
  };
  if (!is_pow2(cfg.fft_size)) return fail("fft_size must be a positive power of two");
  if (cfg.guard_samples < 0 || cfg.guard_samples >= cfg.fft_size)
    return fail("guard_samples must be in [0, fft_size)");
  if (!(cfg.bandwidth_hz > 0)) return fail("bandwidth_hz must be positive");
  if (cfg.n_symbols <= 0) return fail("n_symbols must be positive");
  if (cfg.n_carriers <= 0 || cfg.n_carriers % 2 != 0)
    return fail("n_carriers must be positive and even");
  if (cfg.n_carriers > cfg.fft_size - 1)
    return fail("n_carriers must be at most fft_size - 1");
  if (!is_pow2(cfg.lt)) return fail("lt must be a positive power of two");
  if (!is_pow2(cfg.lf)) return fail("lf must be a positive power of two");
  if (cfg.n_symbols % cfg.lt != 0) return fail("lt must divide n_symbols");
  if (cfg.n_carriers % cfg.lf != 0) return fail("lf must divide n_carriers");
  const int L = cfg.spreading_total();
  if (L < 2) return fail("spreading factor lt*lf must be at least 2");
  if (cfg.pilot_index < 1 || cfg.pilot_index > L)
    return fail("pilot_index must be in [1, lt*lf]");
  if (!(cfg.boost > 0)) return fail("boost must be positive");
  if (cfg.channel_id == ChannelId::Custom && cfg.channel_file.empty())
    return fail("channel_file required when channel = custom");
  if (!(cfg.zf_erasure_epsilon > 0)) return fail("zf_erasure_epsilon must be positive");
  if (!(cfg.llr_saturation > 0)) return fail("llr_saturation must be positive");
  if (cfg.dvbt_data_carriers <= 0 || cfg.dvbt_data_carriers > cfg.n_carriers)
    return fail("dvbt_data_carriers must be in [1, n_carriers]");
  if (cfg.dvbt_pilot_spacing < 2) return fail("dvbt_pilot_spacing must be at least 2");
  if (!(cfg.dvbt_pilot_amplitude > 0)) return fail("dvbt_pilot_amplitude must be positive");
  if (cfg.snr_grid_db.empty()) return fail("snr_grid_db must not be empty");
  if (cfg.ebn0_grid_db.empty()) return fail("ebn0_grid_db must not be empty");
  if (cfg.lf_sweep.empty()) return fail("lf_sweep must not be empty");
  for (int lf : cfg.lf_sweep)
    if (!is_pow2(lf)) return fail("lf_sweep entries must be positive powers of two");
  if (cfg.boost_grid.empty()) return fail("boost_grid must not be empty");
  for (double b : cfg.boost_grid)
    if (!(b > 0)) return fail("boost_grid entries must be positive");
  if (cfg.mse_trials < 1) return fail("mse_trials must be at least 1");
  if (cfg.ber_target_errors < 1) return fail("ber_target_errors must be at least 1");
  if (cfg.ber_max_info_bits < 1) return fail("ber_max_info_bits must be at least 1");
  if (cfg.workers < 1) return fail("workers must be at least 1");

  // guard-interval versus delay spread: warning only, and only when the tap
  // profile is resolvable here
  try {
    TapSet taps = load_tap_set(cfg);
    double t_sample = elementary_period_s(cfg.bandwidth_hz);
    double max_delay = taps.max_delay_s();
    if (max_delay > cfg.guard_samples * t_sample)
      r.warnings.push_back("channel delay spread exceeds guard interval");
  } catch (const std::exception&) {
    // profile not loadable at validation time; runtime load will report it
  }
  return r;
}

}  // namespace splp
