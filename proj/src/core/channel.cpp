// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "core/config.hpp"
#include "core/ofdm.hpp"
#include "core/rng.hpp"

#ifndef SPLP_DEFAULT_DATA_DIR
#define SPLP_DEFAULT_DATA_DIR "data/channels"
#endif

namespace splp {

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

double TapSet::total_power() const {
  double p = 0;
  for (const Tap& t : echoes) p += t.amplitude * t.amplitude;
  if (los) p += los->amplitude * los->amplitude;
  return p;
}

double TapSet::max_delay_s() const {
  double d = 0;
  for (const Tap& t : echoes) d = std::max(d, t.delay_s);
  if (los) d = std::max(d, los->delay_s);
  return d;
}

TapSet TapSet::rounded_to_sample(double t_sample) const {
  TapSet out = *this;
  auto snap = [&](Tap& t) {
    t.delay_s = std::round(t.delay_s / t_sample) * t_sample;
  };
  for (Tap& t : out.echoes) snap(t);
  if (out.los) snap(*out.los);
  return out;
}

namespace {

void normalize_power(TapSet& ts) {
  double p = ts.total_power();
  if (!(p > 0)) throw ConfigError("tap set has no power: " + ts.source);
  double s = 1.0 / std::sqrt(p);
  for (Tap& t : ts.echoes) t.amplitude *= s;
  if (ts.los) ts.los->amplitude *= s;
}

}  // namespace

TapSet parse_tap_text(const std::string& text, const std::string& source_name) {
  TapSet ts;
  ts.source = source_name;
  ts.content_hash = fnv1a64(text);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    bool is_los = (first == "LOS" || first == "los");
    Tap t;
    if (is_los) {
      if (!(ls >> t.amplitude >> t.delay_s >> t.phase_rad))
        throw ConfigError(source_name + ":" + std::to_string(lineno) +
                          ": expected 'LOS amplitude delay_us phase_rad'");
    } else {
      char* end = nullptr;
      t.amplitude = std::strtod(first.c_str(), &end);
      if (end == first.c_str() || *end != '\0')
        throw ConfigError(source_name + ":" + std::to_string(lineno) +
                          ": expected 'amplitude delay_us phase_rad'");
      if (!(ls >> t.delay_s >> t.phase_rad))
        throw ConfigError(source_name + ":" + std::to_string(lineno) +
                          ": expected 'amplitude delay_us phase_rad'");
    }
    std::string extra;
    if (ls >> extra)
      throw ConfigError(source_name + ":" + std::to_string(lineno) +
                        ": trailing tokens");
    if (t.amplitude < 0)
      throw ConfigError(source_name + ":" + std::to_string(lineno) +
                        ": amplitude must be non-negative");
    if (t.delay_s < 0)
      throw ConfigError(source_name + ":" + std::to_string(lineno) +
                        ": delay must be non-negative");
    t.delay_s *= 1e-6;  // file column is microseconds
    if (is_los) {
      if (ts.los)
        throw ConfigError(source_name + ": more than one LOS line");
      ts.los = t;
    } else {
      ts.echoes.push_back(t);
    }
  }
  if (ts.ray_count() == 0)
    throw ConfigError(source_name + ": no taps found");
  normalize_power(ts);
  return ts;
}

TapSet load_tap_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open tap file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tap_text(buf.str(), path);
}

namespace {

std::string data_dir() {
  if (const char* env = std::getenv("SPLP_DATA_DIR"); env && *env)
    return env;
  return SPLP_DEFAULT_DATA_DIR;
}

}  // namespace

TapSet load_tap_set(const LinkConfig& cfg) {
  switch (cfg.channel_id) {
    case ChannelId::Flat: return load_tap_file(data_dir() + "/flat.taps");
    case ChannelId::F1: return load_tap_file(data_dir() + "/f1.taps");
    case ChannelId::P1: return load_tap_file(data_dir() + "/p1.taps");
    case ChannelId::Custom: return load_tap_file(cfg.channel_file);
  }
  throw ConfigError("unknown channel id");
}

ChannelRealization realize_channel(const TapSet& taps, const LinkConfig& cfg,
                                   RngStream* rng) {
  TapSet ts = taps;
  if (rng) {
    for (Tap& t : ts.echoes)
      t.phase_rad = 2.0 * std::numbers::pi * rng->uniform();
  }
  const double t_sample = elementary_period_s(cfg.bandwidth_hz);
  const double df = 1.0 / (cfg.fft_size * t_sample);

  ChannelRealization out;
  out.h.assign(cfg.n_carriers, cplx{0, 0});
  auto add_ray_freq = [&](const Tap& t) {
    cplx gain = std::polar(t.amplitude, t.phase_rad);
    for (int a = 0; a < cfg.n_carriers; ++a) {
      double f = signed_carrier_offset(a, cfg.n_carriers) * df;
      double ang = -2.0 * std::numbers::pi * f * t.delay_s;
      out.h[a] += gain * cplx{std::cos(ang), std::sin(ang)};
    }
  };
  for (const Tap& t : ts.echoes) add_ray_freq(t);
  if (ts.los) add_ray_freq(*ts.los);

  int max_tap = 0;
  auto tap_index = [&](const Tap& t) {
    return static_cast<int>(std::llround(t.delay_s / t_sample));
  };
  for (const Tap& t : ts.echoes) max_tap = std::max(max_tap, tap_index(t));
  if (ts.los) max_tap = std::max(max_tap, tap_index(*ts.los));
  out.impulse.assign(max_tap + 1, cplx{0, 0});
  auto add_ray_time = [&](const Tap& t) {
    out.impulse[tap_index(t)] += std::polar(t.amplitude, t.phase_rad);
  };
  for (const Tap& t : ts.echoes) add_ray_time(t);
  if (ts.los) add_ray_time(*ts.los);
  return out;
}

void apply_channel_freq(ComplexFrame& frame, const ChannelRealization& chan,
                        double noise_var, RngStream* noise_rng) {
  if (static_cast<int>(chan.h.size()) != frame.n_carriers)
    throw std::invalid_argument("channel/frame carrier count mismatch");
  for (int t = 0; t < frame.n_symbols; ++t) {
    for (int a = 0; a < frame.n_carriers; ++a) {
      cplx v = frame.at(t, a) * chan.h[a];
      if (noise_rng && noise_var > 0) v += noise_rng->cgaussian(noise_var);
      frame.at(t, a) = v;
    }
  }
}

std::vector<cplx> apply_channel_time(std::span<const cplx> samples,
                                     const ChannelRealization& chan,
                                     double noise_var, RngStream* noise_rng) {
  const auto& imp = chan.impulse;
  std::vector<cplx> out(samples.size(), cplx{0, 0});
  for (size_t k = 0; k < imp.size(); ++k) {
    if (imp[k] == cplx{0, 0}) continue;
    cplx g = imp[k];
    for (size_t n = k; n < samples.size(); ++n) out[n] += g * samples[n - k];
  }
  if (noise_rng && noise_var > 0)
    for (auto& v : out) v += noise_rng->cgaussian(noise_var);
  return out;
}

std::pair<cplx, double> channel_variance(std::span<const cplx> h) {
  if (h.empty()) return {cplx{0, 0}, 0.0};
  cplx mean{0, 0};
  for (const cplx& v : h) mean += v;
  mean /= static_cast<double>(h.size());
  double var = 0;
  for (const cplx& v : h) var += std::norm(v - mean);
  var /= static_cast<double>(h.size());
  return {mean, var};
}

double channel_variance_unbiased(std::span<const cplx> h) {
  if (h.size() < 2) return 0.0;
  auto [mean, biased] = channel_variance(h);
  return biased * static_cast<double>(h.size()) /
         static_cast<double>(h.size() - 1);
}

}  // namespace splp
