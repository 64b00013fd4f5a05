// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace splp {

// Full description of one simulated link. Parsed from "key = value" text,
// one pair per line, '#' comments. Unknown keys are errors so typos fail
// loudly instead of silently running defaults.
struct LinkConfig {
  // OFDM dimensioning
  int fft_size = 2048;
  int guard_samples = 512;
  double bandwidth_hz = 8e6;
  int n_symbols = 64;    // frame length in OFDM symbols
  int n_carriers = 1728; // active carriers (even, DC unused)

  // spreading
  int lt = 32;
  int lf = 2;
  int pilot_index = 1;  // 1-based sequence index carrying the pilot
  double boost = 1.0;
  MappingMode mapping = MappingMode::ZigzagTime;

  // modulation / coding
  Constellation constellation = Constellation::Qam16;
  CodeRate code_rate = CodeRate::ThreeQuarters;
  Interleaver interleaver = Interleaver::None;  // sensitivity studies only

  // channel
  ChannelId channel_id = ChannelId::F1;
  std::string channel_file;  // used when channel_id == Custom
  bool time_domain = false;  // propagate per-sample instead of per-carrier
  bool rerandomize_channel = false;  // fresh tap phases each block

  // receiver
  Equalizer equalizer = Equalizer::Zf;
  bool perfect_csi = false;
  bool oracle_mode = false;  // fold predicted self-interference into LLR noise
  double zf_erasure_epsilon = 1e-6;
  double llr_saturation = 1e6;

  // classical reference system (scattered pilots, no spreading)
  bool baseline_mode = false;
  int dvbt_data_carriers = 1512;
  int dvbt_pilot_spacing = 12;
  double dvbt_pilot_amplitude = 4.0 / 3.0;

  // energy accounting for Eb/N0 <-> noise conversion
  Accounting accounting = Accounting::Auto;

  // experiment grids
  std::vector<double> snr_grid_db = {0, 5, 10, 15, 20, 25, 30, 35, 40};
  std::vector<double> ebn0_grid_db = {6, 7, 8, 9, 10, 11, 12};
  std::vector<int> lf_sweep = {1, 2, 4, 8, 16, 32, 64};
  std::vector<double> boost_grid = {1, 2, 4, 8, 16};

  // Monte Carlo control
  std::uint64_t master_seed = 1;
  std::uint64_t mse_trials = 100000;          // subset estimates per point
  std::uint64_t ber_target_errors = 100;
  std::uint64_t ber_min_errors_reliable = 20;
  std::uint64_t ber_max_info_bits = 10000000;
  int workers = 1;

  int spreading_total() const { return lt * lf; }
};

struct ValidationResult {
  bool ok = true;
  std::string error;  // first violated constraint, by name
  std::vector<std::string> warnings;
};

LinkConfig default_config();

// Parse/serialize. serialize_config emits every key in a fixed order with
// round-trip-exact number formatting, so parse(serialize(c)) == c and a
// second serialize is byte-identical.
LinkConfig parse_config(const std::string& text);
std::string serialize_config(const LinkConfig& cfg);

// Apply one "key" / "value" override (same key set as the file format).
// Throws ConfigError on unknown key or unparseable value.
void set_config_value(LinkConfig& cfg, const std::string& key,
                      const std::string& value);
std::string get_config_value(const LinkConfig& cfg, const std::string& key);

ValidationResult validate_config(const LinkConfig& cfg);

// enum <-> text used by the config grammar
std::string to_string(Constellation c);
std::string to_string(CodeRate r);
std::string to_string(ChannelId c);
std::string to_string(Equalizer e);
std::string to_string(MappingMode m);
std::string to_string(Accounting a);
std::string to_string(Interleaver i);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace splp
