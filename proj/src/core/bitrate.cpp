// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/bitrate.hpp"

#include <cmath>

namespace splp {

double pilot_power_fraction(int pilot_spacing, double pilot_amplitude) {
  const double data = pilot_spacing - 1;
  return data / (data + pilot_amplitude * pilot_amplitude);
}

double ofdm_symbol_duration_s(const LinkConfig& cfg) {
  return (cfg.fft_size + cfg.guard_samples) *
         elementary_period_s(cfg.bandwidth_hz);
}

double useful_bitrate_mbps(const LinkConfig& cfg) {
  const double m = bits_per_symbol(cfg.constellation);
  const double rc = rate_value(cfg.code_rate);
  const double outer = 188.0 / 204.0;
  double data_cells;
  double pilot_fraction;
  if (cfg.baseline_mode) {
    data_cells = cfg.dvbt_data_carriers;
    pilot_fraction = 1.0;  // pilots occupy their own carriers, not data cells
  } else {
    const double L = cfg.spreading_total();
    data_cells = cfg.n_carriers;
    pilot_fraction = (L - 1.0) / L;
  }
  const double bits_per_ofdm_symbol = data_cells * pilot_fraction * m * rc * outer;
  return bits_per_ofdm_symbol / ofdm_symbol_duration_s(cfg) / 1e6;
}

namespace {

double accounting_overhead(const LinkConfig& cfg) {
  Accounting acc = cfg.accounting;
  if (acc == Accounting::Auto)
    acc = cfg.baseline_mode ? Accounting::Dvbt : Accounting::Lp;
  switch (acc) {
    case Accounting::Lp: {
      const double L = cfg.spreading_total();
      return (L - 1.0 + cfg.boost) / (L - 1.0);
    }
    case Accounting::Dvbt:
      return 1.0 / pilot_power_fraction(cfg.dvbt_pilot_spacing,
                                        cfg.dvbt_pilot_amplitude);
    default:
      return 1.0;
  }
}

}  // namespace

double noise_var_for_ebn0(const LinkConfig& cfg, double ebn0_linear) {
  const double m = bits_per_symbol(cfg.constellation);
  const double rc = rate_value(cfg.code_rate);
  return accounting_overhead(cfg) / (m * rc * ebn0_linear);
}

double noise_var_for_snr(const LinkConfig& cfg, double snr_linear) {
  const double L = cfg.spreading_total();
  const double mean_cell_power = (L - 1.0 + cfg.boost) / L;
  return mean_cell_power / snr_linear;
}

std::string ebn0_convention(const LinkConfig& cfg) {
  Accounting acc = cfg.accounting;
  if (acc == Accounting::Auto)
    acc = cfg.baseline_mode ? Accounting::Dvbt : Accounting::Lp;
  switch (acc) {
    case Accounting::Lp:
      return "noise_var = ((L-1+boost)/(L-1)) / (m * Rc * ebn0_lin); "
             "pilot boost charged to the transmit energy budget";
    case Accounting::Dvbt:
      return "noise_var = (1/pilot_power_fraction) / (m * Rc * ebn0_lin); "
             "scattered-pilot power charged to the transmit energy budget";
    default:
      return "noise_var = 1 / (m * Rc * ebn0_lin); no pilot overhead charged";
  }
}

std::string snr_convention(const LinkConfig& cfg) {
  (void)cfg;
  return "noise_var = mean_cell_power / snr_lin with "
         "mean_cell_power = (L-1+boost)/L";
}

}  // namespace splp
