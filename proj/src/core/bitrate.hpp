// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "core/config.hpp"
#include "core/types.hpp"

namespace splp {

// Fraction of transmit power carrying data when every pilot_spacing-th
// carrier is a pilot boosted to the given amplitude (data amplitude 1).
double pilot_power_fraction(int pilot_spacing, double pilot_amplitude);

double ofdm_symbol_duration_s(const LinkConfig& cfg);

// Net useful bitrate in Mbit/s after coding, the 188/204 outer-code
// overhead, and pilot overhead:
//   spread mode:  n_carriers data cells, (L-1)/L of the symbol budget
//   baseline:     dvbt_data_carriers data cells, no spreading loss
double useful_bitrate_mbps(const LinkConfig& cfg);

// Per-carrier noise variance for an info-bit Eb/N0 (linear), honoring the
// configured energy accounting (pilot boost overhead or scattered-pilot
// overhead). Accounting::Auto picks lp/dvbt from baseline_mode.
double noise_var_for_ebn0(const LinkConfig& cfg, double ebn0_linear);

// Per-chip noise variance for a chip-level SNR (linear): the mean transmit
// power per cell, (L-1+B)/L, divided by the SNR.
double noise_var_for_snr(const LinkConfig& cfg, double snr_linear);

// human-readable statement of the two conventions, recorded in reports
std::string ebn0_convention(const LinkConfig& cfg);
std::string snr_convention(const LinkConfig& cfg);

}  // namespace splp
