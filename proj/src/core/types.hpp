// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace splp {

using cplx = std::complex<double>;

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

enum class Constellation { Qam16, Qam64 };
enum class CodeRate { Uncoded, Half, ThreeQuarters, FiveSixths };
enum class ChannelId { Flat, F1, P1, Custom };
enum class Equalizer { Zf, Mmse };
enum class MappingMode { ZigzagTime, ZigzagFreq };
enum class Accounting { Auto, Lp, Dvbt, None };
enum class Interleaver { None, Random };

int bits_per_symbol(Constellation c);

// Elementary sample period of the 8 MHz-family OFDM grid: T = 7 / (8 * BW).
inline double elementary_period_s(double bandwidth_hz) {
  return 7.0 / (8.0 * bandwidth_hz);
}

// numerator/denominator of the info:coded puncturing period (k:n)
struct RateFraction {
  int info;
  int coded;
};
RateFraction rate_fraction(CodeRate r);
inline double rate_value(CodeRate r) {
  RateFraction f = rate_fraction(r);
  return static_cast<double>(f.info) / static_cast<double>(f.coded);
}

// One OFDM frame of active-carrier cells, row-major (symbol, carrier).
struct ComplexFrame {
  int n_symbols = 0;
  int n_carriers = 0;
  std::vector<cplx> cells;

  ComplexFrame() = default;
  ComplexFrame(int symbols, int carriers)
      : n_symbols(symbols), n_carriers(carriers),
        cells(static_cast<size_t>(symbols) * carriers) {}

  cplx& at(int t, int f) { return cells[static_cast<size_t>(t) * n_carriers + f]; }
  const cplx& at(int t, int f) const {
    return cells[static_cast<size_t>(t) * n_carriers + f];
  }
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace splp
