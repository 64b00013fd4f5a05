// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/chip_map.hpp"

#include <stdexcept>

namespace splp {

ChipMapping make_chip_mapping(int lt, int lf, int n_symbols, int n_carriers,
                              MappingMode mode) {
  if (lt < 1 || lf < 1) throw std::invalid_argument("lt and lf must be >= 1");
  if (n_symbols % lt != 0)
    throw std::invalid_argument("lt must divide the frame symbol count");
  if (n_carriers % lf != 0)
    throw std::invalid_argument("lf must divide the carrier count");
  return ChipMapping{lt, lf, n_symbols, n_carriers, mode};
}

std::pair<int, int> chip_cell(const ChipMapping& map, int subset, int chip) {
  const int fg_count = map.freq_groups();
  const int tg = subset / fg_count;
  const int fg = subset % fg_count;
  int dt, df;
  if (map.mode == MappingMode::ZigzagTime) {
    dt = chip % map.lt;
    df = chip / map.lt;
  } else {
    dt = chip / map.lf;
    df = chip % map.lf;
  }
  return {tg * map.lt + dt, fg * map.lf + df};
}

void map_chips(std::span<const cplx> chips, const ChipMapping& map,
               ComplexFrame& frame) {
  const int L = map.chips_per_subset();
  const int subsets = map.subset_count();
  if (static_cast<int>(chips.size()) != subsets * L)
    throw std::invalid_argument("chip buffer size mismatch");
  if (frame.n_symbols != map.n_symbols || frame.n_carriers != map.n_carriers)
    throw std::invalid_argument("frame size mismatch");
  for (int s = 0; s < subsets; ++s) {
    for (int j = 0; j < L; ++j) {
      auto [t, f] = chip_cell(map, s, j);
      frame.at(t, f) = chips[static_cast<size_t>(s) * L + j];
    }
  }
}

void demap_chips(const ComplexFrame& frame, const ChipMapping& map,
                 std::span<cplx> chips) {
  const int L = map.chips_per_subset();
  const int subsets = map.subset_count();
  if (static_cast<int>(chips.size()) != subsets * L)
    throw std::invalid_argument("chip buffer size mismatch");
  if (frame.n_symbols != map.n_symbols || frame.n_carriers != map.n_carriers)
    throw std::invalid_argument("frame size mismatch");
  for (int s = 0; s < subsets; ++s) {
    for (int j = 0; j < L; ++j) {
      auto [t, f] = chip_cell(map, s, j);
      chips[static_cast<size_t>(s) * L + j] = frame.at(t, f);
    }
  }
}

}  // namespace splp
