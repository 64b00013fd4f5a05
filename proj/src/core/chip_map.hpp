// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace splp {

// Tiling of the frame into Lt x Lf rectangles. Tiles enumerate
// frequency-major within each time group: all tiles of the first Lt symbols
// first, then the next Lt symbols, and so on. Within a tile, zigzag_time
// walks chips down the time axis first; zigzag_freq walks frequency first.
struct ChipMapping {
  int lt = 1;
  int lf = 1;
  int n_symbols = 0;
  int n_carriers = 0;
  MappingMode mode = MappingMode::ZigzagTime;

  int chips_per_subset() const { return lt * lf; }
  int freq_groups() const { return n_carriers / lf; }
  int time_groups() const { return n_symbols / lt; }
  int subset_count() const { return freq_groups() * time_groups(); }
};

ChipMapping make_chip_mapping(int lt, int lf, int n_symbols, int n_carriers,
                              MappingMode mode);

// (symbol, carrier) cell of chip j of the given subset
std::pair<int, int> chip_cell(const ChipMapping& map, int subset, int chip);

// chips laid out subset-major (subset * L + chip) <-> frame cells
void map_chips(std::span<const cplx> chips, const ChipMapping& map,
               ComplexFrame& frame);
void demap_chips(const ComplexFrame& frame, const ChipMapping& map,
                 std::span<cplx> chips);

}  // namespace splp
