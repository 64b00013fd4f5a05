// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "core/types.hpp"

namespace splp {

// Independent deterministic stream: (master_seed, stream_id) fully determines
// the sequence, so any worker can recreate any stream without coordination.
// Gaussians come from an in-repo Box-Muller rather than std::distributions,
// whose output is implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t raw();
  int bit();
  double uniform();  // [0, 1)
  double gaussian(); // standard normal
  // CN(0, total_variance): each component N(0, total_variance / 2)
  cplx cgaussian(double total_variance);

 private:
  std::mt19937_64 eng_;
  std::uint64_t bit_cache_ = 0;
  int bits_left_ = 0;
  double spare_ = 0;
  bool have_spare_ = false;
};

enum class RngRole : unsigned { Data = 1, Noise = 2, Channel = 3, Misc = 4 };

// Stream-id layout: | experiment:4 | point:16 | block:24 | role:4 |
// keeps every (experiment, grid point, Monte Carlo block, purpose)
// combination on a distinct stream.
std::uint64_t stream_id(unsigned experiment, unsigned point,
                        std::uint64_t block, RngRole role);

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace splp
