// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/rng.hpp"

#include <cmath>
#include <numbers>

namespace splp {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t sid) {
  std::uint64_t s = master_seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ (sid * 0xD6E8FEB86659FD93ull + 0xCA5A826395121157ull);
  std::uint64_t b = splitmix64(s);
  eng_.seed(b);
}

std::uint64_t RngStream::raw() { return eng_(); }

int RngStream::bit() {
  if (bits_left_ == 0) {
    bit_cache_ = raw();
    bits_left_ = 64;
  }
  int b = static_cast<int>(bit_cache_ & 1u);
  bit_cache_ >>= 1;
  --bits_left_;
  return b;
}

double RngStream::uniform() {
  return static_cast<double>(raw() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

cplx RngStream::cgaussian(double total_variance) {
  double s = std::sqrt(total_variance / 2.0);
  double re = gaussian();
  double im = gaussian();
  return {s * re, s * im};
}

std::uint64_t stream_id(unsigned experiment, unsigned point,
                        std::uint64_t block, RngRole role) {
  return (static_cast<std::uint64_t>(experiment & 0xFu) << 44) |
         (static_cast<std::uint64_t>(point & 0xFFFFu) << 28) |
         ((block & 0xFFFFFFull) << 4) |
         static_cast<std::uint64_t>(role);
}

}  // namespace splp
