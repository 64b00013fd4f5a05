// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include "core/estimator.hpp"
#include "core/rng.hpp"
#include "core/walsh.hpp"
#include "doctest.h"

using namespace splp;

namespace {

cplx qpsk(RngStream& rng) {
  const double s = 1.0 / std::sqrt(2.0);
  return {rng.bit() ? -s : s, rng.bit() ? -s : s};
}

SubsetPayload random_payload(RngStream& rng, int length, double boost) {
  SubsetPayload p;
  p.data.resize(length - 1);
  for (auto& v : p.data) v = qpsk(rng);
  p.pilot = {1.0, 0.0};
  p.boost = boost;
  return p;
}

// received chips for a per-chip channel response h_j, plus optional noise
std::vector<cplx> receive(const SubsetPayload& p, const SpreadingMatrix& m,
                          std::span<const cplx> h, double noise_var,
                          RngStream* noise_rng) {
  std::vector<cplx> chips = spread(p, m);
  for (int j = 0; j < m.size; ++j) {
    chips[j] *= h[j];
    if (noise_rng && noise_var > 0)
      chips[j] += noise_rng->cgaussian(noise_var);
  }
  return chips;
}

cplx mean_of(std::span<const cplx> h) {
  cplx s{0, 0};
  for (const cplx& v : h) s += v;
  return s / static_cast<double>(h.size());
}

}  // namespace

TEST_CASE("error-variance closed forms") {
  CHECK(estimator_si_variance(1.0, 64, 0.1) ==
        doctest::Approx(0.0984375).epsilon(1e-15));
  CHECK(estimator_noise_variance(4.0, 0.02) ==
        doctest::Approx(0.005).epsilon(1e-15));
  CHECK(theoretical_mse(2.0, 64, 0.1, 0.01) ==
        doctest::Approx(0.05421875).epsilon(1e-15));
  // amplifying the pilot by 4 cuts both error terms by 4
  CHECK(theoretical_mse(4.0, 32, 0.3, 0.07) ==
        doctest::Approx(theoretical_mse(1.0, 32, 0.3, 0.07) / 4.0)
            .epsilon(1e-15));
  // flat subset: only the noise term survives
  CHECK(estimator_si_variance(2.0, 16, 0.0) == 0.0);
  CHECK(theoretical_mse(2.0, 16, 0.0, 0.08) ==
        doctest::Approx(0.04).epsilon(1e-15));
}

TEST_CASE("flat subset is estimated exactly from any data") {
  const int L = 32;
  SpreadingMatrix m = make_spreading_matrix(L, 3);
  RngStream rng(41, 1);
  const cplx h{0.7, -1.2};
  std::vector<cplx> resp(L, h);
  for (int trial = 0; trial < 20; ++trial) {
    SubsetPayload p = random_payload(rng, L, 4.0);
    std::vector<cplx> chips = receive(p, m, resp, 0.0, nullptr);
    cplx est = estimate_subset(chips, m, p.pilot, p.boost);
    CHECK(std::abs(est - h) < 1e-13);
  }
}

TEST_CASE("code cross-talk power identity for a fixed response") {
  // With zero-mean deviation d_j across a subset, the per-sequence leak
  // w_i = sum_j c_p[j] c_i[j] d_j satisfies w_p = 0 and
  // sum_{i != p} |w_i|^2 = (1/L) sum_j |d_j|^2.
  const int L = 16, p = 5;
  SpreadingMatrix m = make_spreading_matrix(L, p);
  RngStream rng(41, 2);
  std::vector<cplx> h(L);
  for (auto& v : h) v = rng.cgaussian(1.0);
  const cplx hbar = mean_of(h);
  std::vector<cplx> dev(L);
  double dev_power = 0;
  for (int j = 0; j < L; ++j) {
    dev[j] = h[j] - hbar;
    dev_power += std::norm(dev[j]);
  }
  double leak = 0;
  for (int i = 0; i < L; ++i) {
    cplx w{0, 0};
    for (int j = 0; j < L; ++j) w += m.entry(p, j) * m.entry(i, j) * dev[j];
    if (i == p)
      CHECK(std::abs(w) < 1e-13);
    else
      leak += std::norm(w);
  }
  CHECK(leak == doctest::Approx(dev_power / L).epsilon(1e-12));
}

TEST_CASE("estimate is unbiased with cross-talk power var/boost") {
  const int L = 16;
  const double boost = 4.0;
  SpreadingMatrix m = make_spreading_matrix(L, 1);
  RngStream ch_rng(41, 3);
  std::vector<cplx> h(L);
  for (auto& v : h) v = ch_rng.cgaussian(1.0);
  const cplx hbar = mean_of(h);
  double dev_power = 0;
  for (const cplx& v : h) dev_power += std::norm(v - hbar);
  const double biased_var = dev_power / L;

  RngStream rng(41, 4);
  const int trials = 20000;
  cplx err_sum{0, 0};
  double err_sq = 0;
  for (int t = 0; t < trials; ++t) {
    SubsetPayload p = random_payload(rng, L, boost);
    std::vector<cplx> chips = receive(p, m, h, 0.0, nullptr);
    cplx e = estimate_subset(chips, m, p.pilot, p.boost) - hbar;
    err_sum += e;
    err_sq += std::norm(e);
  }
  const double mse = err_sq / trials;
  const double predicted = biased_var / boost;
  CHECK(std::abs(err_sum) / trials < 4.0 * std::sqrt(predicted / trials));
  CHECK(mse == doctest::Approx(predicted).epsilon(0.05));
}

TEST_CASE("noise-only error floor is noise over boost") {
  const int L = 32;
  const double boost = 2.0, noise_var = 0.05;
  SpreadingMatrix m = make_spreading_matrix(L, 0);
  std::vector<cplx> resp(L, cplx{1, 0});
  RngStream rng(41, 5);
  RngStream noise(41, 6);
  const int trials = 20000;
  cplx err_sum{0, 0};
  double err_sq = 0;
  for (int t = 0; t < trials; ++t) {
    SubsetPayload p = random_payload(rng, L, boost);
    std::vector<cplx> chips = receive(p, m, resp, noise_var, &noise);
    cplx e = estimate_subset(chips, m, p.pilot, p.boost) - cplx{1, 0};
    err_sum += e;
    err_sq += std::norm(e);
  }
  const double predicted = estimator_noise_variance(boost, noise_var);
  CHECK(err_sq / trials == doctest::Approx(predicted).epsilon(0.05));
  CHECK(std::abs(err_sum) / trials < 4.0 * std::sqrt(predicted / trials));
}

TEST_CASE("dispersive subsets redrawn per trial match the closed form") {
  const int L = 16;
  const double boost = 2.0, sigma_h_sq = 0.2, sigma_n_sq = 0.05;
  SpreadingMatrix m = make_spreading_matrix(L, 7);
  RngStream data_rng(41, 7), ch_rng(41, 8), noise_rng(41, 9);
  const cplx h0{1.0, 0.5};
  const int trials = 20000;
  double err_sq = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> h(L);
    for (auto& v : h) v = h0 + ch_rng.cgaussian(sigma_h_sq);
    SubsetPayload p = random_payload(data_rng, L, boost);
    std::vector<cplx> chips = receive(p, m, h, sigma_n_sq, &noise_rng);
    err_sq += std::norm(estimate_subset(chips, m, p.pilot, p.boost) -
                        mean_of(h));
  }
  const double predicted = theoretical_mse(boost, L, sigma_h_sq, sigma_n_sq);
  CHECK(err_sq / trials == doctest::Approx(predicted).epsilon(0.05));
}

TEST_CASE("zero-forcing equalization undoes a known flat gain") {
  const int L = 8;
  SpreadingMatrix m = make_spreading_matrix(L, 2);
  RngStream rng(41, 10);
  const cplx h{0.6, 0.8};
  std::vector<cplx> resp(L, h);
  SubsetPayload p = random_payload(rng, L, 2.0);
  std::vector<cplx> chips = receive(p, m, resp, 0.0, nullptr);
  const double sigma = 0.04;
  EqualizedSubset eq = equalize_subset(chips, m, h, Equalizer::Zf, sigma,
                                       1e-6);
  REQUIRE(eq.symbols.size() == static_cast<size_t>(L - 1));
  for (int i = 0; i < L - 1; ++i)
    CHECK(std::abs(eq.symbols[i] - p.data[i]) < 1e-12);
  CHECK(eq.gain.gain == cplx{1.0, 0.0});
  CHECK(eq.gain.noise_var == doctest::Approx(sigma / std::norm(h)).epsilon(1e-12));
  CHECK(!eq.gain.erasure);
}

TEST_CASE("mmse equalization shrinks toward zero and reports its bias") {
  const int L = 8;
  SpreadingMatrix m = make_spreading_matrix(L, 0);
  std::vector<cplx> y(L);
  RngStream rng(41, 11);
  for (auto& v : y) v = rng.cgaussian(1.0);
  const cplx h{1.1, -0.3};
  const double sigma = 0.25;
  EqualizedSubset mmse = equalize_from_despread(y, m, h, Equalizer::Mmse,
                                                sigma, 1e-6);
  const double h2 = std::norm(h);
  const double denom = h2 + sigma;
  CHECK(mmse.gain.gain.real() == doctest::Approx(h2 / denom).epsilon(1e-12));
  CHECK(mmse.gain.gain.imag() == 0.0);
  CHECK(mmse.gain.noise_var ==
        doctest::Approx(h2 * sigma / (denom * denom)).epsilon(1e-12));
  size_t k = 0;
  for (int i = 0; i < L; ++i) {
    if (i == m.pilot_index) continue;
    cplx expect = y[i] * std::conj(h) / denom;
    CHECK(std::abs(mmse.symbols[k++] - expect) < 1e-12);
  }

  // vanishing noise: mmse coincides with zf
  EqualizedSubset m0 = equalize_from_despread(y, m, h, Equalizer::Mmse, 0.0,
                                              1e-6);
  EqualizedSubset z0 = equalize_from_despread(y, m, h, Equalizer::Zf, 0.0,
                                              1e-6);
  for (size_t i = 0; i < m0.symbols.size(); ++i)
    CHECK(std::abs(m0.symbols[i] - z0.symbols[i]) < 1e-12);
}

TEST_CASE("a vanishing estimate flags an erasure") {
  const int L = 8;
  SpreadingMatrix m = make_spreading_matrix(L, 0);
  std::vector<cplx> y(L, cplx{1, 1});
  EqualizedSubset eq = equalize_from_despread(y, m, cplx{1e-9, 0},
                                              Equalizer::Zf, 0.1, 1e-6);
  CHECK(eq.gain.erasure);
  CHECK(eq.gain.gain == cplx{0.0, 0.0});
  for (const cplx& v : eq.symbols) CHECK(v == cplx{0.0, 0.0});
}

TEST_CASE("predicted cross-talk inflates the reported noise power") {
  const int L = 16;
  SpreadingMatrix m = make_spreading_matrix(L, 0);
  std::vector<cplx> y(L, cplx{1, 0});
  const cplx h{1.0, 0.0};
  const double sigma = 0.02, sig_h = 0.3, boost = 2.0;
  EqualizedSubset eq = equalize_from_despread(y, m, h, Equalizer::Zf, sigma,
                                              1e-6, sig_h, boost);
  const double expected = sigma + estimator_si_variance(boost, L, sig_h);
  CHECK(eq.gain.noise_var == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("estimator input validation") {
  SpreadingMatrix m = make_spreading_matrix(8, 0);
  std::vector<cplx> short_y(4);
  CHECK_THROWS_AS(estimate_from_despread(short_y, m, cplx{1, 0}, 1.0),
                  std::invalid_argument);
  std::vector<cplx> y(8);
  CHECK_THROWS_AS(estimate_from_despread(y, m, cplx{0, 0}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      equalize_from_despread(short_y, m, cplx{1, 0}, Equalizer::Zf, 0.1, 1e-6),
      std::invalid_argument);
}
