// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace splp {

double estimator_si_variance(double boost, int length, double sigma_h_sq) {
  const double lf = static_cast<double>(length);
  return (1.0 / boost) * ((lf - 1.0) / lf) * sigma_h_sq;
}

double estimator_noise_variance(double boost, double sigma_n_sq) {
  return sigma_n_sq / boost;
}

double theoretical_mse(double boost, int length, double sigma_h_sq,
                       double sigma_n_sq) {
  return estimator_si_variance(boost, length, sigma_h_sq) +
         estimator_noise_variance(boost, sigma_n_sq);
}

cplx estimate_from_despread(std::span<const cplx> despread,
                            const SpreadingMatrix& m, cplx pilot_symbol,
                            double boost) {
  if (static_cast<int>(despread.size()) != m.size)
    throw std::invalid_argument("despread length mismatch");
  const cplx scaled_pilot = std::sqrt(boost) * pilot_symbol;
  if (std::norm(scaled_pilot) == 0.0)
    throw std::invalid_argument("pilot symbol must be non-zero");
  return despread[m.pilot_index] / scaled_pilot;
}

cplx estimate_subset(std::span<const cplx> chips, const SpreadingMatrix& m,
                     cplx pilot_symbol, double boost) {
  std::vector<cplx> y = despread_all(chips);
  return estimate_from_despread(y, m, pilot_symbol, boost);
}

EqualizedSubset equalize_from_despread(std::span<const cplx> despread,
                                       const SpreadingMatrix& m, cplx h_hat,
                                       Equalizer eq, double sigma_n_sq,
                                       double erasure_epsilon,
                                       double si_sigma_h_sq, double boost) {
  if (static_cast<int>(despread.size()) != m.size)
    throw std::invalid_argument("despread length mismatch");
  EqualizedSubset out;
  out.symbols.reserve(m.size - 1);

  double sigma_eff = sigma_n_sq;
  if (si_sigma_h_sq > 0)
    sigma_eff += estimator_si_variance(boost, m.size, si_sigma_h_sq);

  const double h2 = std::norm(h_hat);
  if (std::abs(h_hat) < erasure_epsilon) {
    out.gain.gain = {0.0, 0.0};
    out.gain.noise_var = sigma_eff;
    out.gain.erasure = true;
    for (int i = 0; i < m.size; ++i)
      if (i != m.pilot_index) out.symbols.push_back(cplx{0, 0});
    return out;
  }

  if (eq == Equalizer::Zf) {
    const cplx inv = 1.0 / h_hat;
    for (int i = 0; i < m.size; ++i)
      if (i != m.pilot_index) out.symbols.push_back(despread[i] * inv);
    out.gain.gain = {1.0, 0.0};
    out.gain.noise_var = sigma_eff / h2;
  } else {
    const double denom = h2 + sigma_eff;
    const cplx w = std::conj(h_hat) / denom;
    for (int i = 0; i < m.size; ++i)
      if (i != m.pilot_index) out.symbols.push_back(despread[i] * w);
    out.gain.gain = {h2 / denom, 0.0};
    out.gain.noise_var = h2 * sigma_eff / (denom * denom);
  }
  return out;
}

EqualizedSubset equalize_subset(std::span<const cplx> chips,
                                const SpreadingMatrix& m, cplx h_hat,
                                Equalizer eq, double sigma_n_sq,
                                double erasure_epsilon, double si_sigma_h_sq,
                                double boost) {
  std::vector<cplx> y = despread_all(chips);
  return equalize_from_despread(y, m, h_hat, eq, sigma_n_sq, erasure_epsilon,
                                si_sigma_h_sq, boost);
}

}  // namespace splp
