// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "core/bitrate.hpp"
#include "core/chain.hpp"
#include "core/experiment.hpp"
#include "core/report.hpp"
#include "doctest.h"

using namespace splp;

namespace {

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// exact AWGN bit error rate of Gray 16-QAM at symbol SNR Es/N0
double qam16_ber(double es_over_n0) {
  const double a = std::sqrt(es_over_n0 / 5.0);
  return (3.0 * q_func(a) + 2.0 * q_func(3.0 * a) - q_func(5.0 * a)) / 4.0;
}

LinkConfig quick_cfg() {
  LinkConfig cfg = default_config();
  cfg.mse_trials = 2000;
  cfg.ber_target_errors = 50;
  cfg.ber_min_errors_reliable = 10;
  cfg.ber_max_info_bits = 400000;
  return cfg;
}

}  // namespace

TEST_CASE("context capacity bookkeeping") {
  LinkConfig cfg = default_config();
  LinkContext ctx = make_link_context(cfg);
  CHECK(ctx.L == 64);
  CHECK(ctx.mapping.subset_count() == 1728);
  CHECK(ctx.n_data_cells == 1728 * 63);
  CHECK(ctx.capacity_bits == 435456);
  CHECK(ctx.budget.info_bits == 326586);
  CHECK(ctx.budget.coded_bits == 435456);
  CHECK(ctx.budget.pad_bits == 0);

  cfg.baseline_mode = true;
  LinkContext base = make_link_context(cfg);
  CHECK(base.n_data_cells == 64 * 1512);
  CHECK(base.capacity_bits == 387072);
  CHECK(base.budget.info_bits == 290298);
  REQUIRE(base.baseline_carriers.size() == 1512);
  CHECK(base.baseline_carriers.front() == 0);
  CHECK(base.baseline_carriers.back() < 1728);
  for (size_t i = 1; i < base.baseline_carriers.size(); ++i)
    CHECK(base.baseline_carriers[i] > base.baseline_carriers[i - 1]);

  LinkConfig bad = default_config();
  bad.lt = 5;
  CHECK_THROWS_AS(make_link_context(bad), ConfigError);
}

TEST_CASE("subset means conserve the total response") {
  LinkConfig cfg = default_config();
  cfg.channel_id = ChannelId::F1;
  LinkContext ctx = make_link_context(cfg);
  std::vector<cplx> means = subset_means(ctx, ctx.fixed_chan);
  REQUIRE(static_cast<int>(means.size()) == ctx.mapping.subset_count());
  cplx subset_total{0, 0};
  for (const cplx& m : means) subset_total += m * static_cast<double>(ctx.L);
  cplx cell_total{0, 0};
  for (const cplx& h : ctx.fixed_chan.h)
    cell_total += h * static_cast<double>(cfg.n_symbols);
  CHECK(std::abs(subset_total - cell_total) <
        1e-6 * std::max(1.0, std::abs(cell_total)));

  cfg.channel_id = ChannelId::Flat;
  LinkContext flat = make_link_context(cfg);
  for (const cplx& m : subset_means(flat, flat.fixed_chan))
    CHECK(std::abs(m - cplx{1, 0}) < 1e-13);
}

TEST_CASE("uncoded error rate on a clean channel matches the closed form") {
  LinkConfig cfg = default_config();
  cfg.channel_id = ChannelId::Flat;
  cfg.code_rate = CodeRate::Uncoded;
  cfg.perfect_csi = true;
  cfg.accounting = Accounting::None;
  cfg.boost = 1.0;
  LinkContext ctx = make_link_context(cfg);

  const double ebn0 = db_to_lin(6.0);
  const double noise_var = noise_var_for_ebn0(cfg, ebn0);
  CHECK(noise_var == doctest::Approx(1.0 / (4.0 * ebn0)).epsilon(1e-12));

  RngStream data(1, 100), noise(1, 101);
  FrameResult r = run_ber_frame(ctx, noise_var, data, noise, nullptr);
  CHECK(r.info_bits == 435456);
  const double expected = qam16_ber(4.0 * ebn0);  // Es/N0 = m * Eb/N0
  const double ber = static_cast<double>(r.bit_errors) / r.info_bits;
  const double sd = std::sqrt(expected * (1 - expected) /
                              static_cast<double>(r.info_bits));
  CHECK(std::abs(ber - expected) < 4.0 * sd);
}

TEST_CASE("coded chain is error-free when nearly noiseless") {
  LinkConfig cfg = default_config();
  LinkContext ctx = make_link_context(cfg);
  RngStream data(1, 102), noise(1, 103);
  FrameResult r = run_ber_frame(ctx, 1e-6, data, noise, nullptr);
  CHECK(r.info_bits == 326586);
  CHECK(r.bit_errors == 0);

  cfg.baseline_mode = true;
  LinkContext base = make_link_context(cfg);
  RngStream d2(1, 104), n2(1, 105);
  FrameResult rb = run_ber_frame(base, 1e-6, d2, n2, nullptr);
  CHECK(rb.info_bits == 290298);
  CHECK(rb.bit_errors == 0);
}

TEST_CASE("receiver flags run end to end") {
  LinkConfig cfg = default_config();
  const double noise_var = 0.02;
  {
    cfg.oracle_mode = true;
    LinkContext ctx = make_link_context(cfg);
    RngStream data(1, 106), noise(1, 107);
    FrameResult r = run_ber_frame(ctx, noise_var, data, noise, nullptr);
    CHECK(r.info_bits == 326586);
    cfg.oracle_mode = false;
  }
  {
    cfg.equalizer = Equalizer::Mmse;
    LinkContext ctx = make_link_context(cfg);
    RngStream data(1, 108), noise(1, 109);
    FrameResult r = run_ber_frame(ctx, noise_var, data, noise, nullptr);
    CHECK(r.info_bits == 326586);
    cfg.equalizer = Equalizer::Zf;
  }
  {
    cfg.rerandomize_channel = true;
    LinkContext ctx = make_link_context(cfg);
    RngStream data(1, 110), noise(1, 111), chan(1, 112);
    FrameResult r = run_ber_frame(ctx, noise_var, data, noise, &chan);
    CHECK(r.info_bits == 326586);
  }
}

TEST_CASE("sample-domain propagation reproduces per-carrier statistics") {
  // tap delays already on the sample grid, so both paths see one response
  const std::string path = "/tmp/splp_grid.taps";
  {
    std::ofstream out(path);
    out << "0.8 0.0 0.3\n0.6 1.53125 2.1\n";  // 14 samples at 8 MHz
  }
  LinkConfig cfg = default_config();
  cfg.channel_id = ChannelId::Custom;
  cfg.channel_file = path;
  cfg.lf = 8;
  cfg.lt = 8;

  cfg.time_domain = false;
  LinkContext freq_ctx = make_link_context(cfg);
  cfg.time_domain = true;
  LinkContext time_ctx = make_link_context(cfg);

  RngStream d1(1, 113), n1(1, 114);
  MseFrameResult a = run_mse_frame(freq_ctx, 0.0, d1, n1, nullptr);
  RngStream d2(1, 113), n2(1, 114);
  MseFrameResult b = run_mse_frame(time_ctx, 0.0, d2, n2, nullptr);
  REQUIRE(a.trials == b.trials);
  CHECK(a.sum_sq_error > 0);  // dispersive: the floor is real
  CHECK(std::abs(a.sum_sq_error - b.sum_sq_error) <=
        1e-8 * std::max(1.0, a.sum_sq_error));
  CHECK(std::abs(a.sum_pred - b.sum_pred) <= 1e-8 * a.sum_pred);
  std::remove(path.c_str());
}

TEST_CASE("estimation error experiment is deterministic and self-predicting") {
  LinkConfig cfg = quick_cfg();
  cfg.lf_sweep = {2, 8};
  cfg.snr_grid_db = {15, 40};
  Report a = run_mse_experiment(cfg);
  Report b = run_mse_experiment(cfg);
  CHECK(report_to_csv(a) == report_to_csv(b));
  REQUIRE(a.rows.size() == 4);
  const int c_mse = a.column_index("mse_emp");
  const int c_pred = a.column_index("mse_pred");
  const int c_trials = a.column_index("trials");
  for (const auto& row : a.rows) {
    CHECK(row[c_trials] >= 2000);
    CHECK(row[c_mse] == doctest::Approx(row[c_pred]).epsilon(0.25));
  }
}

TEST_CASE("worker count changes nothing but the wall clock") {
  LinkConfig cfg = quick_cfg();
  cfg.lf_sweep = {2};
  cfg.snr_grid_db = {20};
  cfg.workers = 1;
  Report a = run_mse_experiment(cfg);
  cfg.workers = 3;
  Report b = run_mse_experiment(cfg);
  CHECK(report_to_csv(a) == report_to_csv(b));

  LinkConfig bcfg = quick_cfg();
  bcfg.ebn0_grid_db = {4.0};
  bcfg.ber_max_info_bits = 700000;
  bcfg.workers = 1;
  Report c = run_ber_experiment(bcfg);
  bcfg.workers = 3;
  Report d = run_ber_experiment(bcfg);
  CHECK(report_to_csv(c) == report_to_csv(d));
}

TEST_CASE("subset variance table predicts a rising floor") {
  LinkConfig cfg = default_config();
  Report rep = run_weighted_variance_experiment(cfg);
  REQUIRE(rep.rows.size() == cfg.lf_sweep.size());
  const int c_lf = rep.column_index("lf");
  const int c_sig = rep.column_index("sigma_h_sq");
  const int c_w = rep.column_index("weighted_variance");
  REQUIRE(c_lf >= 0);
  REQUIRE(c_sig >= 0);
  REQUIRE(c_w >= 0);
  const double L = 64;
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    CHECK(row[c_w] == doctest::Approx((L - 1) / L * row[c_sig]).epsilon(1e-12));
    if (i > 0) {
      CHECK(rep.rows[i][c_lf] > rep.rows[i - 1][c_lf]);
      CHECK(rep.rows[i][c_w] >= rep.rows[i - 1][c_w]);
    }
  }
  CHECK(rep.rows.front()[c_lf] == 1);
  CHECK(rep.rows.front()[c_w] < 1e-24);  // single-carrier subsets are flat
  CHECK(rep.rows.back()[c_w] > 1e-6);
}

TEST_CASE("boost sweep marks exactly one winner") {
  LinkConfig cfg = quick_cfg();
  cfg.boost_grid = {1, 4};
  cfg.ebn0_grid_db = {8};
  Report rep = run_boost_sweep(cfg);
  REQUIRE(rep.rows.size() == 2);
  const int c_best = rep.column_index("is_best");
  const int c_boost = rep.column_index("boost");
  REQUIRE(c_best >= 0);
  int winners = 0;
  double winner_boost = -1;
  for (const auto& row : rep.rows) {
    if (row[c_best] == 1.0) {
      ++winners;
      winner_boost = row[c_boost];
    }
  }
  CHECK(winners == 1);
  const std::string* best = rep.find_meta("best_boost");
  REQUIRE(best != nullptr);
  CHECK(*best == format_double(winner_boost));
}

TEST_CASE("clean points are flagged unreliable when starved of errors") {
  LinkConfig cfg = quick_cfg();
  cfg.ebn0_grid_db = {20.0};
  cfg.ber_max_info_bits = 326586;  // one frame, zero errors expected
  Report rep = run_ber_experiment(cfg);
  REQUIRE(rep.rows.size() == 1);
  CHECK(report_has_unreliable(rep));
  CHECK(rep.rows[0][rep.column_index("bit_errors")] == 0.0);
}

TEST_CASE("experiment dispatch and common metadata") {
  LinkConfig cfg = default_config();
  Report rep = run_experiment(cfg, "bitrate");
  REQUIRE(rep.rows.size() == 8);
  REQUIRE(rep.find_meta("experiment") != nullptr);
  CHECK(*rep.find_meta("experiment") == "bitrate");
  CHECK_THROWS_AS(run_experiment(cfg, "nope"), ConfigError);

  Report var = run_experiment(cfg, "variance");
  REQUIRE(var.find_meta("channel") != nullptr);
  REQUIRE(var.find_meta("channel_hash") != nullptr);
  CHECK(var.find_meta("channel_hash")->size() == 16);
  REQUIRE(var.find_meta("config") != nullptr);
  CHECK(var.find_meta("config")->find("workers") == std::string::npos);
}

TEST_CASE("frame interleaver is a seeded bijection and stays transparent") {
  LinkConfig cfg = default_config();
  cfg.interleaver = Interleaver::Random;
  LinkContext ctx = make_link_context(cfg);
  REQUIRE(ctx.interleave_map.size() == ctx.budget.coded_bits);
  std::vector<std::uint32_t> sorted = ctx.interleave_map;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i)
    REQUIRE(sorted[i] == static_cast<std::uint32_t>(i));

  LinkConfig other = cfg;
  other.master_seed = cfg.master_seed + 1;
  CHECK(make_link_context(other).interleave_map != ctx.interleave_map);

  cfg.code_rate = CodeRate::Uncoded;
  CHECK(make_link_context(cfg).interleave_map.empty());

  // noiseless coded frames decode exactly through the permutation
  for (bool baseline : {false, true}) {
    LinkConfig link = default_config();
    link.interleaver = Interleaver::Random;
    link.channel_id = ChannelId::Flat;
    link.baseline_mode = baseline;
    LinkContext c = make_link_context(link);
    RngStream data(7, 1), noise(7, 2);
    FrameResult r = run_ber_frame(c, 0.0, data, noise, nullptr);
    CHECK(r.info_bits == c.budget.info_bits);
    CHECK(r.bit_errors == 0);
  }
}
