// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
//
// splpsim: command-line front end for the link simulator. Talks to the
// library exclusively through the public C interface.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "splp/splp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitUnreliable = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  std::vector<std::string> sets;
  // frequently used overrides, applied after --set
  std::string seed, workers, lt, lf, boost, channel, rate, qam;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "configuration file to load");
  sub->add_option("--out-dir", o.out_dir, "directory for result files");
  sub->add_option("--format", o.format, "csv or svg (svg also writes csv)")
      ->check(CLI::IsMember({"csv", "svg"}));
  sub->add_option("--set", o.sets, "extra key=value override (repeatable)");
  sub->add_option("--seed", o.seed, "master random seed");
  sub->add_option("--workers", o.workers, "worker thread count");
  sub->add_option("--lt", o.lt, "time spreading factor");
  sub->add_option("--lf", o.lf, "frequency spreading factor");
  sub->add_option("--boost", o.boost, "pilot power boost");
  sub->add_option("--channel", o.channel, "flat, f1, p1 or custom");
  sub->add_option("--rate", o.rate, "code rate: uncoded, 1/2, 3/4, 5/6");
  sub->add_option("--qam", o.qam, "constellation: 16 or 64");
}

int report_error(const char* what) {
  std::fprintf(stderr, "splpsim: %s: %s\n", what, splp_last_error());
  return kExitFailure;
}

int apply_overrides(splp_config* cfg, const CommonOpts& o) {
  if (!o.config_path.empty()) {
    if (splp_config_load_file(cfg, o.config_path.c_str()) != SPLP_OK) {
      std::fprintf(stderr, "splpsim: %s\n", splp_last_error());
      return kExitConfig;
    }
  }
  auto set = [&](const char* key, const std::string& value) {
    if (value.empty()) return kExitOk;
    if (splp_config_set(cfg, key, value.c_str()) != SPLP_OK) {
      std::fprintf(stderr, "splpsim: %s\n", splp_last_error());
      return kExitConfig;
    }
    return kExitOk;
  };
  for (const std::string& kv : o.sets) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "splpsim: --set expects key=value, got '%s'\n",
                   kv.c_str());
      return kExitConfig;
    }
    if (set(kv.substr(0, eq).c_str(), kv.substr(eq + 1)) != kExitOk)
      return kExitConfig;
  }
  if (set("master_seed", o.seed) != kExitOk) return kExitConfig;
  if (set("workers", o.workers) != kExitOk) return kExitConfig;
  if (set("lt", o.lt) != kExitOk) return kExitConfig;
  if (set("lf", o.lf) != kExitOk) return kExitConfig;
  if (set("boost", o.boost) != kExitOk) return kExitConfig;
  if (set("channel", o.channel) != kExitOk) return kExitConfig;
  if (set("code_rate", o.rate) != kExitOk) return kExitConfig;
  if (!o.qam.empty()) {
    std::string c = o.qam == "16" ? "16qam" : o.qam == "64" ? "64qam" : o.qam;
    if (set("constellation", c) != kExitOk) return kExitConfig;
  }
  if (splp_config_validate(cfg) != SPLP_OK) {
    std::fprintf(stderr, "splpsim: invalid configuration: %s\n",
                 splp_last_error());
    return kExitConfig;
  }
  return kExitOk;
}

struct SvgAxes {
  const char* x;
  const char* y;
  const char* curve;
  bool log_y;
};

bool svg_axes_for(const std::string& experiment, SvgAxes* axes) {
  if (experiment == "mse") {
    *axes = {"snr_db", "mse_emp", "lf", true};
    return true;
  }
  if (experiment == "variance") {
    *axes = {"lf", "weighted_variance", "", true};
    return true;
  }
  if (experiment == "ber") {
    *axes = {"ebn0_db", "ber", "", true};
    return true;
  }
  if (experiment == "boost-sweep") {
    *axes = {"boost", "ber", "", true};
    return true;
  }
  return false;
}

int run_experiment_command(const std::string& experiment, const CommonOpts& o) {
  splp_config* cfg = splp_config_create();
  if (!cfg) {
    std::fprintf(stderr, "splpsim: out of memory\n");
    return kExitFailure;
  }
  int rc = apply_overrides(cfg, o);
  if (rc != kExitOk) {
    splp_config_destroy(cfg);
    return rc;
  }

  splp_report* rep = nullptr;
  int status = splp_run(cfg, experiment.c_str(), &rep);
  splp_config_destroy(cfg);
  if (status == SPLP_ERR_CONFIG) {
    std::fprintf(stderr, "splpsim: %s\n", splp_last_error());
    return kExitConfig;
  }
  if (status != SPLP_OK) return report_error("run failed");

  const std::string csv_path = o.out_dir + "/" + experiment + ".csv";
  if (splp_report_write_csv(rep, csv_path.c_str()) != SPLP_OK) {
    splp_report_destroy(rep);
    return report_error("csv write failed");
  }
  std::printf("wrote %s (%d rows)\n", csv_path.c_str(),
              splp_report_num_rows(rep));

  if (o.format == "svg") {
    SvgAxes axes;
    if (svg_axes_for(experiment, &axes)) {
      const std::string svg_path = o.out_dir + "/" + experiment + ".svg";
      if (splp_report_write_svg(rep, svg_path.c_str(), axes.x, axes.y,
                                axes.curve, axes.log_y) != SPLP_OK) {
        splp_report_destroy(rep);
        return report_error("svg write failed");
      }
      std::printf("wrote %s\n", svg_path.c_str());
    } else {
      std::printf("note: no plot defined for '%s'\n", experiment.c_str());
    }
  }

  char buf[128];
  if (splp_report_meta(rep, "best_boost", buf, sizeof buf) == SPLP_OK)
    std::printf("best boost: %s\n", buf);

  int unreliable = splp_report_has_unreliable(rep);
  splp_report_destroy(rep);
  if (unreliable == 1) {
    std::fprintf(stderr,
                 "splpsim: warning: some points hit the trial cap with too "
                 "few errors; estimates may be unreliable\n");
    return kExitUnreliable;
  }
  return kExitOk;
}

int run_bitrate_command(const CommonOpts& o, bool table) {
  splp_config* cfg = splp_config_create();
  if (!cfg) {
    std::fprintf(stderr, "splpsim: out of memory\n");
    return kExitFailure;
  }
  int rc = apply_overrides(cfg, o);
  if (rc != kExitOk) {
    splp_config_destroy(cfg);
    return rc;
  }

  if (!table) {
    double mbps = 0;
    if (splp_useful_bitrate(cfg, &mbps) != SPLP_OK) {
      splp_config_destroy(cfg);
      std::fprintf(stderr, "splpsim: %s\n", splp_last_error());
      return kExitConfig;
    }
    std::printf("useful bitrate: %.4f Mbit/s\n", mbps);
    splp_config_destroy(cfg);
    return kExitOk;
  }

  splp_report* rep = nullptr;
  int status = splp_run(cfg, "bitrate", &rep);
  splp_config_destroy(cfg);
  if (status != SPLP_OK) {
    std::fprintf(stderr, "splpsim: %s\n", splp_last_error());
    return status == SPLP_ERR_CONFIG ? kExitConfig : kExitFailure;
  }
  const std::string csv_path = o.out_dir + "/bitrate.csv";
  if (splp_report_write_csv(rep, csv_path.c_str()) != SPLP_OK) {
    splp_report_destroy(rep);
    return report_error("csv write failed");
  }
  std::printf("%-10s %-6s %-6s %-4s %-4s %s\n", "system", "qam", "rate", "lt",
              "lf", "Mbit/s");
  int rows = splp_report_num_rows(rep);
  for (int r = 0; r < rows; ++r) {
    double baseline, qam_bits, rn, rd, lt, lf, mbps;
    splp_report_value(rep, r, 0, &baseline);
    splp_report_value(rep, r, 1, &qam_bits);
    splp_report_value(rep, r, 2, &rn);
    splp_report_value(rep, r, 3, &rd);
    splp_report_value(rep, r, 4, &lt);
    splp_report_value(rep, r, 5, &lf);
    splp_report_value(rep, r, 6, &mbps);
    char rate[16], lt_s[16], lf_s[16];
    std::snprintf(rate, sizeof rate, "%d/%d", (int)rn, (int)rd);
    if (baseline != 0.0) {
      std::snprintf(lt_s, sizeof lt_s, "-");
      std::snprintf(lf_s, sizeof lf_s, "-");
    } else {
      std::snprintf(lt_s, sizeof lt_s, "%d", (int)lt);
      std::snprintf(lf_s, sizeof lf_s, "%d", (int)lf);
    }
    std::printf("%-10s %-6d %-6s %-4s %-4s %.2f\n",
                baseline != 0.0 ? "classical" : "spread",
                (int)(1 << (int)qam_bits), rate, lt_s, lf_s, mbps);
  }
  std::printf("wrote %s\n", csv_path.c_str());
  splp_report_destroy(rep);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"link-level simulator for spread-pilot precoded OFDM"};
  app.require_subcommand(1);

  CommonOpts mse_opts, var_opts, ber_opts, sweep_opts, rate_opts;
  CLI::App* mse = app.add_subcommand("mse", "pilot estimation MSE vs SNR");
  add_common(mse, mse_opts);
  CLI::App* var = app.add_subcommand(
      "variance", "per-subset channel variance vs frequency span");
  add_common(var, var_opts);
  CLI::App* ber = app.add_subcommand("ber", "coded BER vs Eb/N0");
  add_common(ber, ber_opts);
  CLI::App* sweep =
      app.add_subcommand("boost-sweep", "coded BER vs pilot boost");
  add_common(sweep, sweep_opts);
  bool table = false;
  CLI::App* rate = app.add_subcommand("bitrate", "net useful bitrate");
  add_common(rate, rate_opts);
  rate->add_flag("--table", table, "print the standard preset table");

  CLI11_PARSE(app, argc, argv);

  if (mse->parsed()) return run_experiment_command("mse", mse_opts);
  if (var->parsed()) return run_experiment_command("variance", var_opts);
  if (ber->parsed()) return run_experiment_command("ber", ber_opts);
  if (sweep->parsed()) return run_experiment_command("boost-sweep", sweep_opts);
  if (rate->parsed()) return run_bitrate_command(rate_opts, table);
  return kExitFailure;
}
