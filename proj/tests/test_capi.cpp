// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "splp/splp.h"

namespace {

std::string slurp(const char* path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file ", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("version and error state") {
  REQUIRE(splp_version() != nullptr);
  CHECK(std::strcmp(splp_version(), "0.1.0") == 0);
  CHECK(splp_last_error() != nullptr);
}

TEST_CASE("config lifecycle, set/get, validate") {
  splp_config* cfg = splp_config_create();
  REQUIRE(cfg != nullptr);

  char buf[128];
  REQUIRE(splp_config_get(cfg, "lt", buf, sizeof buf) == SPLP_OK);
  CHECK(std::strcmp(buf, "32") == 0);

  CHECK(splp_config_set(cfg, "lt", "16") == SPLP_OK);
  REQUIRE(splp_config_get(cfg, "lt", buf, sizeof buf) == SPLP_OK);
  CHECK(std::strcmp(buf, "16") == 0);

  CHECK(splp_config_set(cfg, "no_such_key", "1") == SPLP_ERR_CONFIG);
  CHECK(std::strlen(splp_last_error()) > 0);
  CHECK(splp_config_set(cfg, "lt", "banana") == SPLP_ERR_CONFIG);

  CHECK(splp_config_validate(cfg) == SPLP_OK);
  CHECK(splp_config_set(cfg, "lt", "5") == SPLP_OK);
  CHECK(splp_config_validate(cfg) == SPLP_ERR_CONFIG);
  CHECK(std::strstr(splp_last_error(), "lt") != nullptr);

  // too-small output buffer reports the needed size
  CHECK(splp_config_set(cfg, "lt", "32") == SPLP_OK);
  char tiny[2];
  CHECK(splp_config_get(cfg, "snr_grid_db", tiny, sizeof tiny) ==
        SPLP_ERR_CONFIG);

  splp_config_destroy(cfg);
  splp_config_destroy(nullptr);  // must be a no-op
}

TEST_CASE("config file round trip through the C surface") {
  splp_config* cfg = splp_config_create();
  REQUIRE(cfg != nullptr);
  CHECK(splp_config_set(cfg, "lf", "4") == SPLP_OK);
  CHECK(splp_config_set(cfg, "lt", "16") == SPLP_OK);

  const char* path = "/tmp/splp_capi_cfg.txt";
  REQUIRE(splp_config_write_file(cfg, path) == SPLP_OK);

  splp_config* loaded = splp_config_create();
  REQUIRE(splp_config_load_file(loaded, path) == SPLP_OK);
  char a[64], b[64];
  REQUIRE(splp_config_get(cfg, "lf", a, sizeof a) == SPLP_OK);
  REQUIRE(splp_config_get(loaded, "lf", b, sizeof b) == SPLP_OK);
  CHECK(std::strcmp(a, b) == 0);

  // canonical serialization: writing the loaded config is byte-identical
  const char* path2 = "/tmp/splp_capi_cfg2.txt";
  REQUIRE(splp_config_write_file(loaded, path2) == SPLP_OK);
  CHECK(slurp(path) == slurp(path2));

  CHECK(splp_config_load_file(loaded, "/nonexistent/splp.cfg") == SPLP_ERR_IO);

  std::remove(path);
  std::remove(path2);
  splp_config_destroy(loaded);
  splp_config_destroy(cfg);
}

TEST_CASE("bitrate query") {
  splp_config* cfg = splp_config_create();
  double mbps = 0;
  REQUIRE(splp_useful_bitrate(cfg, &mbps) == SPLP_OK);
  CHECK(mbps == doctest::Approx(16.7955882353).epsilon(1e-9));
  CHECK(splp_useful_bitrate(cfg, nullptr) == SPLP_ERR_CONFIG);
  splp_config_destroy(cfg);
}

TEST_CASE("running an experiment and reading the report") {
  splp_config* cfg = splp_config_create();
  splp_report* rep = nullptr;
  REQUIRE(splp_run(cfg, "bitrate", &rep) == SPLP_OK);
  REQUIRE(rep != nullptr);

  CHECK(splp_report_num_rows(rep) == 8);
  REQUIRE(splp_report_num_columns(rep) == 7);
  char name[64];
  REQUIRE(splp_report_column_name(rep, 6, name, sizeof name) == SPLP_OK);
  CHECK(std::strcmp(name, "bitrate_mbps") == 0);
  CHECK(splp_report_column_name(rep, 7, name, sizeof name) ==
        SPLP_ERR_CONFIG);

  double v = 0;
  REQUIRE(splp_report_value(rep, 0, 6, &v) == SPLP_OK);
  CHECK(v == doctest::Approx(14.9294117647).epsilon(1e-9));
  CHECK(splp_report_value(rep, 99, 0, &v) == SPLP_ERR_CONFIG);
  CHECK(splp_report_value(rep, 0, 99, &v) == SPLP_ERR_CONFIG);

  char meta[256];
  REQUIRE(splp_report_meta(rep, "experiment", meta, sizeof meta) == SPLP_OK);
  CHECK(std::strcmp(meta, "bitrate") == 0);
  CHECK(splp_report_meta(rep, "no_such_key", meta, sizeof meta) ==
        SPLP_ERR_CONFIG);

  CHECK(splp_report_has_unreliable(rep) == 0);

  const char* csv_path = "/tmp/splp_capi_rep.csv";
  REQUIRE(splp_report_write_csv(rep, csv_path) == SPLP_OK);
  std::string csv = slurp(csv_path);
  CHECK(csv.find("bitrate_mbps") != std::string::npos);
  std::remove(csv_path);

  const char* svg_path = "/tmp/splp_capi_rep.svg";
  REQUIRE(splp_report_write_svg(rep, svg_path, "lt", "bitrate_mbps",
                                "baseline", 0) == SPLP_OK);
  std::string svg = slurp(svg_path);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(splp_report_write_svg(rep, svg_path, "lt", "no_such_column", nullptr,
                              0) == SPLP_ERR_CONFIG);
  std::remove(svg_path);

  splp_report_destroy(rep);
  splp_report_destroy(nullptr);  // must be a no-op
  splp_config_destroy(cfg);
}

TEST_CASE("experiment errors surface as status codes") {
  splp_config* cfg = splp_config_create();
  splp_report* rep = reinterpret_cast<splp_report*>(0x1);
  CHECK(splp_run(cfg, "no-such-experiment", &rep) == SPLP_ERR_CONFIG);
  CHECK(rep == nullptr);  // cleared before the attempt
  CHECK(std::strstr(splp_last_error(), "no-such-experiment") != nullptr);

  CHECK(splp_config_set(cfg, "lt", "5") == SPLP_OK);
  rep = nullptr;
  CHECK(splp_run(cfg, "variance", &rep) == SPLP_ERR_CONFIG);
  CHECK(rep == nullptr);

  CHECK(splp_run(nullptr, "ber", &rep) == SPLP_ERR_CONFIG);
  CHECK(splp_run(cfg, "ber", nullptr) == SPLP_ERR_CONFIG);
  splp_config_destroy(cfg);
}

TEST_CASE("a small deterministic run through the C surface") {
  splp_config* cfg = splp_config_create();
  REQUIRE(splp_config_set(cfg, "lf_sweep", "2") == SPLP_OK);
  REQUIRE(splp_config_set(cfg, "snr_grid_db", "20") == SPLP_OK);
  REQUIRE(splp_config_set(cfg, "mse_trials", "1728") == SPLP_OK);

  splp_report* a = nullptr;
  splp_report* b = nullptr;
  REQUIRE(splp_run(cfg, "mse", &a) == SPLP_OK);
  REQUIRE(splp_run(cfg, "mse", &b) == SPLP_OK);
  REQUIRE(splp_report_num_rows(a) == 1);
  double va = 0, vb = 0;
  const int cols = splp_report_num_columns(a);
  for (int c = 0; c < cols; ++c) {
    REQUIRE(splp_report_value(a, 0, c, &va) == SPLP_OK);
    REQUIRE(splp_report_value(b, 0, c, &vb) == SPLP_OK);
    CHECK(va == vb);
  }
  splp_report_destroy(a);
  splp_report_destroy(b);
  splp_config_destroy(cfg);
}
