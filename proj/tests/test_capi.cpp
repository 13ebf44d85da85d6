// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "nafcode/nafcode.h"

TEST_CASE("version and error reporting") {
  CHECK(std::string(nafcode_version()) == "0.1.0");
  nafcode_curve* c = nullptr;
  CHECK(nafcode_dmt_product(1, 2, 2, &c) == NAFCODE_ERR_INVALID_ARGUMENT);
  CHECK(c == nullptr);
  CHECK(std::string(nafcode_last_error()).find("m >= l") != std::string::npos);
  CHECK(nafcode_dmt_product(2, 2, 2, nullptr) == NAFCODE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("DMT curves through the C interface") {
  nafcode_curve* c = nullptr;
  REQUIRE(nafcode_dmt_product(3, 3, 3, &c) == NAFCODE_OK);
  REQUIRE(nafcode_curve_size(c) == 4);
  const double expect[4] = {7, 3, 1, 0};
  for (size_t i = 0; i < 4; ++i) {
    double r = -1;
    double d = -1;
    CHECK(nafcode_curve_vertex(c, i, &r, &d) == NAFCODE_OK);
    CHECK(r == static_cast<double>(i));
    CHECK(d == expect[i]);
  }
  double r = 0;
  double d = 0;
  CHECK(nafcode_curve_vertex(c, 4, &r, &d) == NAFCODE_ERR_INVALID_ARGUMENT);
  CHECK(nafcode_curve_eval(c, 0.5, &d) == NAFCODE_OK);
  CHECK(d == doctest::Approx(5.0));
  CHECK(nafcode_curve_eval(c, -1.0, &d) == NAFCODE_ERR_INVALID_ARGUMENT);
  CHECK(nafcode_curve_write_csv(c, "capi_curve.csv") == NAFCODE_OK);
  std::ifstream in("capi_curve.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "r,d");
  std::remove("capi_curve.csv");
  CHECK(nafcode_curve_write_csv(c, "/nonexistent/dir/x.csv") == NAFCODE_ERR_IO);
  nafcode_curve_free(c);
  nafcode_curve_free(nullptr);

  double oracle = 0;
  CHECK(nafcode_dmt_product_oracle(3, 3, 3, 1.5, &oracle) == NAFCODE_OK);
  CHECK(oracle == doctest::Approx(2.0).epsilon(1e-9));

  REQUIRE(nafcode_dmt_naf_bound(1, 1, 1, 4, nullptr, &c) == NAFCODE_OK);
  CHECK(nafcode_curve_eval(c, 0.0, &d) == NAFCODE_OK);
  CHECK(d == 5.0);
  nafcode_curve_free(c);

  const int dims[6] = {2, 2, 1, 2, 2, 2};
  REQUIRE(nafcode_dmt_naf_bound(2, 2, 2, 2, dims, &c) == NAFCODE_OK);
  CHECK(nafcode_curve_eval(c, 0.0, &d) == NAFCODE_OK);
  CHECK(d == 4.0 + 2.0 + 3.0);
  nafcode_curve_free(c);

  REQUIRE(nafcode_dmt_rayleigh(2, 2, &c) == NAFCODE_OK);
  CHECK(nafcode_curve_size(c) == 3);
  nafcode_curve_free(c);

  double lo = 0;
  double hi = 0;
  int eq = -1;
  CHECK(nafcode_dmt_max_diversity(2, 2, 2, 1, &lo, &hi, &eq) == NAFCODE_OK);
  CHECK(lo == 7.0);
  CHECK(hi == 8.0);
  CHECK(eq == 0);
}

TEST_CASE("configuration and simulation through the C interface") {
  nafcode_config* cfg = nullptr;
  REQUIRE(nafcode_config_new(&cfg) == NAFCODE_OK);
  CHECK(nafcode_config_parse(cfg, "code_id = Golden\ntopology = 1,1,1\nscheme = naf\n") == NAFCODE_OK);
  CHECK(nafcode_config_finalize(cfg) == NAFCODE_ERR_CONFIG);
  CHECK(std::string(nafcode_last_error()).find("snr_grid_db") != std::string::npos);
  CHECK(nafcode_config_set(cfg, "snr_grid_db", "0,10") == NAFCODE_OK);
  CHECK(nafcode_config_set(cfg, "max_trials", "300") == NAFCODE_OK);
  CHECK(nafcode_config_set(cfg, "no_such_key", "1") == NAFCODE_ERR_CONFIG);
  CHECK(nafcode_config_finalize(cfg) == NAFCODE_OK);
  double off = 0;
  CHECK(nafcode_config_ebn0_offset(cfg, &off) == NAFCODE_OK);
  CHECK(off == doctest::Approx(10.0 * std::log10(2.0)));

  nafcode_table* t = nullptr;
  REQUIRE(nafcode_run_fer(cfg, &t) == NAFCODE_OK);
  REQUIRE(nafcode_table_rows(t) == 2);
  nafcode_fer_row row{};
  CHECK(nafcode_table_row(t, 0, &row) == NAFCODE_OK);
  CHECK(row.snr_db == 0.0);
  CHECK(row.frame_errors > 0);
  CHECK(row.ci_low <= row.fer);
  CHECK(row.fer <= row.ci_high);
  CHECK(nafcode_table_row(t, 2, &row) == NAFCODE_ERR_INVALID_ARGUMENT);
  CHECK(nafcode_table_write_csv(t, "capi_fer.csv", 0.0) == NAFCODE_OK);
  nafcode_table* back = nullptr;
  REQUIRE(nafcode_table_read_csv("capi_fer.csv", &back) == NAFCODE_OK);
  CHECK(nafcode_table_rows(back) == 2);
  nafcode_fer_row row2{};
  CHECK(nafcode_table_row(back, 0, &row2) == NAFCODE_OK);
  CHECK(nafcode_table_row(t, 0, &row) == NAFCODE_OK);
  CHECK(row2.fer == row.fer);
  CHECK(row2.trials == row.trials);
  double slope = 0;
  CHECK(nafcode_table_slope(back, 1e-2, 1e-4, &slope) == NAFCODE_ERR_INSUFFICIENT_DATA);
  nafcode_table_free(back);
  std::remove("capi_fer.csv");
  CHECK(nafcode_table_read_csv("/nonexistent/fer.csv", &back) == NAFCODE_ERR_IO);
  nafcode_table_free(t);

  REQUIRE(nafcode_run_outage(cfg, 0.0, &t) == NAFCODE_OK);
  CHECK(nafcode_table_row(t, 1, &row) == NAFCODE_OK);
  CHECK(row.frame_errors == 0);
  nafcode_table_free(t);
  nafcode_config_free(cfg);

  REQUIRE(nafcode_config_new(&cfg) == NAFCODE_OK);
  CHECK(nafcode_config_load(cfg, "/nonexistent/run.cfg") == NAFCODE_ERR_CONFIG);
  nafcode_config_free(cfg);
}

TEST_CASE("code catalogue and audit through the C interface") {
  REQUIRE(nafcode_code_count() == 5);
  CHECK(std::string(nafcode_code_name(0)) == "Golden");
  CHECK(nafcode_code_name(5) == nullptr);
  nafcode_code_info info{};
  REQUIRE(nafcode_code_info_get("c21", &info) == NAFCODE_OK);
  CHECK(info.blocks == 2);
  CHECK(info.ns == 1);
  CHECK(info.symbols == 8);
  CHECK(info.length == 8);
  CHECK(info.det_multiplier == doctest::Approx(100.0));
  CHECK(nafcode_code_info_get("nope", &info) == NAFCODE_ERR_INVALID_ARGUMENT);
  CHECK(nafcode_code_export_generator("golden", "capi_gen.csv") == NAFCODE_OK);
  std::remove("capi_gen.csv");

  nafcode_audit_report rep{};
  REQUIRE(nafcode_audit("golden", "qam", 4, 0, 1, 1000000, &rep) == NAFCODE_OK);
  CHECK(rep.min_det2 == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(rep.evaluated == 6560);
  CHECK(rep.rank_deficient == 0);
  CHECK(rep.min_rank == rep.full_rank);
  CHECK(nafcode_audit("c21", "qam", 4, 0, 1, 1000, &rep) == NAFCODE_ERR_BUDGET);
  CHECK(nafcode_audit("c21", "qam", 4, 2000, 1, 1000, &rep) == NAFCODE_OK);
  CHECK(rep.evaluated == 2000);
}
