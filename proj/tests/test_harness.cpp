// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include "doctest.h"
#include "nafcode/harness.hpp"

using namespace nafcode;
using namespace nafcode::harness;
using nafcode::codes::CodeId;

namespace {

SimConfig golden_naf(const std::string& extra = "") {
  ConfigBuilder b;
  b.parse("code_id = Golden\ntopology = 1,1,1\nscheme = naf\nsnr_grid_db = 10,20\nseed = 3\n" + extra);
  return b.build();
}

std::string error_of(const std::string& text) {
  try {
    ConfigBuilder b;
    b.parse(text, "t.cfg");
    b.build();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

FerTable synthetic(double slope, double noise_amp, Stream* rng) {
  FerTable t;
  for (int k = 0; k <= 8; ++k) {
    const double snr_db = 5.0 * k;
    double lf = -slope * snr_db / 10.0;
    if (rng) lf += noise_amp * (2.0 * rng->uniform() - 1.0);
    FerRow r;
    r.snr_db = snr_db;
    r.fer = std::pow(10.0, lf);
    r.trials = 1000000000;
    r.frame_errors = static_cast<std::uint64_t>(r.fer * 1e9);
    r.ci_low = r.fer * 0.95;
    r.ci_high = r.fer * 1.05;
    t.push_back(r);
  }
  return t;
}

}  // namespace

TEST_CASE("Wilson interval") {
  const auto r = make_row(10.0, 1000, 100);
  CHECK(r.fer == doctest::Approx(0.1));
  CHECK(r.ci_low == doctest::Approx(0.08290944359309571).epsilon(1e-12));
  CHECK(r.ci_high == doctest::Approx(0.1201519631953484).epsilon(1e-12));
  const auto z = make_row(0.0, 50, 0);
  CHECK(z.fer == 0.0);
  CHECK(z.ci_low == 0.0);
  CHECK(z.ci_high == doctest::Approx(0.07134759913335872).epsilon(1e-12));
  const auto all = make_row(0.0, 20, 20);
  CHECK(all.ci_high == 1.0);
  CHECK(all.ci_low < 1.0);
  CHECK_THROWS_AS(make_row(0.0, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(make_row(0.0, 5, 6), InvalidArgument);
}

TEST_CASE("slope estimation") {
  CHECK(slope_estimate(synthetic(2.0, 0.0, nullptr), 1e-1, 1e-7) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(slope_estimate(synthetic(1.0, 0.0, nullptr), 1.0, 1e-4) == doctest::Approx(1.0).epsilon(1e-6));
  Stream rng(4);
  CHECK(std::abs(slope_estimate(synthetic(2.0, 0.1, &rng), 1.0, 1e-9) - 2.0) < 0.2);
  CHECK_THROWS_AS(slope_estimate(synthetic(2.0, 0.0, nullptr), 1e-2, 5e-3), InsufficientData);
  auto wide = synthetic(2.0, 0.0, nullptr);
  for (auto& r : wide) r.ci_high = r.fer * 2.0;
  CHECK_THROWS_AS(slope_estimate(wide, 1.0, 1e-9), InsufficientData);
}

TEST_CASE("SNR at a FER level") {
  const auto t = synthetic(2.0, 0.0, nullptr);
  CHECK(snr_at_fer(t, 1e-3) == doctest::Approx(15.0).epsilon(1e-9));
  CHECK(snr_at_fer(t, 3e-3) == doctest::Approx(15.0 - 10.0 * std::log10(3.0) / 2.0).epsilon(1e-9));
  CHECK_THROWS_AS(snr_at_fer(t, 1e-12), InsufficientData);
  CHECK_THROWS_AS(snr_at_fer(t, 0.0), InvalidArgument);
}

TEST_CASE("configuration defaults") {
  const auto c = golden_naf();
  CHECK(c.code_id == CodeId::Golden);
  CHECK(c.topology.relays == 1);
  CHECK(c.snr_grid_db == std::vector<double>{10, 20});
  CHECK(c.rho_db == 0.0);
  CHECK(c.max_trials == 100000);
  CHECK(c.target_frame_errors == 100);
  CHECK(c.constellation.M == 4);
  CHECK(c.threads == 1);
  CHECK_FALSE(c.common_random_numbers);
  CHECK(c.resolved_power().pi1 == doctest::Approx(1.0));
  CHECK(ebn0_offset_db(c) == doctest::Approx(10.0 * std::log10(2.0)));
}

TEST_CASE("configuration values") {
  ConfigBuilder b;
  b.parse(
      "# comment\n"
      "code_id = c21\n"
      "topology = 1,1,1,2\n"
      "scheme = naf\n"
      "snr_grid_db = 0:2.5:10\n"
      "power = 1,0.5,0.5\n"
      "constellation = QAM-16\n"
      "max_trials = 1e6\n"
      "common_random_numbers = yes\n"
      "relay_gain = bounded_eigen\n");
  auto c = b.build();
  CHECK(c.code_id == CodeId::C21);
  CHECK(c.topology.relays == 2);
  CHECK(c.snr_grid_db == std::vector<double>{0, 2.5, 5, 7.5, 10});
  CHECK(c.constellation.M == 16);
  CHECK(c.max_trials == 1000000);
  CHECK(c.common_random_numbers);
  CHECK(c.relay_gain == channel::RelayGainRule::BoundedEigen);
  CHECK(ebn0_offset_db(c) == doctest::Approx(10.0 * std::log10(4.0)));
  b.set("threads", "4");
  CHECK(b.build().threads == 4);
  CHECK_THROWS_AS(b.set("bogus", "1"), ConfigError);

  ConfigBuilder v;
  v.parse("code_id = c21\ntopology = 1,2,1\nscheme = virtual_relay\nsnr_grid_db = 5\n");
  CHECK(v.build().topology.relays == 1);
}

TEST_CASE("configuration errors name the key and line") {
  const std::string base = "code_id = Golden\ntopology = 1,1,1\nscheme = naf\nsnr_grid_db = 10\n";
  auto e = error_of(base + "seed = 1\nseed = 2\n");
  CHECK(e.find("t.cfg:6") != std::string::npos);
  CHECK(e.find("duplicate key 'seed'") != std::string::npos);
  e = error_of(base + "colour = blue\n");
  CHECK(e.find("t.cfg:5") != std::string::npos);
  CHECK(e.find("'colour'") != std::string::npos);
  e = error_of(base + "max_trials = lots\n");
  CHECK(e.find("t.cfg:5") != std::string::npos);
  CHECK(e.find("'max_trials'") != std::string::npos);
  e = error_of("code_id = Golden\ntopology = 1,1,1\nscheme = naf\n");
  CHECK(e.find("'snr_grid_db'") != std::string::npos);
  e = error_of(base + "this line has no equals\n");
  CHECK(e.find("t.cfg:5") != std::string::npos);
  CHECK_FALSE(error_of("code_id = C21\ntopology = 1,1,1\nscheme = naf\nsnr_grid_db = 10\nrelays = 1\n").empty());
  CHECK_FALSE(error_of("code_id = Golden\ntopology = 1,1,1\nscheme = naf\nsnr_grid_db = 10,5\n").empty());
  CHECK_FALSE(error_of(base + "power = 1,1,1\n").empty());
  CHECK_FALSE(error_of(base + "constellation = qam8\n").empty());
  CHECK_THROWS_AS(parse_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("FER CSV round trip") {
  FerTable t{make_row(0.0, 100, 50), make_row(5.5, 12345, 100), make_row(10.0, 1000000, 0)};
  std::stringstream ss;
  emit_csv(ss, t);
  CHECK(ss.str().rfind(std::string(kFerHeader) + "\n", 0) == 0);
  const auto back = read_csv(ss);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].snr_db == t[i].snr_db);
    CHECK(back[i].trials == t[i].trials);
    CHECK(back[i].frame_errors == t[i].frame_errors);
    CHECK(back[i].fer == t[i].fer);
    CHECK(back[i].ci_low == t[i].ci_low);
    CHECK(back[i].ci_high == t[i].ci_high);
  }
  std::stringstream shifted;
  emit_csv(shifted, t, 3.0);
  CHECK(read_csv(shifted)[1].snr_db == doctest::Approx(2.5));

  const auto path = (std::filesystem::temp_directory_path() / "nafcode_fer_roundtrip.csv").string();
  emit_csv(path, t);
  CHECK(read_csv_file(path).size() == 3);
  std::filesystem::remove(path);
  std::stringstream bad("snr,fer\n1,2\n");
  CHECK_THROWS_AS(read_csv(bad), IoError);
  std::stringstream short_row(std::string(kFerHeader) + "\n1,2,3\n");
  CHECK_THROWS_AS(read_csv(short_row), IoError);
}

TEST_CASE("trials are reproducible and independent of thread count") {
  auto c = golden_naf("max_trials = 3000\ntarget_frame_errors = 40\n");
  const auto one = run_fer(c);
  c.threads = 3;
  const auto three = run_fer(c);
  REQUIRE(one.size() == three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].trials == three[i].trials);
    CHECK(one[i].frame_errors == three[i].frame_errors);
  }
  CHECK(fer_trial(c, 0, 17) == fer_trial(c, 0, 17));
  CHECK_THROWS_AS(fer_trial(c, 5, 0), InvalidArgument);
}

TEST_CASE("early stopping at the target error count") {
  ConfigBuilder b;
  b.parse("code_id = Golden\ntopology = 1,1,1\nscheme = naf\nsnr_grid_db = 0\ntarget_frame_errors = 25\n");
  const auto c = b.build();
  const auto t = run_fer(c);
  REQUIRE(t.size() == 1);
  CHECK(t[0].frame_errors == 25);
  CHECK(t[0].trials < 200);
  std::uint64_t replay = 0;
  for (std::uint64_t k = 0; k < t[0].trials; ++k) replay += fer_trial(c, 0, k) ? 1 : 0;
  CHECK(replay == 25);
  CHECK(fer_trial(c, 0, t[0].trials - 1));
}

TEST_CASE("common random numbers give a non-increasing error count") {
  ConfigBuilder b;
  b.parse(
      "code_id = Golden\ntopology = 1,1,1\nscheme = naf\nsnr_grid_db = 0:4:24\n"
      "max_trials = 2000\ntarget_frame_errors = 1000000\ncommon_random_numbers = true\nseed = 9\n");
  const auto t = run_fer(b.build());
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i].frame_errors <= t[i - 1].frame_errors);
  CHECK(t.front().frame_errors > t.back().frame_errors);
}

TEST_CASE("outage probability") {
  ConfigBuilder b;
  b.parse("code_id = Golden\ntopology = 1,1,1\nscheme = naf\nsnr_grid_db = 0,10\nmax_trials = 2000\n");
  const auto c = b.build();
  const auto zero = run_outage(c, 0.0);
  for (const auto& r : zero) CHECK(r.frame_errors == 0);
  const auto hi = run_outage(c, 1.0);
  CHECK(hi[0].fer > hi[1].fer);
  CHECK_THROWS_AS(run_outage(c, -1.0), InvalidArgument);
}

TEST_CASE("direct link at high SNR rarely fails") {
  ConfigBuilder b;
  b.parse(
      "code_id = Golden\ntopology = 1,1,1\nscheme = direct\nsnr_grid_db = 60\n"
      "max_trials = 10000\ntarget_frame_errors = 1000000\n");
  const auto t = run_fer(b.build());
  CHECK(t[0].trials == 10000);
  CHECK(t[0].fer < 1e-3);
}
