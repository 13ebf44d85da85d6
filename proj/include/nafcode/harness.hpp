// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NAFCODE_HARNESS_HPP
#define NAFCODE_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nafcode/channel.hpp"
#include "nafcode/codes.hpp"

namespace nafcode::harness {

struct ConstellationChoice {
  codes::ConstellationKind kind = codes::ConstellationKind::QAM;
  int M = 4;
};

struct SimConfig {
  algebra::CodeId code_id = algebra::CodeId::Golden;
  channel::Topology topology;  // relays and scheme live here
  std::vector<double> snr_grid_db;
  double rho_db = 0.0;
  std::optional<channel::PowerAllocation> power;  // empty: standard split
  ConstellationChoice constellation;
  std::uint64_t max_trials = 100000;
  std::uint64_t target_frame_errors = 100;
  std::uint64_t seed = 1;
  double shadowing_sigma_db = 0.0;
  int threads = 1;
  bool common_random_numbers = false;
  channel::RelayGainRule relay_gain = channel::RelayGainRule::TraceEquality;
  double rate_bits_pcu = 1.0;  // outage only

  channel::PowerAllocation resolved_power() const;
  /// Throws ConfigError on any inconsistency, including code and topology
  /// dimensions the decoder cannot handle.
  void validate() const;
  /// Information bits per channel use: ns log2 M.
  double bits_per_channel_use() const;
};

/// Flat key=value configuration. Lines starting with '#' and blank lines are
/// ignored. Keys match the SimConfig field names.
class ConfigBuilder {
 public:
  /// Parses text; duplicate and unknown keys throw ConfigError naming the line.
  void parse(std::string_view text, const std::string& source = "<config>");
  void parse_file(const std::string& path);
  /// Overrides (or sets) one key, e.g. from a command-line flag.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  /// Applies defaults, checks required keys and validates.
  SimConfig build() const;

  static const std::vector<std::string>& known_keys();

 private:
  struct Entry {
    std::string value;
    std::string where;
  };
  std::map<std::string, Entry> entries_;
};

SimConfig parse_config(const std::string& path);

struct FerRow {
  double snr_db = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t frame_errors = 0;
  double fer = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
};

using FerTable = std::vector<FerRow>;

/// Wilson score interval at 95% confidence.
FerRow make_row(double snr_db, std::uint64_t trials, std::uint64_t errors);

/// One FER trial at the given SNR index with its own random stream.
bool fer_trial(const SimConfig& cfg, std::size_t snr_index, std::uint64_t trial);
/// One outage trial.
bool outage_trial(const SimConfig& cfg, std::size_t snr_index, std::uint64_t trial);

FerTable run_fer(const SimConfig& cfg);
FerTable run_outage(const SimConfig& cfg, double rate_bits_pcu);

/// Negated least-squares slope of log10(FER) against SNR_dB / 10, over rows
/// with fer_lo <= fer <= fer_hi and a CI width below half the FER.
double slope_estimate(const FerTable& table, double fer_hi, double fer_lo);

/// SNR in dB at which the table reaches the FER level, by log-linear
/// interpolation between bracketing rows. Throws InsufficientData if the
/// level is not bracketed.
double snr_at_fer(const FerTable& table, double fer);

inline constexpr std::string_view kFerHeader = "snr_db,trials,frame_errors,fer,ci_low,ci_high";

/// snr_offset_db is subtracted from every SNR, e.g. for Eb/N0 output.
void emit_csv(std::ostream& os, const FerTable& table, double snr_offset_db = 0.0);
void emit_csv(const std::string& path, const FerTable& table, double snr_offset_db = 0.0);
FerTable read_csv(std::istream& is);
FerTable read_csv_file(const std::string& path);

/// 10 log10(bits per channel use).
double ebn0_offset_db(const SimConfig& cfg);

}  // namespace nafcode::harness

#endif  // NAFCODE_HARNESS_HPP
