// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nafcode/harness.hpp"

namespace nafcode::harness {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
  return v;
}

std::uint64_t to_uint(const std::string& s) {
  if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
  std::size_t used = 0;
  const auto v = std::stoull(s, &used);
  if (used != s.size()) {
    // Accept integral scientific notation such as 1e6.
    const double d = to_double(s);
    if (d < 0 || d != std::floor(d) || d > 1.8e19) throw std::invalid_argument(s);
    return static_cast<std::uint64_t>(d);
  }
  return v;
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

bool to_bool(const std::string& s) {
  const std::string v = lower(s);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument(s);
}

std::vector<double> to_grid(const std::string& s) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw std::invalid_argument("expected start:step:stop");
    const double a = to_double(parts[0]);
    const double step = to_double(parts[1]);
    const double b = to_double(parts[2]);
    if (!(step > 0)) throw std::invalid_argument("step must be positive");
    for (int k = 0;; ++k) {
      const double v = a + k * step;
      if (v > b + 1e-9 * std::max(1.0, std::abs(b))) break;
      out.push_back(v);
      if (k > 100000) throw std::invalid_argument("grid too long");
    }
    return out;
  }
  for (const auto& item : split(s, ',')) out.push_back(to_double(item));
  return out;
}

ConstellationChoice to_constellation(const std::string& s) {
  std::string v = lower(s);
  v.erase(std::remove_if(v.begin(), v.end(), [](char c) { return c == '-' || c == ':' || c == '_'; }),
          v.end());
  std::size_t k = 0;
  while (k < v.size() && std::isalpha(static_cast<unsigned char>(v[k]))) ++k;
  ConstellationChoice c;
  c.kind = codes::parse_constellation_kind(v.substr(0, k));
  c.M = to_int(v.substr(k));
  return c;
}

channel::RelayGainRule to_rule(const std::string& s) {
  const std::string v = lower(s);
  if (v == "trace_equality") return channel::RelayGainRule::TraceEquality;
  if (v == "bounded_eigen") return channel::RelayGainRule::BoundedEigen;
  throw std::invalid_argument(s);
}

const std::vector<std::string> kRequired = {"code_id", "topology", "scheme", "snr_grid_db"};

}  // namespace

const std::vector<std::string>& ConfigBuilder::known_keys() {
  static const std::vector<std::string> keys = {
      "code_id",   "topology",     "relays", "scheme",
      "snr_grid_db", "rho_db",     "power",  "constellation",
      "max_trials", "target_frame_errors", "seed", "shadowing_sigma_db",
      "threads",   "common_random_numbers", "relay_gain", "rate_bits_pcu"};
  return keys;
}

void ConfigBuilder::parse(std::string_view text, const std::string& source) {
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
    if (auto it = entries_.find(key); it != entries_.end()) {
      throw ConfigError(where + ": duplicate key '" + key + "' (first set at " + it->second.where + ")");
    }
    entries_[key] = {value, where};
  }
}

void ConfigBuilder::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  parse(ss.str(), path);
}

void ConfigBuilder::set(const std::string& key, const std::string& value) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw ConfigError("override: unknown key '" + key + "'");
  }
  entries_[key] = {trim(value), "override --" + key};
}

SimConfig ConfigBuilder::build() const {
  for (const auto& k : kRequired) {
    if (!has(k)) throw ConfigError("missing required key '" + k + "'");
  }
  SimConfig cfg;
  std::optional<int> relays;
  for (const auto& [key, e] : entries_) {
    const std::string& v = e.value;
    try {
      if (key == "code_id") {
        cfg.code_id = algebra::parse_code_id(v);
      } else if (key == "topology") {
        const auto parts = split(v, ',');
        if (parts.size() != 3 && parts.size() != 4) throw std::invalid_argument("expected ns,nr,nd");
        cfg.topology.ns = to_int(parts[0]);
        cfg.topology.nr = to_int(parts[1]);
        cfg.topology.nd = to_int(parts[2]);
        if (parts.size() == 4) relays = to_int(parts[3]);
      } else if (key == "relays") {
        relays = to_int(v);
      } else if (key == "scheme") {
        cfg.topology.scheme = channel::parse_scheme(v);
      } else if (key == "snr_grid_db") {
        cfg.snr_grid_db = to_grid(v);
      } else if (key == "rho_db") {
        cfg.rho_db = to_double(v);
      } else if (key == "power") {
        if (lower(v) != "standard") {
          const auto parts = split(v, ',');
          if (parts.size() != 3) throw std::invalid_argument("expected pi1,pi2,pi3 or 'standard'");
          cfg.power = channel::PowerAllocation{to_double(parts[0]), to_double(parts[1]), to_double(parts[2])};
        }
      } else if (key == "constellation") {
        cfg.constellation = to_constellation(v);
      } else if (key == "max_trials") {
        cfg.max_trials = to_uint(v);
      } else if (key == "target_frame_errors") {
        cfg.target_frame_errors = to_uint(v);
      } else if (key == "seed") {
        cfg.seed = to_uint(v);
      } else if (key == "shadowing_sigma_db") {
        cfg.shadowing_sigma_db = to_double(v);
      } else if (key == "threads") {
        cfg.threads = to_int(v);
      } else if (key == "common_random_numbers") {
        cfg.common_random_numbers = to_bool(v);
      } else if (key == "relay_gain") {
        cfg.relay_gain = to_rule(v);
      } else if (key == "rate_bits_pcu") {
        cfg.rate_bits_pcu = to_double(v);
      }
    } catch (const std::exception& ex) {
      throw ConfigError(e.where + ": key '" + key + "': malformed value '" + v + "' (" + ex.what() + ")");
    }
  }
  if (relays) {
    cfg.topology.relays = *relays;
  } else {
    const auto& s = cfg.topology.scheme;
    const bool single = s == channel::Scheme::VirtualRelay || s == channel::Scheme::AntennaSelection;
    cfg.topology.relays = single ? 1 : codes::code_spec(cfg.code_id).N;
  }
  cfg.validate();
  return cfg;
}

SimConfig parse_config(const std::string& path) {
  ConfigBuilder b;
  b.parse_file(path);
  return b.build();
}

channel::PowerAllocation SimConfig::resolved_power() const {
  return power ? *power : channel::PowerAllocation::standard(topology);
}

double SimConfig::bits_per_channel_use() const {
  return topology.ns * std::log2(static_cast<double>(constellation.M));
}

void SimConfig::validate() const {
  if (snr_grid_db.empty()) throw ConfigError("snr_grid_db: at least one SNR point is required");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
    if (!(snr_grid_db[i] > snr_grid_db[i - 1])) throw ConfigError("snr_grid_db: must be strictly increasing");
  }
  if (max_trials < 1) throw ConfigError("max_trials: must be at least 1");
  if (target_frame_errors < 1) throw ConfigError("target_frame_errors: must be at least 1");
  if (threads < 1) throw ConfigError("threads: must be at least 1");
  if (shadowing_sigma_db < 0) throw ConfigError("shadowing_sigma_db: must be nonnegative");
  if (rate_bits_pcu < 0) throw ConfigError("rate_bits_pcu: must be nonnegative");
  try {
    topology.validate();
    resolved_power().validate(topology);
    codes::make_constellation(constellation.kind, constellation.M);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const auto code = codes::code_spec(code_id);
  if (code.ns != topology.ns) {
    throw ConfigError("code " + std::string(algebra::to_string(code_id)) + " needs ns = " +
                      std::to_string(code.ns) + ", topology has ns = " + std::to_string(topology.ns));
  }
  if (code.N != topology.frames()) {
    throw ConfigError("code " + std::string(algebra::to_string(code_id)) + " spans " +
                      std::to_string(code.N) + " cooperation frames, topology provides " +
                      std::to_string(topology.frames()));
  }
  if (topology.nd < topology.ns) {
    throw ConfigError("decoder needs nd >= ns for a full-rank lattice");
  }
}

}  // namespace nafcode::harness
