#pragma once

// Run configuration: INI/TOML-style `[section] key = value` text, with
// `section.key` overrides on top. Defaults < file < overrides.

#include <map>
#include <string>
#include <vector>

#include "tfse/edge_current.hpp"
#include "tfse/fiber_spectrum.hpp"
#include "tfse/wavepacket.hpp"

namespace tfse {

struct TimeGrid {
  double t_min = 1.0;
  double t_max = 1e4;
  std::size_t n_samples = 60;
  std::vector<double> times() const { return log_times(t_min, t_max, n_samples); }
};

struct SpectrumDump {
  double k_min = 1.0;  // defaults follow chi
  double k_max = 2.0;
  std::size_t n_points = 21;
};

struct VerifySettings {
  std::vector<double> lambdas{1.5, 2.0, 2.5};
  std::vector<double> weights{0.25, 0.5, 0.25};
  std::size_t caputo_n = 2000;
  double caputo_lambda = 2.0;
  double t_min = 1e-2;
  double t_max = 1e2;
  std::size_t n_samples = 200;
};

struct RunConfig {
  ModelParams model;
  FractionalOrder order;
  ChiProfile chi;
  HalfLineGrid grid{0.0, 4000};  // L <= 0: automatic
  QuadConfig quad;
  TimeGrid time;
  SpectrumDump spectrum;
  VerifySettings verify;
  std::string output_path;  // empty: stdout
  bool normalize = false;
  std::string synthetic;  // regimes self-test, e.g. "t^-2.5"

  EdgeSystem edge_system() const;
};

using ConfigMap = std::map<std::string, std::string>;

/// Every recognised `section.key`.
const std::vector<std::string>& config_keys();

/// Reads `[section]` headers and `key = value` lines; `#` and `;` start
/// comments, values may be quoted. Throws ConfigError on malformed lines and
/// unknown keys.
ConfigMap parse_config_text(const std::string& text);
ConfigMap read_config_file(const std::string& path);

/// Defaults, then `file`, then `overrides`. Validates every field and names
/// the offending key in the ConfigError.
RunConfig build_config(const ConfigMap& file = {}, const ConfigMap& overrides = {});

/// Canonical `section.key=value` lines, for logging a run.
std::string describe(const RunConfig& cfg);

}  // namespace tfse
