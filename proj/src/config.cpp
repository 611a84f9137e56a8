#include "tfse/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tfse/errors.hpp"

namespace tfse {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Drops a trailing comment that is not inside quotes.
std::string strip_comment(const std::string& s) {
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#' || c == ';') {
      return s.substr(0, i);
    }
  }
  return s;
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front())
    return v.substr(1, v.size() - 2);
  return v;
}

void check_known(const std::string& key) {
  const auto& keys = config_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown config key '" + key + "'");
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto s = trim(v);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw ConfigError(key + " expects a number, got '" + v + "'");
  return x;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const auto s = trim(v);
  unsigned long long x = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw ConfigError(key + " expects a nonnegative integer, got '" + v + "'");
  return static_cast<std::size_t>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  std::string s = trim(v);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key + " expects true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::string s = trim(v);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
  if (out.empty()) throw ConfigError(key + " expects a comma-separated list of numbers");
  return out;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "model.b",          "order.alpha",       "order.beta",        "chi.k_min",        "chi.k_max",
      "chi.amplitude",    "grid.L",            "grid.n",            "quad.n_nodes",     "quad.rel_tol",
      "time.t_min",       "time.t_max",        "time.n_samples",    "output.path",      "output.normalize",
      "spectrum.k_min",   "spectrum.k_max",    "spectrum.n_points", "regimes.synthetic", "verify.lambdas",
      "verify.weights",   "verify.caputo_n",   "verify.caputo_lambda", "verify.t_min",  "verify.t_max",
      "verify.n_samples"};
  return keys;
}

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap out;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', "config line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      require(!section.empty(), "config line " + std::to_string(line_no) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos, "config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    require(!key.empty(), "config line " + std::to_string(line_no) + ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    check_known(full);
    out[full] = unquote(trim(line.substr(eq + 1)));
  }
  return out;
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IOError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig build_config(const ConfigMap& file, const ConfigMap& overrides) {
  ConfigMap m = file;
  for (const auto& [k, v] : overrides) m[k] = v;
  for (const auto& [k, v] : m) check_known(k);
  auto has = [&](const char* k) { return m.count(k) > 0; };

  RunConfig c;
  if (has("model.b")) c.model.b = to_double("model.b", m["model.b"]);
  if (has("order.alpha")) c.order.alpha = to_double("order.alpha", m["order.alpha"]);
  if (has("order.beta")) c.order.beta = to_double("order.beta", m["order.beta"]);
  if (has("chi.k_min")) c.chi.k_lo = to_double("chi.k_min", m["chi.k_min"]);
  if (has("chi.k_max")) c.chi.k_hi = to_double("chi.k_max", m["chi.k_max"]);
  if (has("chi.amplitude")) c.chi.amplitude = to_double("chi.amplitude", m["chi.amplitude"]);
  if (has("grid.L")) {
    const std::string v = trim(m["grid.L"]);
    c.grid.L = (v == "auto") ? 0.0 : to_double("grid.L", v);
    require(v == "auto" || c.grid.L > 0.0, "grid.L must be positive or 'auto'");
  }
  if (has("grid.n")) c.grid.n = static_cast<int>(to_count("grid.n", m["grid.n"]));
  if (has("quad.n_nodes")) c.quad.n_nodes = to_count("quad.n_nodes", m["quad.n_nodes"]);
  if (has("quad.rel_tol")) c.quad.rel_tol = to_double("quad.rel_tol", m["quad.rel_tol"]);
  if (has("time.t_min")) c.time.t_min = to_double("time.t_min", m["time.t_min"]);
  if (has("time.t_max")) c.time.t_max = to_double("time.t_max", m["time.t_max"]);
  if (has("time.n_samples")) c.time.n_samples = to_count("time.n_samples", m["time.n_samples"]);
  if (has("output.path")) c.output_path = m["output.path"];
  if (has("output.normalize")) c.normalize = to_bool("output.normalize", m["output.normalize"]);
  c.spectrum.k_min = has("spectrum.k_min") ? to_double("spectrum.k_min", m["spectrum.k_min"]) : c.chi.k_lo;
  c.spectrum.k_max = has("spectrum.k_max") ? to_double("spectrum.k_max", m["spectrum.k_max"]) : c.chi.k_hi;
  if (has("spectrum.n_points")) c.spectrum.n_points = to_count("spectrum.n_points", m["spectrum.n_points"]);
  if (has("regimes.synthetic")) c.synthetic = trim(m["regimes.synthetic"]);
  if (has("verify.lambdas")) c.verify.lambdas = to_list("verify.lambdas", m["verify.lambdas"]);
  if (has("verify.weights")) c.verify.weights = to_list("verify.weights", m["verify.weights"]);
  if (has("verify.caputo_n")) c.verify.caputo_n = to_count("verify.caputo_n", m["verify.caputo_n"]);
  if (has("verify.caputo_lambda")) c.verify.caputo_lambda = to_double("verify.caputo_lambda", m["verify.caputo_lambda"]);
  if (has("verify.t_min")) c.verify.t_min = to_double("verify.t_min", m["verify.t_min"]);
  if (has("verify.t_max")) c.verify.t_max = to_double("verify.t_max", m["verify.t_max"]);
  if (has("verify.n_samples")) c.verify.n_samples = to_count("verify.n_samples", m["verify.n_samples"]);

  require(c.model.b > 0.0, "model.b must be positive");
  require(c.order.alpha > 0.0 && c.order.alpha <= 1.0, "order.alpha must lie in (0,1]");
  require(c.order.beta > 0.0 && c.order.beta <= 1.0, "order.beta must lie in (0,1]");
  require(c.chi.k_lo < c.chi.k_hi, "chi.k_min must be less than chi.k_max");
  require(c.chi.amplitude > 0.0, "chi.amplitude must be positive");
  require(c.grid.n >= 200, "grid.n must be at least 200");
  require(c.quad.n_nodes >= 32, "quad.n_nodes must be at least 32");
  require(c.quad.rel_tol > 0.0 && c.quad.rel_tol < 1.0, "quad.rel_tol must lie in (0,1)");
  require(c.time.t_min > 0.0, "time.t_min must be positive");
  require(c.time.t_max > c.time.t_min, "time.t_max must exceed time.t_min");
  require(c.time.n_samples >= 2, "time.n_samples must be at least 2");
  require(c.spectrum.k_min < c.spectrum.k_max, "spectrum.k_min must be less than spectrum.k_max");
  require(c.spectrum.n_points >= 2, "spectrum.n_points must be at least 2");
  require(c.verify.lambdas.size() == c.verify.weights.size(), "verify.weights must have one entry per verify.lambdas");
  for (std::size_t i = 0; i < c.verify.lambdas.size(); ++i) {
    require(c.verify.lambdas[i] > 0.0 && (i == 0 || c.verify.lambdas[i] > c.verify.lambdas[i - 1]),
            "verify.lambdas must be positive and strictly increasing");
    require(c.verify.weights[i] >= 0.0, "verify.weights must be nonnegative");
  }
  require(c.verify.caputo_n >= 10, "verify.caputo_n must be at least 10");
  require(c.verify.caputo_lambda > 0.0, "verify.caputo_lambda must be positive");
  require(c.verify.t_min > 0.0 && c.verify.t_max > c.verify.t_min, "verify.t_max must exceed verify.t_min > 0");
  require(c.verify.n_samples >= 2, "verify.n_samples must be at least 2");
  return c;
}

EdgeSystem RunConfig::edge_system() const { return EdgeSystem(model, chi, grid, quad); }

std::string describe(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "model.b=" << c.model.b << "\norder.alpha=" << c.order.alpha << "\norder.beta=" << c.order.beta
     << "\nchi.k_min=" << c.chi.k_lo << "\nchi.k_max=" << c.chi.k_hi << "\nchi.amplitude=" << c.chi.amplitude
     << "\ngrid.L=" << (c.grid.L > 0.0 ? std::to_string(c.grid.L) : std::string("auto")) << "\ngrid.n=" << c.grid.n
     << "\nquad.n_nodes=" << c.quad.n_nodes << "\nquad.rel_tol=" << c.quad.rel_tol << "\ntime.t_min=" << c.time.t_min
     << "\ntime.t_max=" << c.time.t_max << "\ntime.n_samples=" << c.time.n_samples
     << "\noutput.normalize=" << (c.normalize ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace tfse
