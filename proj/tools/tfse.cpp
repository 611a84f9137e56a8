// Command-line front end: one subcommand per experiment, CSV on stdout or
// to --output.path.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "tfse/config.hpp"
#include "tfse/errors.hpp"
#include "tfse/experiments.hpp"
#include "tfse/io.hpp"
#include "tfse/mittag_leffler.hpp"
#include "tfse/msd.hpp"

namespace {

// Short spellings for the keys people type most.
const std::map<std::string, std::string> kAliases{
    {"order.alpha", "--alpha"}, {"order.beta", "--beta"}, {"model.b", "--b"}, {"output.path", "-o,--output"}};

struct ConfigOptions {
  std::string file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  bool normalize = false;
  CLI::Option* normalize_opt = nullptr;
  std::string synthetic;
  CLI::Option* synthetic_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--config", file, "INI/TOML config file ([section] key = value)");
    for (const auto& key : tfse::config_keys()) {
      std::string names = "--" + key;
      if (auto it = kAliases.find(key); it != kAliases.end()) names += "," + it->second;
      opts[key] = app->add_option(names, values[key], "overrides " + key);
    }
  }

  tfse::RunConfig build() const {
    tfse::ConfigMap file_map;
    if (!file.empty()) file_map = tfse::read_config_file(file);
    tfse::ConfigMap over;
    for (const auto& [key, opt] : opts)
      if (opt->count() > 0) over[key] = values.at(key);
    if (normalize_opt && normalize_opt->count() > 0) over["output.normalize"] = normalize ? "true" : "false";
    if (synthetic_opt && synthetic_opt->count() > 0) over["regimes.synthetic"] = synthetic;
    return tfse::build_config(file_map, over);
  }
};

tfse::Complex parse_z(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw tfse::ConfigError("z must be 'x' or 'x,y', got '" + s + "'");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Edge currents and mean-square displacement for the time-fractional Schrodinger equation"};
  app.require_subcommand(1);

  auto* ml = app.add_subcommand("ml-eval", "Evaluate E_{alpha,sigma}(z) at the given points");
  double ml_alpha = 0.5, ml_sigma = 1.0, ml_tol = 1e-12;
  std::vector<std::string> zs;
  std::string ml_out;
  ml->add_option("--alpha", ml_alpha, "alpha in (0,1]")->capture_default_str();
  ml->add_option("--sigma", ml_sigma, "sigma > 0")->capture_default_str();
  ml->add_option("--rel-tol", ml_tol, "target relative accuracy")->capture_default_str();
  ml->add_option("-o,--output", ml_out, "CSV path (stdout by default)");
  ml->add_option("z", zs, "points as x or x,y")->required();

  ConfigOptions spec_opts, cur_opts, msd_opts, reg_opts, ver_opts;
  auto* spectrum = app.add_subcommand("spectrum", "Dump lambda1, lambda1' and Phi on a k grid");
  spec_opts.attach(spectrum);
  auto* current = app.add_subcommand("current", "Edge current trace, exact and asymptotic");
  cur_opts.attach(current);
  auto* msd = app.add_subcommand("msd", "Mean-square displacement trace with its four terms");
  msd_opts.attach(msd);
  msd_opts.normalize_opt = msd->add_flag("--normalize", msd_opts.normalize, "divide by ||u0||^2");
  auto* regimes = app.add_subcommand("regimes", "Sweep beta around alpha and fit the transport exponents");
  reg_opts.attach(regimes);
  reg_opts.synthetic_opt =
      regimes->add_option("--synthetic", reg_opts.synthetic, "replace the current by t^p, exp(c*t) or const(c)");
  auto* verify = app.add_subcommand("verify", "Norm-bound certification and Caputo residual checks");
  ver_opts.attach(verify);

  CLI11_PARSE(app, argc, argv);

  if (ml->parsed()) {
    const tfse::MittagLeffler E({ml_alpha, ml_sigma}, tfse::MLAccuracy{ml_tol});
    tfse::CsvTable t{{"z_re", "z_im", "E_re", "E_im", "log_abs"}, {}};
    for (const auto& s : zs) {
      const tfse::Complex z = parse_z(s);
      const tfse::ScaledComplex v = E.scaled(z);
      const bool fits = v.representable();
      const tfse::Complex e = fits ? v.value() : tfse::Complex(NAN, NAN);
      t.add_row({tfse::format_real(z.real()), tfse::format_real(z.imag()), tfse::format_real(e.real()),
                 tfse::format_real(e.imag()), tfse::format_real(v.log_abs())});
    }
    tfse::write_csv(t, ml_out);
    return 0;
  }
  if (spectrum->parsed()) {
    const auto cfg = spec_opts.build();
    tfse::write_csv(tfse::spectrum_table(cfg), cfg.output_path);
    return 0;
  }
  if (current->parsed()) {
    const auto cfg = cur_opts.build();
    tfse::write_csv(tfse::current_table(cfg), cfg.output_path);
    return 0;
  }
  if (msd->parsed()) {
    const auto cfg = msd_opts.build();
    tfse::write_csv(tfse::msd_table(cfg), cfg.output_path);
    return 0;
  }
  if (regimes->parsed()) {
    const auto cfg = reg_opts.build();
    const auto report = tfse::run_regimes(cfg);
    tfse::write_csv(tfse::regimes_table(report), cfg.output_path);
    for (const auto& r : report.rows)
      std::cerr << "beta=" << r.beta << " " << r.predicted.name() << ": " << (r.pass ? "pass" : "FAIL") << " ("
                << r.detail << ")\n";
    return 0;
  }
  const auto cfg = ver_opts.build();
  const auto rows = tfse::run_verify(cfg);
  tfse::write_csv(tfse::verify_table(rows), cfg.output_path);
  bool ok = true;
  for (const auto& r : rows) {
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.check << " = " << r.value << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tfse::Error& e) {
    std::cerr << "tfse: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tfse: internal error: " << e.what() << "\n";
    return 3;
  }
}
