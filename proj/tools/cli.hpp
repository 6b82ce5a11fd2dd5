#pragma once

// ptspec command-line front end. Exit codes: 0 success, 1 verification
// failure, 2 usage or validation error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptspec/ptspec.hpp"

namespace ptspec::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

struct RunConfig {
  std::string model;
  std::optional<double> A, alpha, beta, C;
  double epsilon = 0.5;
  int grid_n = 1500;
  std::optional<double> grid_L;
  std::optional<double> tol;
  double residual_tol = 1e-6;
  std::string format = "json";
  std::string out;
  std::string method;
  std::string what = "psi";
  int N = 0;
  std::optional<int> sigma, tau;
  bool arch = false;
  int n_samples = 100;
  std::string vary;
  std::string range;
  int jobs = 1;
  std::string config;
  std::uint64_t seed = default_seed;
};

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double require_value(const std::optional<double>& v, const char* flag, const std::string& model) {
  if (!v) throw usage_error(std::string("model '") + model + "' needs " + flag);
  return *v;
}

inline ModelSpec build_model(const RunConfig& cfg) {
  ModelSpec model;
  if (cfg.model == "eckart") {
    model = EckartParams{require_value(cfg.A, "--A", cfg.model), require_value(cfg.beta, "--beta", cfg.model)};
  } else if (cfg.model == "pt") {
    model = PTParams{require_value(cfg.alpha, "--alpha", cfg.model), require_value(cfg.beta, "--beta", cfg.model),
                     cfg.epsilon};
  } else if (cfg.model == "hulthen") {
    model = HulthenParams{require_value(cfg.alpha, "--alpha", cfg.model), require_value(cfg.C, "--C", cfg.model)};
  } else {
    throw usage_error("--model must be one of eckart, pt, hulthen");
  }
  try {
    validate(model);
    require_epsilon(cfg.epsilon);
  } catch (const error& e) {
    throw usage_error(e.what());
  }
  return model;
}

inline ContourSpec model_contour(const ModelSpec& model, const RunConfig& cfg) {
  ContourSpec c = natural_contour(model, cfg.epsilon);
  if (cfg.grid_L) std::visit([&](auto& x) { x.L = *cfg.grid_L; }, c);
  return c;
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw usage_error("cannot open output file '" + cfg.out + "'");
  file << text;
}

inline const Level& select_level(const Spectrum& s, const RunConfig& cfg) {
  for (const auto& level : s.levels) {
    if (level.N != cfg.N) continue;
    if (cfg.sigma && level.sigma != cfg.sigma) continue;
    if (cfg.tau && level.tau != cfg.tau) continue;
    return level;
  }
  std::ostringstream msg;
  msg << "no level N=" << cfg.N;
  if (cfg.sigma) msg << " sigma=" << *cfg.sigma;
  if (cfg.tau) msg << " tau=" << *cfg.tau;
  msg << " exists for these parameters";
  throw usage_error(msg.str());
}

struct SweepRange {
  double start, stop, step;

  std::vector<double> values() const {
    std::vector<double> out;
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    for (long long k = 0; k <= count; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
  }
};

inline SweepRange parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw usage_error("malformed range '" + text + "', expected start:stop:step");
    }
  }
  if (parts.size() != 3) throw usage_error("malformed range '" + text + "', expected start:stop:step");
  const SweepRange r{parts[0], parts[1], parts[2]};
  if (!(r.step > 0.0) || r.stop < r.start) throw usage_error("empty range '" + text + "'");
  return r;
}

// ---------------------------------------------------------------- subcommands

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelSpec model = build_model(cfg);
  const Spectrum s = levels(model);
  for (const auto& note : s.notes) err << "note: " << note << '\n';
  if (cfg.format == "csv") emit(cfg, spectrum_to_csv(s), out);
  else emit(cfg, spectrum_to_json(s).dump(2) + "\n", out);
  return exit_ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelSpec model = build_model(cfg);
  const bool hulthen = std::holds_alternative<HulthenParams>(model);
  std::string method = cfg.method.empty() ? (hulthen ? "residual" : "fd") : cfg.method;
  if (hulthen && method != "residual")
    throw usage_error("the Hulthen model is verified with --method residual only");
  const Spectrum s = levels(model);

  json reports = json::array();
  bool ok = true;
  if (method == "fd" || method == "both") {
    const ShiftedLine line{cfg.epsilon, cfg.grid_L.value_or(12.0)};
    GridSpec grid{line.L, cfg.grid_n};
    TridiagonalOperator op;
    try {
      op = discretize(model, line, grid);
    } catch (const error& e) {
      throw usage_error(e.what());
    }
    const VerificationReport r = match_levels(s, op, cfg.tol.value_or(1e-2), cfg.seed);
    ok = ok && r.all_passed();
    json j = report_to_json(r, model);
    j["grid"] = json{{"L", grid.L}, {"n", grid.n}, {"h", grid.h()}};
    j["seed"] = cfg.seed;
    reports.push_back(j);
  }
  if (method == "residual" || method == "both") {
    const double tol = method == "residual" ? cfg.tol.value_or(cfg.residual_tol) : cfg.residual_tol;
    const VerificationReport r = residual_levels(s, model_contour(model, cfg), tol);
    ok = ok && r.all_passed();
    reports.push_back(report_to_json(r, model));
  }
  emit(cfg, (reports.size() == 1 ? reports[0] : reports).dump(2) + "\n", out);
  if (!ok) err << "verification failed\n";
  return ok ? exit_ok : exit_failed;
}

inline int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.grid_n < 5) throw usage_error("--grid-n must be >= 5 for sampling");
  if (cfg.what == "contour") {
    require_epsilon(cfg.epsilon);
    ContourSpec c = cfg.arch ? ContourSpec{ArchContour{cfg.epsilon, cfg.grid_L.value_or(10.0)}}
                             : ContourSpec{ShiftedLine{cfg.epsilon, cfg.grid_L.value_or(12.0)}};
    const auto grid = symmetric_grid(contour_half_length(c), static_cast<std::size_t>(cfg.grid_n));
    emit(cfg, contour_to_csv(c, grid), out);
    return exit_ok;
  }
  const ModelSpec model = build_model(cfg);
  const ContourSpec contour = model_contour(model, cfg);
  const auto grid = symmetric_grid(contour_half_length(contour), static_cast<std::size_t>(cfg.grid_n));
  if (cfg.what == "potential") {
    emit(cfg, potential_to_csv(model, contour, grid), out);
    return exit_ok;
  }
  if (cfg.what != "psi") throw usage_error("--what must be one of potential, psi, contour");
  const Spectrum s = levels(model);
  const Level& level = select_level(s, cfg);
  emit(cfg, samples_to_csv(sample_psi(model, level, contour, grid)), out);
  return exit_ok;
}

inline ModelSpec with_parameter(RunConfig cfg, const std::string& name, double value) {
  if (name == "A") cfg.A = value;
  else if (name == "alpha") cfg.alpha = value;
  else if (name == "beta") cfg.beta = value;
  else if (name == "C") cfg.C = value;
  else if (name == "eps") cfg.epsilon = value;
  else throw usage_error("--vary must name one of A, alpha, beta, C, eps");
  return build_model(cfg);
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.vary.empty()) throw usage_error("sweep needs --vary");
  const SweepRange range = parse_range(cfg.range);
  const auto values = range.values();
  std::vector<ModelSpec> models;
  for (double v : values) models.push_back(with_parameter(cfg, cfg.vary, v));

  std::vector<Spectrum> spectra(models.size());
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t k = 0; k < models.size(); ++k) spectra[k] = levels(models[k]);
  } else {
    for (std::size_t begin = 0; begin < models.size(); begin += static_cast<std::size_t>(jobs)) {
      std::vector<std::future<Spectrum>> pending;
      const std::size_t end = std::min(models.size(), begin + static_cast<std::size_t>(jobs));
      for (std::size_t k = begin; k < end; ++k)
        pending.push_back(std::async(std::launch::async, [&models, k] { return levels(models[k]); }));
      for (std::size_t k = begin; k < end; ++k) spectra[k] = pending[k - begin].get();
    }
  }

  const bool families = cfg.model != "eckart";
  std::ostringstream csv;
  csv << "value,N,sigma,tau,energy,total";
  if (families) csv << ",n_mm,n_mp,n_pm,n_pp";
  csv << '\n';
  for (std::size_t k = 0; k < values.size(); ++k) {
    const Spectrum& s = spectra[k];
    std::string counts;
    if (families) {
      for (const auto& [sigma, tau] : quasi_parities) {
        const auto it = s.family_counts.find(family_key(sigma, tau));
        counts += "," + std::to_string(it == s.family_counts.end() ? 0 : it->second);
      }
    }
    const std::string head = format_double(values[k]);
    const std::string total = std::to_string(s.levels.size());
    if (s.levels.empty()) csv << head << ",-1,0,0,nan," << total << counts << '\n';
    for (const auto& l : s.levels)
      csv << head << ',' << l.N << ',' << l.sigma.value_or(0) << ',' << l.tau.value_or(0) << ','
          << format_double(l.energy) << ',' << total << counts << '\n';
  }
  emit(cfg, csv.str(), out);
  return exit_ok;
}

inline int cmd_liouville_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunConfig c = cfg;
  c.model = "hulthen";
  const ModelSpec model = build_model(c);
  if (cfg.n_samples < 1) throw usage_error("--n-samples must be >= 1");
  const double tol = cfg.tol.value_or(1e-9);
  const LiouvilleReport r =
      liouville_check(std::get<HulthenParams>(model), cfg.n_samples, cfg.epsilon, cfg.grid_L.value_or(10.0));
  emit(cfg, liouville_report_to_json(r, tol).dump(2) + "\n", out);
  if (!r.passed(tol)) err << "Liouville identity violated\n";
  return r.passed(tol) ? exit_ok : exit_failed;
}

// ---------------------------------------------------------------- wiring

inline void add_model_options(CLI::App* sub, RunConfig& cfg, bool need_model = true) {
  auto* m = sub->add_option("--model", cfg.model, "eckart | pt | hulthen");
  if (need_model) m->check(CLI::IsMember({"eckart", "pt", "hulthen"}));
  sub->add_option("--A", cfg.A, "Eckart singular strength A");
  sub->add_option("--alpha", cfg.alpha, "Poschl-Teller / Hulthen alpha");
  sub->add_option("--beta", cfg.beta, "Eckart imaginary coupling or Poschl-Teller beta");
  sub->add_option("--C", cfg.C, "Hulthen coupling C = A + B");
  sub->add_option("--eps", cfg.epsilon, "contour shift epsilon in (0, pi/2)");
}

inline void add_config_option(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--config", cfg.config, "JSON file of defaults; command-line flags take precedence");
}

/// Fills options not given on the command line from a JSON object keyed by flag name.
inline void merge_config(CLI::App* sub, const std::string& path) {
  std::ifstream file(path);
  if (!file) throw usage_error("cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(file);
  } catch (const std::exception& e) {
    throw usage_error(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw usage_error("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") throw usage_error("config key '" + key + "' is not a flag of this command");
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) text = value.get<std::string>();
    else if (value.is_boolean()) text = value.get<bool>() ? "true" : "false";
    else text = value.dump();
    opt->add_result(text);
    opt->run_callback();
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("PTSPEC_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "PTSPEC_SEED must be an unsigned integer\n";
      return exit_usage;
    }
  }

  CLI::App app{"PT-symmetric exactly solvable models: spectra, eigenfunctions, verification"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "closed-form bound-state spectrum");
  add_model_options(spectrum, cfg);
  spectrum->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
  spectrum->add_option("--out", cfg.out);
  add_config_option(spectrum, cfg);

  auto* verify = app.add_subcommand("verify", "finite-difference and residual verification");
  add_model_options(verify, cfg);
  verify->add_option("--method", cfg.method)->check(CLI::IsMember({"fd", "residual", "both"}));
  verify->add_option("--grid-n", cfg.grid_n, "interior grid points");
  verify->add_option("--grid-L", cfg.grid_L, "half-width of the t window");
  verify->add_option("--tol", cfg.tol, "pass tolerance of the chosen method");
  verify->add_option("--residual-tol", cfg.residual_tol, "residual tolerance when --method both");
  verify->add_option("--out", cfg.out);
  add_config_option(verify, cfg);

  auto* sample = app.add_subcommand("sample", "CSV samples of potentials, eigenfunctions or contours");
  add_model_options(sample, cfg, false);
  sample->add_option("--what", cfg.what)->check(CLI::IsMember({"potential", "psi", "contour"}));
  sample->add_option("--N", cfg.N);
  sample->add_option("--sigma", cfg.sigma)->check(CLI::IsMember({-1, 1}));
  sample->add_option("--tau", cfg.tau)->check(CLI::IsMember({-1, 1}));
  sample->add_flag("--arch", cfg.arch, "sample the arch instead of the shifted line");
  sample->add_option("--grid-n", cfg.grid_n, "number of sample points");
  sample->add_option("--grid-L", cfg.grid_L);
  sample->add_option("--out", cfg.out);
  add_config_option(sample, cfg);

  auto* sweep = app.add_subcommand("sweep", "level counts and energies across a parameter range");
  add_model_options(sweep, cfg);
  sweep->add_option("--vary", cfg.vary, "A | alpha | beta | C | eps");
  sweep->add_option("--range", cfg.range, "start:stop:step");
  sweep->add_option("--jobs", cfg.jobs);
  sweep->add_option("--out", cfg.out);
  add_config_option(sweep, cfg);

  auto* liouville = app.add_subcommand("liouville-check", "Poschl-Teller to Hulthen identity check");
  liouville->add_option("--alpha", cfg.alpha);
  liouville->add_option("--C", cfg.C);
  liouville->add_option("--eps", cfg.epsilon);
  liouville->add_option("--n-samples", cfg.n_samples);
  liouville->add_option("--grid-L", cfg.grid_L);
  liouville->add_option("--tol", cfg.tol);
  liouville->add_option("--out", cfg.out);
  add_config_option(liouville, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return exit_usage;
  }

  try {
    for (auto* sub : app.get_subcommands()) {
      if (!cfg.config.empty()) merge_config(sub, cfg.config);
      if (sub == spectrum) return cmd_spectrum(cfg, out, err);
      if (sub == verify) return cmd_verify(cfg, out, err);
      if (sub == sample) return cmd_sample(cfg, out, err);
      if (sub == sweep) return cmd_sweep(cfg, out, err);
      if (sub == liouville) return cmd_liouville_check(cfg, out, err);
    }
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace ptspec::cli
