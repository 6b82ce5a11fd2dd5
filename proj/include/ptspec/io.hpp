#pragma once

// JSON and CSV forms of spectra, verification reports and contour samples.
// JSON uses ordered keys and shortest round-trip doubles so that parse +
// dump reproduces a written document byte for byte. CSV: comma separated,
// header row, LF endings, numeric payloads only.

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <sstream>
#include <string>

#include "ptspec/errors.hpp"
#include "ptspec/liouville.hpp"
#include "ptspec/models.hpp"
#include "ptspec/oracle.hpp"
#include "ptspec/spectra.hpp"
#include "ptspec/wavefun.hpp"

namespace ptspec {

using json = nlohmann::ordered_json;

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline cplx complex_from_json(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

inline json params_to_json(const ModelSpec& model) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, EckartParams>) return json{{"A", p.A}, {"beta", p.beta}};
        else if constexpr (std::is_same_v<P, PTParams>)
          return json{{"alpha", p.alpha}, {"beta", p.beta}, {"epsilon", p.epsilon}};
        else return json{{"alpha", p.alpha}, {"C", p.C}};
      },
      model);
}

inline ModelKind model_kind_from_name(const std::string& name) {
  if (name == "eckart") return ModelKind::eckart;
  if (name == "pt") return ModelKind::poschl_teller;
  if (name == "hulthen") return ModelKind::hulthen;
  throw error(errc::invalid_argument, "unknown model '" + name + "'");
}

inline ModelSpec model_from_json(const std::string& name, const json& params) {
  switch (model_kind_from_name(name)) {
    case ModelKind::eckart:
      return EckartParams{params.at("A").get<double>(), params.at("beta").get<double>()};
    case ModelKind::poschl_teller:
      return PTParams{params.at("alpha").get<double>(), params.at("beta").get<double>(),
                      params.at("epsilon").get<double>()};
    case ModelKind::hulthen:
      return HulthenParams{params.at("alpha").get<double>(), params.at("C").get<double>()};
  }
  throw error(errc::invalid_argument, "unknown model");
}

inline json optional_sign(std::optional<int> s) { return s ? json(*s) : json(nullptr); }

inline json level_to_json(const Level& level) {
  json internal = json::object();
  for (const auto& [name, value] : level.internal) internal[name] = complex_to_json(value);
  return json{{"N", level.N},
              {"sigma", optional_sign(level.sigma)},
              {"tau", optional_sign(level.tau)},
              {"energy", level.energy},
              {"internal", internal}};
}

inline Level level_from_json(ModelKind kind, const json& j) {
  Level level;
  level.model = kind;
  level.N = j.at("N").get<int>();
  if (!j.at("sigma").is_null()) level.sigma = j.at("sigma").get<int>();
  if (!j.at("tau").is_null()) level.tau = j.at("tau").get<int>();
  level.energy = j.at("energy").get<double>();
  for (const auto& [name, value] : j.at("internal").items()) level.internal[name] = complex_from_json(value);
  return level;
}

inline json spectrum_to_json(const Spectrum& s) {
  json levels = json::array();
  for (const auto& level : s.levels) levels.push_back(level_to_json(level));
  json counts = json::object();
  for (const auto& [key, count] : s.family_counts) counts[key] = count;
  return json{{"model", model_name(kind_of(s.model))},
              {"params", params_to_json(s.model)},
              {"levels", levels},
              {"family_counts", counts},
              {"notes", s.notes}};
}

inline Spectrum spectrum_from_json(const json& j) {
  Spectrum s;
  s.model = model_from_json(j.at("model").get<std::string>(), j.at("params"));
  const ModelKind kind = kind_of(s.model);
  for (const auto& level : j.at("levels")) s.levels.push_back(level_from_json(kind, level));
  for (const auto& [key, count] : j.at("family_counts").items()) s.family_counts[key] = count.get<int>();
  if (j.contains("notes")) s.notes = j.at("notes").get<std::vector<std::string>>();
  return s;
}

inline std::string spectrum_to_csv(const Spectrum& s) {
  std::ostringstream out;
  out << "N,sigma,tau,energy\n";
  for (const auto& l : s.levels)
    out << l.N << ',' << l.sigma.value_or(0) << ',' << l.tau.value_or(0) << ',' << format_double(l.energy) << '\n';
  return out.str();
}

inline json report_to_json(const VerificationReport& r, const ModelSpec& model) {
  json levels = json::array();
  for (const auto& c : r.levels) {
    json entry{{"N", c.level.N},
               {"sigma", optional_sign(c.level.sigma)},
               {"tau", optional_sign(c.level.tau)},
               {"analytic", c.level.energy}};
    if (c.numeric) {
      entry["numeric"] = complex_to_json(*c.numeric);
      entry["abs_error"] = c.abs_error;
    }
    if (c.iterations) entry["iterations"] = *c.iterations;
    if (c.residual) entry["residual"] = *c.residual;
    entry["passed"] = c.passed;
    if (!c.diagnostic.empty()) entry["diagnostic"] = c.diagnostic;
    levels.push_back(entry);
  }
  json out{{"model", model_name(kind_of(model))},
           {"params", params_to_json(model)},
           {"method", r.method},
           {"tolerance", r.tolerance},
           {"levels", levels},
           {"matched", r.n_passed()},
           {"total", static_cast<int>(r.levels.size())},
           {"max_abs_imag", r.max_abs_imag}};
  if (r.convergence_slope) out["convergence_slope"] = *r.convergence_slope;
  out["all_passed"] = r.all_passed();
  out["note"] = r.note;
  return out;
}

inline json liouville_report_to_json(const LiouvilleReport& r, double tol) {
  json per_level = json::array();
  for (const auto& entry : r.per_level) {
    per_level.push_back(json{{"N", entry.level.N},
                             {"sigma", optional_sign(entry.level.sigma)},
                             {"tau", optional_sign(entry.level.tau)},
                             {"kappa", entry.level.param("kappa").real()},
                             {"beta_eff", entry.level.param("beta_eff").real()},
                             {"max_deviation", entry.max_deviation}});
  }
  return json{{"max_deviation", r.max_deviation},
              {"n_samples", r.n_samples},
              {"per_level", per_level},
              {"level_independence", r.level_independence},
              {"tolerance", tol},
              {"passed", r.passed(tol)}};
}

inline std::string samples_to_csv(std::span<const WaveSample> samples) {
  std::ostringstream out;
  out << "t,ReXi,ImXi,RePsi,ImPsi,AbsPsi\n";
  for (const auto& s : samples)
    out << format_double(s.t) << ',' << format_double(s.xi.real()) << ',' << format_double(s.xi.imag())
        << ',' << format_double(s.psi.real()) << ',' << format_double(s.psi.imag()) << ','
        << format_double(std::abs(s.psi)) << '\n';
  return out.str();
}

inline std::string contour_to_csv(const ContourSpec& contour, std::span<const double> grid) {
  std::ostringstream out;
  out << "t,ReXi,ImXi\n";
  for (double t : grid) {
    const cplx xi = evaluate(contour, t).xi;
    out << format_double(t) << ',' << format_double(xi.real()) << ',' << format_double(xi.imag()) << '\n';
  }
  return out.str();
}

inline std::string potential_to_csv(const ModelSpec& model, const ContourSpec& contour,
                                    std::span<const double> grid) {
  std::ostringstream out;
  out << "t,ReV,ImV\n";
  for (double t : grid) {
    const cplx v = potential(model, evaluate(contour, t).xi);
    out << format_double(t) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
  }
  return out.str();
}

}  // namespace ptspec
