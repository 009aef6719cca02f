#include "exolim/cli.hpp"

#include "exolim/collapse.hpp"
#include "exolim/constants.hpp"
#include "exolim/config.hpp"
#include "exolim/fit.hpp"
#include "exolim/pep.hpp"
#include "exolim/report.hpp"
#include "exolim/simulate.hpp"
#include "exolim/spectrum.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace exolim::cli {

namespace {

struct Options {
  std::string config;
  std::string input;
  std::string on;
  std::string off;
  std::string output;
  std::string residuals;
  std::optional<double> cl;
  std::optional<std::uint64_t> seed;
  std::string coupling;
  std::string range;
  std::string unit;
  std::optional<double> alpha;
  std::optional<double> lambda;
  std::vector<std::string> overrides;
};

// Defaults < config file < --set < dedicated flags.
KeyValueConfig build_config(const Options& o) {
  KeyValueConfig cfg = o.config.empty() ? KeyValueConfig{} : KeyValueConfig::load(o.config);
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.cl) cfg.set("fit.cl", std::to_string(*o.cl));
  if (o.seed) cfg.set("sim.seed", std::to_string(*o.seed));
  if (!o.coupling.empty()) {
    cfg.set("fit.coupling", o.coupling);
    cfg.set("convert.coupling", o.coupling);
  }
  if (!o.range.empty()) cfg.set("fit.range", o.range);
  if (!o.unit.empty()) cfg.set("convert.unit", o.unit);
  return cfg;
}

std::vector<Coupling> couplings_from(const std::string& tag) {
  if (tag == "both") return {Coupling::NonMassProportional, Coupling::MassProportional};
  return {parse_coupling(tag)};
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write output file '" + path + "'");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

double confidence_level(const KeyValueConfig& cfg) {
  const double cl = cfg.get_double_or("fit.cl", kDefaultConfidenceLevel);
  if (!(cl > 0.5 && cl < 1.0)) throw ConfigError("fit.cl must lie in (0.5, 1)");
  return cl;
}

int cmd_fit_collapse(const Options& o, std::ostream& out) {
  const KeyValueConfig cfg = build_config(o);
  CsvOptions csv;
  csv.empty_sigma = cfg.get_double_or("spectrum.empty_sigma", kEmptyBinSigma);
  BinnedSpectrum raw = load_spectrum(o.input, csv);
  if (auto u = cfg.get("spectrum.unit"))
    raw = BinnedSpectrum({raw.bins().begin(), raw.bins().end()}, raw.exposure(),
                         parse_spectrum_unit(*u), raw.label());

  const auto [lo, hi] = parse_range(cfg.get("fit.range").value_or("4.5:48.5"));
  if (hi > kNonRelativisticLimitKev && !cfg.get_bool("fit.allow_relativistic").value_or(false))
    throw DomainError("fit range extends above the non-relativistic bound of 100 keV");

  const CslParams model = csl_params_from(cfg);
  const ExposureConfig exposure = exposure_from(cfg);
  const FitOptions fit_opts = fit_options_from(cfg);
  const double cl = confidence_level(cfg);
  const auto couplings = couplings_from(cfg.get("fit.coupling").value_or("both"));

  const BinnedSpectrum integrated = to_bin_integrated(raw);
  const BinnedSpectrum selected = select_range(integrated, lo, hi);
  const FitResult fit = with_upper_limit(fit_one_over_e(selected, fit_opts), cl);

  Json doc;
  doc["command"] = "fit-collapse";
  doc["spectrum"] = {{"label", raw.label()},
                     {"unit", std::string(to_string(integrated.unit()))},
                     {"range_kev", {lo, hi}},
                     {"bins", selected.size()}};
  Json fit_json = to_json(fit);
  fit_json["bin_model"] = std::string(to_string(fit_opts.bin_model));
  fit_json["variance"] = std::string(to_string(fit_opts.variance));
  doc["fit"] = fit_json;
  doc["csl"] = to_json(model);
  doc["exposure"] = to_json(exposure);
  Json limits = Json::array();
  for (const Coupling c : couplings) {
    CslParams m = model;
    m.coupling = c;
    LambdaLimit l{lambda_from_alpha(*fit.alpha_upper, m, exposure, integrated.unit()), c, cl,
                  *fit.alpha_upper};
    limits.push_back(to_json(l));
  }
  doc["limits"] = limits;

  std::string residual_path = o.residuals;
  if (residual_path.empty()) residual_path = cfg.get("output.residuals").value_or("");
  if (residual_path.empty() && !o.output.empty()) residual_path = o.output + ".residuals.csv";
  if (!residual_path.empty()) {
    std::ostringstream csv_text;
    const auto rows = residuals(selected, fit, fit_opts.bin_model);
    write_residuals_csv(rows, csv_text);
    write_text(residual_path, csv_text.str(), out);
  }
  write_text(o.output, dump(doc), out);
  return kOk;
}

BinnedSpectrum load_for_pep(const std::string& path, const KeyValueConfig& cfg) {
  CsvOptions csv;
  csv.empty_sigma = cfg.get_double_or("spectrum.empty_sigma", kEmptyBinSigma);
  return load_spectrum(path, csv);
}

int cmd_pep_limit(const Options& o, std::ostream& out) {
  const KeyValueConfig cfg = build_config(o);
  const RsConfig rs = rs_config_from(cfg);
  const BinnedSpectrum on = load_for_pep(o.on, cfg);
  const BinnedSpectrum off = load_for_pep(o.off, cfg);
  const PepAnalysis analysis = analyze_pep(on, off, rs);

  Json doc;
  doc["command"] = "pep-limit";
  doc["roi_kev"] = {rs.roi_center_kev - rs.roi_half_width_kev,
                    rs.roi_center_kev + rs.roi_half_width_kev};
  const Json body = to_json(analysis);
  for (const auto& [k, v] : body.items()) doc[k] = v;
  write_text(o.output, dump(doc), out);
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const KeyValueConfig cfg = build_config(o);
  const SimConfig sim = sim_config_from(cfg);
  for (const auto& w : sim.validate()) err << Json{{"warning", w}}.dump() << '\n';
  BinnedSpectrum spec = sample_spectrum(sim);
  spec = spec.with_label(cfg.get("sim.label").value_or(std::string(spec.label())));
  std::ostringstream text;
  write_spectrum_csv(spec, text);
  write_text(o.output, text.str(), out);
  return kOk;
}

int cmd_convert(const Options& o, std::ostream& out) {
  if (o.alpha.has_value() == o.lambda.has_value())
    throw ConfigError("convert needs exactly one of --alpha or --lambda");
  const KeyValueConfig cfg = build_config(o);
  CslParams model = csl_params_from(cfg);
  model.coupling = parse_coupling(cfg.get("convert.coupling").value_or("nmp"));
  const ExposureConfig exposure = exposure_from(cfg);
  const SpectrumUnit unit = parse_spectrum_unit(cfg.get("convert.unit").value_or("counts"));

  Json doc;
  doc["command"] = "convert";
  doc["coupling"] = std::string(to_string(model.coupling));
  doc["unit"] = std::string(to_string(unit));
  if (o.alpha) {
    doc["alpha"] = *o.alpha;
    doc["lambda_s^-1"] = lambda_from_alpha(*o.alpha, model, exposure, unit);
  } else {
    model.lambda_rate = *o.lambda;
    doc["lambda_s^-1"] = *o.lambda;
    doc["alpha"] = alpha_from_lambda(model, exposure, unit);
  }
  write_text(o.output, dump(doc), out);
  return kOk;
}

int cmd_constants(const Options& o, std::ostream& out) {
  const Json doc = default_constants().to_json();
  write_text(o.output, dump(doc), out);
  return kOk;
}

void report_error(std::ostream& err, ErrorKind kind, const std::string& message, int code) {
  Json j;
  j["error"] = {{"kind", to_string(kind)}, {"message", message}, {"exit_code", code}};
  err << j.dump() << '\n';
}

} // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::Io: return kIoFailure;
  case ErrorKind::Numerical: return kNumericalFailure;
  case ErrorKind::Parse:
  case ErrorKind::Validation:
  case ErrorKind::Domain:
  case ErrorKind::Config: return kValidationFailure;
  }
  return kValidationFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collapse-rate and Pauli-violation limit toolkit", "exolim"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "key = value run configuration");
    sub->add_option("--output", o.output, "result file (default: standard output)");
    sub->add_option("--set", o.overrides, "override a configuration key, key=value");
  };

  auto* fit = app.add_subcommand("fit-collapse", "fit alpha/E to a spectrum and bound lambda");
  add_common(fit);
  fit->add_option("--input", o.input, "spectrum CSV")->required();
  fit->add_option("--residuals", o.residuals, "residual CSV path");
  fit->add_option("--cl", o.cl, "confidence level of the upper limit");
  fit->add_option("--coupling", o.coupling, "nmp, mp or both")
      ->check(CLI::IsMember({"nmp", "mp", "both"}));
  fit->add_option("--range", o.range, "fit range LO:HI in keV");

  auto* pep = app.add_subcommand("pep-limit", "current-on/off bound on beta^2/2");
  add_common(pep);
  pep->add_option("--on", o.on, "current-on spectrum CSV")->required();
  pep->add_option("--off", o.off, "current-off spectrum CSV")->required();

  auto* sim = app.add_subcommand("simulate", "write a synthetic spectrum CSV");
  add_common(sim);
  sim->add_option("--seed", o.seed, "64-bit seed");

  auto* conv = app.add_subcommand("convert", "convert between alpha and lambda");
  add_common(conv);
  auto* a_opt = conv->add_option("--alpha", o.alpha, "amplitude of alpha/E");
  auto* l_opt = conv->add_option("--lambda", o.lambda, "collapse rate in 1/s");
  a_opt->excludes(l_opt);
  conv->add_option("--coupling", o.coupling, "nmp or mp")->check(CLI::IsMember({"nmp", "mp"}));
  conv->add_option("--unit", o.unit, "spectrum unit tag of alpha");

  auto* consts = app.add_subcommand("constants", "print the physical constants as JSON");
  consts->add_option("--output", o.output, "result file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, ErrorKind::Config, e.what(), kUsage);
    return kUsage;
  }

  try {
    if (fit->parsed()) return cmd_fit_collapse(o, out);
    if (pep->parsed()) return cmd_pep_limit(o, out);
    if (sim->parsed()) return cmd_simulate(o, out, err);
    if (conv->parsed()) return cmd_convert(o, out);
    if (consts->parsed()) return cmd_constants(o, out);
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    report_error(err, e.kind(), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report_error(err, ErrorKind::Numerical, e.what(), kNumericalFailure);
    return kNumericalFailure;
  }
  return kUsage;
}

} // namespace exolim::cli
