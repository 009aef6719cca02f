#include "exolim/config.hpp"

#include "exolim/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <string_view>

namespace exolim {

namespace {

constexpr auto kKnownKeys = std::to_array<std::string_view>({
    "csl.correlation_length_m",
    "csl.charge_sq_over_4pi",
    "exposure.detector_mass_kg",
    "exposure.atomic_mass_g_per_mol",
    "exposure.emitting_electrons_per_atom",
    "exposure.atomic_number",
    "exposure.live_time_days",
    "spectrum.unit",
    "spectrum.empty_sigma",
    "fit.range",
    "fit.cl",
    "fit.coupling",
    "fit.bin_model",
    "fit.variance",
    "fit.allow_relativistic",
    "rs.current_amp",
    "rs.time_on_s",
    "rs.time_off_s",
    "rs.strip_length_m",
    "rs.mean_free_path_m",
    "rs.capture_fraction",
    "rs.detection_efficiency",
    "rs.geometric_acceptance",
    "rs.roi_center_kev",
    "rs.roi_half_width_kev",
    "rs.n_sigma",
    "rs.resolution_fwhm_kev",
    "sim.preset",
    "sim.e_min",
    "sim.e_max",
    "sim.bin_width",
    "sim.resolution_fwhm_kev",
    "sim.lines",
    "sim.flat",
    "sim.one_over_e",
    "sim.seed",
    "sim.poisson",
    "sim.sigma",
    "sim.forbidden_intensity",
    "sim.kalpha_intensity",
    "sim.kbeta_intensity",
    "sim.label",
    "convert.unit",
    "convert.coupling",
    "output.residuals",
    "output.pretty",
});

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_known(std::string_view key) {
  return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

double to_double(std::string_view text, const std::string& what) {
  text = trim(text);
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc{} || ptr != last)
    throw ConfigError("cannot parse " + what + " '" + std::string(text) + "' as a number");
  return v;
}

} // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!is_known(key)) throw ParseError("unknown configuration key '" + key + "'", line_no);
    cfg.values_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void KeyValueConfig::set(const std::string& key, std::string value) {
  if (!is_known(key)) throw ConfigError("unknown configuration key '" + key + "'");
  values_[key] = std::move(value);
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  return to_double(*v, key);
}

std::optional<bool> KeyValueConfig::get_bool(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError("cannot parse " + key + " '" + *v + "' as a boolean");
}

std::optional<std::uint64_t> KeyValueConfig::get_uint(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (v->empty() || ec != std::errc{} || ptr != v->data() + v->size())
    throw ConfigError("cannot parse " + key + " '" + *v + "' as an unsigned integer");
  return out;
}

double KeyValueConfig::require_double(const std::string& key) const {
  const auto v = get_double(key);
  if (!v) throw ConfigError("missing required configuration key '" + key + "'");
  return *v;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("range must be LO:HI, got '" + text + "'");
  const double lo = to_double(std::string_view(text).substr(0, colon), "range low edge");
  const double hi = to_double(std::string_view(text).substr(colon + 1), "range high edge");
  if (!(lo < hi)) throw ConfigError("range needs LO < HI, got '" + text + "'");
  return {lo, hi};
}

CslParams csl_params_from(const KeyValueConfig& cfg) {
  CslParams p;
  p.correlation_length_m = cfg.get_double_or("csl.correlation_length_m", p.correlation_length_m);
  p.charge_sq_over_4pi = cfg.get_double_or("csl.charge_sq_over_4pi", p.charge_sq_over_4pi);
  p.validate();
  return p;
}

ExposureConfig exposure_from(const KeyValueConfig& cfg) {
  ExposureConfig e;
  e.detector_mass_kg = cfg.require_double("exposure.detector_mass_kg");
  e.live_time_days = cfg.require_double("exposure.live_time_days");
  e.atomic_mass_g_per_mol = cfg.get_double_or("exposure.atomic_mass_g_per_mol", e.atomic_mass_g_per_mol);
  e.emitting_electrons_per_atom =
      cfg.get_double_or("exposure.emitting_electrons_per_atom", e.emitting_electrons_per_atom);
  e.atomic_number = cfg.get_double_or("exposure.atomic_number", e.atomic_number);
  e.validate();
  return e;
}

RsConfig rs_config_from(const KeyValueConfig& cfg) {
  RsConfig r;
  r.current_amp = cfg.require_double("rs.current_amp");
  r.time_on_s = cfg.require_double("rs.time_on_s");
  r.time_off_s = cfg.require_double("rs.time_off_s");
  r.strip_length_m = cfg.require_double("rs.strip_length_m");
  r.mean_free_path_m = cfg.require_double("rs.mean_free_path_m");
  r.detection_efficiency = cfg.require_double("rs.detection_efficiency");
  r.geometric_acceptance = cfg.require_double("rs.geometric_acceptance");
  r.roi_half_width_kev = cfg.require_double("rs.roi_half_width_kev");
  r.capture_fraction = cfg.get_double_or("rs.capture_fraction", r.capture_fraction);
  r.roi_center_kev = cfg.get_double_or("rs.roi_center_kev", r.roi_center_kev);
  r.n_sigma = cfg.get_double_or("rs.n_sigma", r.n_sigma);
  r.resolution_fwhm_kev = cfg.get_double("rs.resolution_fwhm_kev");
  (void)r.validate();
  return r;
}

namespace {

std::vector<Line> parse_lines(const std::string& text) {
  std::vector<Line> out;
  std::string_view rest = text;
  while (!trim(rest).empty()) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw ConfigError("sim.lines entries must be CENTER:INTENSITY");
    out.push_back({to_double(item.substr(0, colon), "line center"),
                   to_double(item.substr(colon + 1), "line intensity")});
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

} // namespace

SimConfig sim_config_from(const KeyValueConfig& cfg) {
  const std::string preset = cfg.get("sim.preset").value_or("generic");
  SimConfig s;
  if (preset == "vip-on" || preset == "vip-off") {
    VipSpectrumConfig vip;
    vip.binning.e_min = cfg.get_double_or("sim.e_min", vip.binning.e_min);
    vip.binning.e_max = cfg.get_double_or("sim.e_max", vip.binning.e_max);
    vip.binning.width = cfg.get_double_or("sim.bin_width", vip.binning.width);
    vip.resolution_fwhm_kev = cfg.get_double_or("sim.resolution_fwhm_kev", vip.resolution_fwhm_kev);
    vip.kalpha_intensity = cfg.get_double_or("sim.kalpha_intensity", vip.kalpha_intensity);
    vip.kbeta_intensity = cfg.get_double_or("sim.kbeta_intensity", vip.kbeta_intensity);
    vip.continuum_per_kev = cfg.get_double_or("sim.flat", vip.continuum_per_kev);
    s = vip_like_config(preset == "vip-on", cfg.get_double_or("sim.forbidden_intensity", 0.0), vip);
  } else if (preset == "generic") {
    s.binning.e_min = cfg.require_double("sim.e_min");
    s.binning.e_max = cfg.require_double("sim.e_max");
    s.binning.width = cfg.require_double("sim.bin_width");
    s.resolution_fwhm_kev = cfg.get_double_or("sim.resolution_fwhm_kev", s.resolution_fwhm_kev);
    if (auto l = cfg.get("sim.lines")) s.lines = parse_lines(*l);
    if (auto f = cfg.get_double("sim.flat")) s.continua.push_back(FlatContinuum{*f});
    if (auto a = cfg.get_double("sim.one_over_e")) s.continua.push_back(OneOverEContinuum{*a});
  } else {
    throw ConfigError("unknown sim.preset '" + preset + "' (generic, vip-on, vip-off)");
  }
  s.seed = cfg.get_uint("sim.seed").value_or(0);
  s.poisson = cfg.get_bool("sim.poisson").value_or(true);
  if (auto sg = cfg.get("sim.sigma")) s.sigma = parse_sigma_assignment(*sg);
  (void)s.validate();
  return s;
}

FitOptions fit_options_from(const KeyValueConfig& cfg) {
  FitOptions o;
  if (auto m = cfg.get("fit.bin_model")) o.bin_model = parse_bin_model(*m);
  if (auto v = cfg.get("fit.variance")) o.variance = parse_variance_model(*v);
  return o;
}

} // namespace exolim
