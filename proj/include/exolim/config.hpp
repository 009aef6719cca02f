#ifndef EXOLIM_CONFIG_HPP
#define EXOLIM_CONFIG_HPP

#include "exolim/collapse.hpp"
#include "exolim/fit.hpp"
#include "exolim/pep.hpp"
#include "exolim/simulate.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace exolim {

/// Flat `key = value` run configuration shared by all commands.
///
/// Lines starting with '#' are comments. Keys are dotted (`exposure.mass_kg`)
/// and must be known; an unknown key is reported with its line number so
/// typos do not silently fall back to defaults. Later assignments win, which
/// is also how command-line flags override the file.
class KeyValueConfig {
public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig load(const std::filesystem::path& path);

  void set(const std::string& key, std::string value);
  bool contains(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<std::string> get(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;
  std::optional<std::uint64_t> get_uint(const std::string& key) const;

  double require_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const {
    return get_double(key).value_or(fallback);
  }

  const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
  std::map<std::string, std::string> values_;
};

/// "LO:HI" in keV.
std::pair<double, double> parse_range(const std::string& text);

CslParams csl_params_from(const KeyValueConfig& cfg);
ExposureConfig exposure_from(const KeyValueConfig& cfg);
RsConfig rs_config_from(const KeyValueConfig& cfg);
SimConfig sim_config_from(const KeyValueConfig& cfg);
FitOptions fit_options_from(const KeyValueConfig& cfg);

} // namespace exolim

#endif
