#include "exolim/spectrum.hpp"

#include "exolim/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace exolim {

namespace {

// Bin edges produced by e_min + i*width drift by a few ulps.
constexpr double kEdgeTolerance = 1e-9;

struct UnitName {
  SpectrumUnit unit;
  std::string_view tag;
};

constexpr std::array<UnitName, 6> kUnitNames{{
    {SpectrumUnit::Counts, "counts"},
    {SpectrumUnit::CountsPerDay, "counts/day"},
    {SpectrumUnit::CountsPerKgDay, "counts/(kg*day)"},
    {SpectrumUnit::CountsPerKev, "counts/keV"},
    {SpectrumUnit::CountsPerKevDay, "counts/(keV*day)"},
    {SpectrumUnit::CountsPerKevKgDay, "counts/(keV*kg*day)"},
}};

void validate_bin(const Bin& b, std::size_t index, bool allow_negative, std::size_t line) {
  const std::string where = line ? std::string{} : "bin " + std::to_string(index) + ": ";
  if (!std::isfinite(b.e_low) || !std::isfinite(b.e_high) || !std::isfinite(b.counts) ||
      !std::isfinite(b.sigma))
    throw ValidationError(where + "non-finite entry", line);
  if (!(b.e_low < b.e_high))
    throw ValidationError(where + "e_low must be below e_high", line);
  if (!allow_negative && b.counts < 0.0)
    throw ValidationError(where + "negative counts", line);
  if (b.sigma < 0.0)
    throw ValidationError(where + "negative sigma", line);
}

void validate_order(const Bin& prev, const Bin& next, std::size_t index, std::size_t line) {
  if (next.e_low < prev.e_high - kEdgeTolerance) {
    const std::string where = line ? std::string{} : "bin " + std::to_string(index) + ": ";
    throw ValidationError(where + "bins must be strictly increasing and non-overlapping", line);
  }
}

double poisson_sigma(double counts, double empty_sigma) {
  return counts > 0.0 ? std::sqrt(counts) : empty_sigma;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line, const char* column) {
  field = trim(field);
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc{} || ptr != last)
    throw ParseError(std::string("cannot parse ") + column + " '" + std::string(field) + "'", line);
  return value;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(',', start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

} // namespace

SpectrumUnit parse_spectrum_unit(std::string_view tag) {
  for (const auto& u : kUnitNames)
    if (u.tag == tag) return u.unit;
  // Accept a few compact aliases used in config files.
  if (tag == "counts_per_day") return SpectrumUnit::CountsPerDay;
  if (tag == "counts_per_kg_day") return SpectrumUnit::CountsPerKgDay;
  if (tag == "counts_per_kev") return SpectrumUnit::CountsPerKev;
  if (tag == "counts_per_kev_day") return SpectrumUnit::CountsPerKevDay;
  if (tag == "counts_per_kev_kg_day") return SpectrumUnit::CountsPerKevKgDay;
  throw ConfigError("unknown spectrum unit '" + std::string(tag) + "'");
}

std::string_view to_string(SpectrumUnit unit) noexcept {
  for (const auto& u : kUnitNames)
    if (u.unit == unit) return u.tag;
  return "counts";
}

bool is_per_kev(SpectrumUnit unit) noexcept {
  return unit == SpectrumUnit::CountsPerKev || unit == SpectrumUnit::CountsPerKevDay ||
         unit == SpectrumUnit::CountsPerKevKgDay;
}

SpectrumUnit integrated_unit(SpectrumUnit unit) noexcept {
  switch (unit) {
  case SpectrumUnit::CountsPerKev: return SpectrumUnit::Counts;
  case SpectrumUnit::CountsPerKevDay: return SpectrumUnit::CountsPerDay;
  case SpectrumUnit::CountsPerKevKgDay: return SpectrumUnit::CountsPerKgDay;
  default: return unit;
  }
}

BinnedSpectrum::BinnedSpectrum(std::vector<Bin> bins, Exposure exposure, SpectrumUnit unit,
                               std::string label)
    : bins_(std::move(bins)), exposure_(exposure), unit_(unit), label_(std::move(label)) {
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    validate_bin(bins_[i], i, false, 0);
    if (i > 0) validate_order(bins_[i - 1], bins_[i], i, 0);
  }
  if (exposure_.live_time_days && !(*exposure_.live_time_days > 0.0))
    throw ValidationError("live_time_days must be positive");
  if (exposure_.mass_kg && !(*exposure_.mass_kg > 0.0))
    throw ValidationError("mass_kg must be positive");
}

BinnedSpectrum BinnedSpectrum::from_counts(std::span<const double> edges,
                                           std::span<const double> counts, double empty_sigma) {
  if (edges.size() != counts.size() + 1)
    throw ValidationError("need exactly one more edge than bins");
  std::vector<Bin> bins(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    bins[i] = {edges[i], edges[i + 1], counts[i], poisson_sigma(counts[i], empty_sigma)};
  return BinnedSpectrum(std::move(bins));
}

double BinnedSpectrum::total_counts() const noexcept {
  double sum = 0.0;
  for (const auto& b : bins_) sum += b.counts;
  return sum;
}

BinnedSpectrum BinnedSpectrum::with_label(std::string label) const {
  BinnedSpectrum copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

BinnedSpectrum parse_spectrum_csv(std::istream& in, const CsvOptions& opts) {
  Exposure exposure;
  SpectrumUnit unit = SpectrumUnit::Counts;
  std::string label;
  std::vector<Bin> bins;
  bool have_header = false;
  bool have_sigma = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty()) continue;

    if (line.front() == '#') {
      if (have_header) continue;
      line.remove_prefix(1);
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) continue;
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (key == "mass_kg") {
        exposure.mass_kg = parse_number(value, line_no, "mass_kg");
      } else if (key == "live_time_days") {
        exposure.live_time_days = parse_number(value, line_no, "live_time_days");
      } else if (key == "unit") {
        try {
          unit = parse_spectrum_unit(value);
        } catch (const ConfigError& e) {
          throw ParseError(e.what(), line_no);
        }
      } else if (key == "label") {
        label = std::string(value);
      }
      continue;
    }

    const auto fields = split_commas(line);
    if (!have_header) {
      if (fields.size() < 3 || fields.size() > 4 || fields[0] != "e_low_kev" ||
          fields[1] != "e_high_kev" || fields[2] != "counts" ||
          (fields.size() == 4 && fields[3] != "sigma"))
        throw ParseError("expected header 'e_low_kev,e_high_kev,counts[,sigma]'", line_no);
      have_header = true;
      have_sigma = fields.size() == 4;
      continue;
    }

    const std::size_t expected = have_sigma ? 4 : 3;
    if (fields.size() != expected)
      throw ParseError("expected " + std::to_string(expected) + " columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    Bin b;
    b.e_low = parse_number(fields[0], line_no, "e_low_kev");
    b.e_high = parse_number(fields[1], line_no, "e_high_kev");
    b.counts = parse_number(fields[2], line_no, "counts");
    b.sigma = have_sigma ? parse_number(fields[3], line_no, "sigma")
                         : poisson_sigma(b.counts, opts.empty_sigma);
    validate_bin(b, bins.size(), false, line_no);
    if (!bins.empty()) validate_order(bins.back(), b, bins.size(), line_no);
    bins.push_back(b);
  }
  if (!have_header) throw ParseError("missing header line", 0);
  if (exposure.live_time_days && !(*exposure.live_time_days > 0.0))
    throw ValidationError("live_time_days must be positive");
  if (exposure.mass_kg && !(*exposure.mass_kg > 0.0))
    throw ValidationError("mass_kg must be positive");
  return BinnedSpectrum(std::move(bins), exposure, unit, std::move(label));
}

BinnedSpectrum load_spectrum(const std::filesystem::path& path, const CsvOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open spectrum file '" + path.string() + "'");
  try {
    return parse_spectrum_csv(in, opts);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_spectrum_csv(const BinnedSpectrum& spec, std::ostream& out) {
  if (!spec.label().empty()) out << "# label=" << spec.label() << '\n';
  if (spec.exposure().mass_kg) out << "# mass_kg=" << format_double(*spec.exposure().mass_kg) << '\n';
  if (spec.exposure().live_time_days)
    out << "# live_time_days=" << format_double(*spec.exposure().live_time_days) << '\n';
  out << "# unit=" << to_string(spec.unit()) << '\n';
  out << "e_low_kev,e_high_kev,counts,sigma\n";
  for (const auto& b : spec.bins())
    out << format_double(b.e_low) << ',' << format_double(b.e_high) << ','
        << format_double(b.counts) << ',' << format_double(b.sigma) << '\n';
}

void save_spectrum(const BinnedSpectrum& spec, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write spectrum file '" + path.string() + "'");
  write_spectrum_csv(spec, out);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

BinnedSpectrum select_range(const BinnedSpectrum& spec, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("select_range needs lo < hi");
  std::vector<Bin> kept;
  for (const auto& b : spec.bins())
    if (b.e_low >= lo - kEdgeTolerance && b.e_high <= hi + kEdgeTolerance) kept.push_back(b);
  if (kept.empty())
    throw ValidationError("empty range: no bins fully inside [" + format_double(lo) + ", " +
                          format_double(hi) + "] keV");
  return BinnedSpectrum(std::move(kept), spec.exposure(), spec.unit(), spec.label());
}

BinnedSpectrum to_bin_integrated(const BinnedSpectrum& spec) {
  if (!is_per_kev(spec.unit())) return spec;
  std::vector<Bin> bins(spec.bins().begin(), spec.bins().end());
  for (auto& b : bins) {
    b.counts *= b.width();
    b.sigma *= b.width();
  }
  return BinnedSpectrum(std::move(bins), spec.exposure(), integrated_unit(spec.unit()),
                        spec.label());
}

SubtractedSpectrum subtract(const BinnedSpectrum& on, const BinnedSpectrum& off, double ratio) {
  if (!(ratio >= 0.0) || !std::isfinite(ratio))
    throw DomainError("normalization ratio must be finite and non-negative");
  if (on.size() != off.size())
    throw ValidationError("binning mismatch: " + std::to_string(on.size()) + " vs " +
                          std::to_string(off.size()) + " bins");
  std::vector<Bin> out(on.size());
  for (std::size_t i = 0; i < on.size(); ++i) {
    const Bin& a = on[i];
    const Bin& b = off[i];
    if (a.e_low != b.e_low || a.e_high != b.e_high)
      throw ValidationError("binning mismatch at bin " + std::to_string(i) + ": [" +
                            format_double(a.e_low) + ", " + format_double(a.e_high) + "] vs [" +
                            format_double(b.e_low) + ", " + format_double(b.e_high) + "]");
    out[i] = {a.e_low, a.e_high, a.counts - ratio * b.counts,
              std::sqrt(a.sigma * a.sigma + ratio * ratio * b.sigma * b.sigma)};
  }
  return SubtractedSpectrum(std::move(out), ratio);
}

RoiCounts counts_in_roi(std::span<const Bin> bins, double center, double half_width) {
  if (!(half_width > 0.0)) throw DomainError("ROI half width must be positive");
  const double lo = center - half_width;
  const double hi = center + half_width;
  RoiCounts roi;
  double var = 0.0;
  bool any = false;
  for (const auto& b : bins) {
    if (b.e_low >= lo - kEdgeTolerance && b.e_high <= hi + kEdgeTolerance) {
      roi.counts += b.counts;
      var += b.sigma * b.sigma;
      any = true;
    }
  }
  if (!any)
    throw ValidationError("empty ROI: no bins fully inside [" + format_double(lo) + ", " +
                          format_double(hi) + "] keV");
  roi.sigma = std::sqrt(var);
  return roi;
}

} // namespace exolim
