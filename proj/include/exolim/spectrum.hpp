#ifndef EXOLIM_SPECTRUM_HPP
#define EXOLIM_SPECTRUM_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace exolim {

/// One energy bin. `counts` may be negative only inside a SubtractedSpectrum.
struct Bin {
  double e_low = 0.0;
  double e_high = 0.0;
  double counts = 0.0;
  double sigma = 0.0;

  double width() const noexcept { return e_high - e_low; }
  double center() const noexcept { return 0.5 * (e_low + e_high); }
  bool operator==(const Bin&) const = default;
};

/// Normalization convention of the bin contents. The per-keV variants are
/// densities; every other variant is bin-integrated.
enum class SpectrumUnit {
  Counts,
  CountsPerDay,
  CountsPerKgDay,
  CountsPerKev,
  CountsPerKevDay,
  CountsPerKevKgDay,
};

/// Throws ConfigError for an unknown tag.
SpectrumUnit parse_spectrum_unit(std::string_view tag);
std::string_view to_string(SpectrumUnit unit) noexcept;
bool is_per_kev(SpectrumUnit unit) noexcept;
/// The bin-integrated counterpart of a density unit (identity otherwise).
SpectrumUnit integrated_unit(SpectrumUnit unit) noexcept;

struct Exposure {
  std::optional<double> live_time_days;
  std::optional<double> mass_kg;
  bool operator==(const Exposure&) const = default;
};

/// Default uncertainty assigned to an empty bin of raw Poisson counts.
inline constexpr double kEmptyBinSigma = 1.0;

/// Immutable energy-binned spectrum.
///
/// Bins are strictly increasing and non-overlapping with e_low < e_high.
/// Counts are non-negative, sigmas non-negative, everything finite.
class BinnedSpectrum {
public:
  BinnedSpectrum() = default;
  explicit BinnedSpectrum(std::vector<Bin> bins, Exposure exposure = {},
                          SpectrumUnit unit = SpectrumUnit::Counts, std::string label = {});

  /// Raw Poisson counts on the given edges; sigma = sqrt(n), or
  /// `empty_sigma` for n == 0.
  static BinnedSpectrum from_counts(std::span<const double> edges, std::span<const double> counts,
                                    double empty_sigma = kEmptyBinSigma);

  std::span<const Bin> bins() const noexcept { return bins_; }
  std::size_t size() const noexcept { return bins_.size(); }
  bool empty() const noexcept { return bins_.empty(); }
  const Bin& operator[](std::size_t i) const { return bins_[i]; }

  const Exposure& exposure() const noexcept { return exposure_; }
  SpectrumUnit unit() const noexcept { return unit_; }
  const std::string& label() const noexcept { return label_; }

  double total_counts() const noexcept;

  BinnedSpectrum with_label(std::string label) const;

  bool operator==(const BinnedSpectrum&) const = default;

private:
  std::vector<Bin> bins_;
  Exposure exposure_;
  SpectrumUnit unit_ = SpectrumUnit::Counts;
  std::string label_;
};

/// on - ratio * off, bin by bin, with propagated uncertainties.
class SubtractedSpectrum {
public:
  SubtractedSpectrum(std::vector<Bin> bins, double normalization_ratio)
      : bins_(std::move(bins)), ratio_(normalization_ratio) {}

  std::span<const Bin> bins() const noexcept { return bins_; }
  std::size_t size() const noexcept { return bins_.size(); }
  const Bin& operator[](std::size_t i) const { return bins_[i]; }
  double normalization_ratio() const noexcept { return ratio_; }

private:
  std::vector<Bin> bins_;
  double ratio_;
};

struct RoiCounts {
  double counts = 0.0;
  double sigma = 0.0;
};

struct CsvOptions {
  /// Sigma used for empty bins when the file has no sigma column.
  double empty_sigma = kEmptyBinSigma;
};

/// Reads the CSV spectrum format:
///
///   # mass_kg=2.0
///   # live_time_days=30
///   # unit=counts
///   e_low_kev,e_high_kev,counts[,sigma]
///   4.5,5.5,21
///
/// Errors name the offending line.
BinnedSpectrum load_spectrum(const std::filesystem::path& path, const CsvOptions& opts = {});
BinnedSpectrum parse_spectrum_csv(std::istream& in, const CsvOptions& opts = {});

/// Writes shortest round-trip representations, so load(save(s)) == s exactly.
void save_spectrum(const BinnedSpectrum& spec, const std::filesystem::path& path);
void write_spectrum_csv(const BinnedSpectrum& spec, std::ostream& out);

/// Bins fully inside [lo, hi]; edges untouched. Throws ValidationError when
/// nothing is selected.
BinnedSpectrum select_range(const BinnedSpectrum& spec, double lo, double hi);

/// Per-keV densities multiplied by bin width; already-integrated spectra pass
/// through unchanged.
BinnedSpectrum to_bin_integrated(const BinnedSpectrum& spec);

/// value_i = on_i - ratio*off_i, sigma_i^2 = sigma_on_i^2 + ratio^2 sigma_off_i^2.
SubtractedSpectrum subtract(const BinnedSpectrum& on, const BinnedSpectrum& off, double ratio);

/// Sum over bins fully inside [center - half_width, center + half_width].
RoiCounts counts_in_roi(std::span<const Bin> bins, double center, double half_width);
inline RoiCounts counts_in_roi(const BinnedSpectrum& s, double center, double half_width) {
  return counts_in_roi(s.bins(), center, half_width);
}
inline RoiCounts counts_in_roi(const SubtractedSpectrum& s, double center, double half_width) {
  return counts_in_roi(s.bins(), center, half_width);
}

} // namespace exolim

#endif
