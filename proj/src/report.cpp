#include "exolim/report.hpp"

#include <array>
#include <charconv>
#include <ostream>
#include <string>

namespace exolim {

namespace {

std::string fmt(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

} // namespace

Json to_json(const FitResult& fit) {
  Json j;
  j["alpha_hat"] = fit.alpha_hat;
  j["sigma_alpha"] = fit.sigma_alpha;
  j["chi2"] = fit.chi2;
  j["ndf"] = fit.ndf;
  j["reduced_chi2"] = fit.reduced_chi2();
  j["alpha_upper"] = fit.alpha_upper ? Json(*fit.alpha_upper) : Json(nullptr);
  j["confidence_level"] = fit.confidence_level ? Json(*fit.confidence_level) : Json(nullptr);
  return j;
}

Json to_json(const LambdaLimit& limit) {
  Json j;
  j["lambda_limit_s^-1"] = limit.lambda_limit;
  j["coupling"] = std::string(to_string(limit.coupling));
  j["confidence_level"] = limit.confidence_level;
  j["alpha_upper"] = limit.alpha_upper;
  return j;
}

Json to_json(const ExposureConfig& e) {
  Json j;
  j["detector_mass_kg"] = e.detector_mass_kg;
  j["atomic_mass_g_per_mol"] = e.atomic_mass_g_per_mol;
  j["emitting_electrons_per_atom"] = e.emitting_electrons_per_atom;
  j["atomic_number"] = e.atomic_number;
  j["live_time_days"] = e.live_time_days;
  return j;
}

Json to_json(const CslParams& p) {
  Json j;
  j["correlation_length_m"] = p.correlation_length_m;
  j["charge_sq_over_4pi"] = p.charge_sq_over_4pi;
  return j;
}

Json to_json(const PepLimit& l) {
  Json j;
  j["signal_upper_counts"] = l.signal_upper_counts;
  j["n_sigma"] = l.n_sigma;
  j["n_new_electrons"] = l.n_new_electrons;
  j["n_interactions"] = l.n_interactions;
  j["capture_fraction"] = l.capture_fraction;
  j["detection_efficiency"] = l.detection_efficiency;
  j["geometric_acceptance"] = l.geometric_acceptance;
  j["beta2_over_2"] = l.beta2_over_2;
  return j;
}

Json to_json(const PepAnalysis& a) {
  Json j;
  j["on_roi"] = {{"counts", a.on.counts}, {"sigma", a.on.sigma}};
  j["off_roi"] = {{"counts", a.off.counts}, {"sigma", a.off.sigma}};
  j["normalization_ratio"] = a.ratio;
  j["excess"] = a.excess;
  j["excess_sigma"] = a.excess_sigma;
  j["excess_significant"] = a.excess_significant;
  j["limit"] = to_json(a.limit);
  j["warnings"] = a.warnings;
  return j;
}

void write_residuals_csv(std::span<const Residual> rows, std::ostream& out) {
  out << "e_center_kev,data,model,pull\n";
  for (const auto& r : rows)
    out << fmt(r.e_center) << ',' << fmt(r.data) << ',' << fmt(r.model) << ',' << fmt(r.pull)
        << '\n';
}

} // namespace exolim
