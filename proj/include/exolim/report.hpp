#ifndef EXOLIM_REPORT_HPP
#define EXOLIM_REPORT_HPP

#include "exolim/collapse.hpp"
#include "exolim/fit.hpp"
#include "exolim/pep.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <span>

namespace exolim {

using Json = nlohmann::ordered_json;

/// {alpha_hat, sigma_alpha, chi2, ndf, alpha_upper, confidence_level}
Json to_json(const FitResult& fit);

struct LambdaLimit {
  double lambda_limit = 0.0; ///< s^-1
  Coupling coupling = Coupling::NonMassProportional;
  double confidence_level = 0.0;
  double alpha_upper = 0.0;
};

/// {"lambda_limit_s^-1", coupling, confidence_level, alpha_upper}
Json to_json(const LambdaLimit& limit);
Json to_json(const ExposureConfig& exposure);
Json to_json(const CslParams& params);

/// Every factor of the bound, so the arithmetic can be redone by hand.
Json to_json(const PepLimit& limit);
Json to_json(const PepAnalysis& analysis);

/// e_center_kev,data,model,pull
void write_residuals_csv(std::span<const Residual> rows, std::ostream& out);

} // namespace exolim

#endif
