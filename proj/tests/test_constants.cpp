#include "exolim/constants.hpp"
#include "exolim/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace exolim;

TEST_CASE("length_to_inverse_kev") {
  // hbar*c / keV
  CHECK(length_to_inverse_kev(0.1973269804e-9) == doctest::Approx(1.0).epsilon(1e-14));
  // Frozen from tests/oracles/hand_values.py.
  CHECK(length_to_inverse_kev(1e-7) == doctest::Approx(506.773071768).epsilon(1e-9));
  CHECK(length_to_inverse_kev(2e-7) == doctest::Approx(2.0 * length_to_inverse_kev(1e-7)).epsilon(1e-15));

  CHECK_THROWS_AS(length_to_inverse_kev(0.0), DomainError);
  CHECK_THROWS_AS(length_to_inverse_kev(-1e-7), DomainError);
}

TEST_CASE("length conversion round trip over [1e-12, 1] m") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> expo(-12.0, 0.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::pow(10.0, expo(gen));
    const double back = inverse_kev_to_length(length_to_inverse_kev(x));
    CHECK(std::abs(back - x) <= 1e-12 * x);
  }
}

TEST_CASE("fwhm_to_sigma") {
  const double k = 2.0 * std::sqrt(2.0 * std::log(2.0));
  CHECK(fwhm_to_sigma(k) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fwhm_to_sigma(0.320) == doctest::Approx(0.135891488046083).epsilon(1e-13));
  CHECK_THROWS_AS(fwhm_to_sigma(0.0), DomainError);
  CHECK_THROWS_AS(fwhm_to_sigma(-0.3), DomainError);

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(1e-3, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(gen);
    CHECK(fwhm_to_sigma(x) * k == doctest::Approx(x).epsilon(1e-14));
  }
}

TEST_CASE("constants sanity bounds") {
  const auto& c = default_constants();
  const double ratio = 1.0 / c.electron_nucleon_mass_ratio_sq();
  CHECK(ratio >= 3.35e6);
  CHECK(ratio <= 3.39e6);
  CHECK(c.electron_nucleon_mass_ratio_sq() == doctest::Approx(2.96607700096e-7).epsilon(1e-10));

  PhysicalConstants::Values bad;
  bad.electron_mass_kev = 0.511; // MeV by mistake
  CHECK_THROWS_AS(PhysicalConstants{bad}, ValidationError);
  bad = {};
  bad.fine_structure = 1.0 / 130.0;
  CHECK_THROWS_AS(PhysicalConstants{bad}, ValidationError);
  bad = {};
  bad.avogadro = -1.0;
  CHECK_THROWS_AS(PhysicalConstants{bad}, ValidationError);

  // The charge normalization used for the emission rate sits inside the
  // same sanity window as the fine-structure constant.
  PhysicalConstants::Values adler;
  adler.fine_structure = kChargeSqOver4PiAdler;
  CHECK_NOTHROW(PhysicalConstants{adler});
}

TEST_CASE("constants export as key -> {value, unit}") {
  const auto j = default_constants().to_json();
  CHECK(j.at("electron_mass").at("unit") == "keV");
  CHECK(j.at("electron_mass").at("value").get<double>() == 510.99895);
  CHECK(j.at("hbar_c").at("unit") == "keV nm");
  for (const auto& [key, entry] : j.items()) {
    CHECK(entry.contains("value"));
    CHECK(entry.contains("unit"));
  }
}

TEST_CASE("forbidden line separation") {
  const double sep = lines::kCuKalpha - lines::kCuKalphaForbidden;
  CHECK(sep == doctest::Approx(0.311).epsilon(1e-12));
  CHECK(std::abs(sep - 0.300) <= 0.015);
}
