#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "cslbound/errors.hpp"
#include "cslbound/heating.hpp"
#include "cslbound/spectrum.hpp"

using namespace cslbound;

namespace {
OscillatorParams test_osc(double T) { return {3.82e-13, 2.0 * std::numbers::pi * 3084.0, 3.8e4, T}; }
}

TEST_SUITE("spectrum") {

TEST_CASE("noiseless synthesis is fitted exactly") {
  const auto osc = test_osc(0.011);
  SynthesisOptions opt;
  opt.n_averages = 0;
  opt.floor = 2e-25;
  const auto spec = synthesize_spectrum(osc, 0.0, opt);
  const auto fit = fit_lorentzian(spec, {}, &osc);
  CHECK(fit.T_m == doctest::Approx(0.011).epsilon(1e-6));
  CHECK(fit.f0_fit == doctest::Approx(3084.0).epsilon(1e-9));
  CHECK(fit.gamma_fit == doctest::Approx(osc.gamma_m()).epsilon(1e-6));
  CHECK(fit.white_floor == doctest::Approx(2e-25).epsilon(1e-6));
  CHECK(fit.area == doctest::Approx(position_variance(osc, 0.0)).epsilon(1e-6));
}

TEST_CASE("Lorentzian evaluation integrates to its area") {
  const LorentzianParams p{100.0, 0.5, 2.0, 0.0};
  Eigen::ArrayXd f = Eigen::ArrayXd::LinSpaced(400001, 0.0, 200.0);
  const auto s = p.evaluate(f);
  const double df = f[1] - f[0];
  const double area = (s.sum() - 0.5 * (s[0] + s[s.size() - 1])) * df;
  // the tail beyond +-100 Hz holds 2/pi * 0.25/100
  CHECK(area == doctest::Approx(2.0 * (1.0 - 0.5 / (std::numbers::pi * 100.0))).epsilon(1e-5));
  CHECK(s[200000] == doctest::Approx(2.0 * 2.0 / (std::numbers::pi * 0.5)));
}

TEST_CASE("noisy fits are unbiased with honest errors") {
  const auto osc = test_osc(0.011);
  std::vector<SpectrumRecord> spectra;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SynthesisOptions opt;
    opt.seed = seed;
    opt.floor = 1e-25;
    spectra.push_back(synthesize_spectrum(osc, 0.0, opt));
  }
  const auto fits = fit_lorentzian_batch(spectra);
  double sum = 0.0, pulls = 0.0;
  for (const auto& f : fits) {
    const double T = mode_temperature(f, osc);
    sum += T;
    const double sigma_T = T * std::sqrt(f.covariance(2, 2)) / f.area;
    pulls += std::pow((T - 0.011) / sigma_T, 2);
  }
  CHECK(sum / fits.size() == doctest::Approx(0.011).epsilon(0.03));
  CHECK(std::sqrt(pulls / fits.size()) == doctest::Approx(1.0).epsilon(0.35));
}

TEST_CASE("batch fit is deterministic and ordered") {
  const auto osc = test_osc(0.02);
  std::vector<SpectrumRecord> spectra;
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    SynthesisOptions opt;
    opt.seed = seed;
    spectra.push_back(synthesize_spectrum(osc, 0.0, opt));
  }
  const auto a = fit_lorentzian_batch(spectra, {}, 3);
  for (int i = 0; i < 3; ++i) CHECK(a[i].area == fit_lorentzian(spectra[i]).area);
}

TEST_CASE("same seed gives the same spectrum") {
  SynthesisOptions opt;
  opt.seed = 42;
  const auto a = synthesize_spectrum(test_osc(0.05), 0.0, opt);
  const auto b = synthesize_spectrum(test_osc(0.05), 0.0, opt);
  CHECK((a.psd == b.psd).all());
  opt.seed = 43;
  CHECK_FALSE((synthesize_spectrum(test_osc(0.05), 0.0, opt).psd == a.psd).all());
}

TEST_CASE("malformed or featureless spectra are rejected") {
  SpectrumRecord s;
  s.freqs = Eigen::ArrayXd::LinSpaced(20, 1.0, 20.0);
  s.psd = Eigen::ArrayXd::Constant(19, 1.0);
  CHECK_THROWS_AS(s.validate(), DataError);
  s.psd = Eigen::ArrayXd::Constant(20, 1.0);
  CHECK_THROWS_AS(fit_lorentzian(s), DegenerateFitError);
  s.psd[3] = -1.0;
  CHECK_THROWS_AS(s.validate(), DataError);
  s.psd = Eigen::ArrayXd::Constant(4, 1.0);
  s.freqs = Eigen::ArrayXd::LinSpaced(4, 1.0, 4.0);
  CHECK_THROWS_AS(s.validate(), InsufficientDataError);
}

TEST_CASE("an unresolved line is reported as degenerate") {
  SpectrumRecord s;
  s.freqs = Eigen::ArrayXd::LinSpaced(101, 0.0, 100.0);
  s.psd = Eigen::ArrayXd::Constant(101, 1e-3);
  s.psd[50] = 10.0;
  CHECK_THROWS_AS(fit_lorentzian(s), DegenerateFitError);
}

}
