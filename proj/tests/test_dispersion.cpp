#include <doctest.h>

#include <cmath>
#include <limits>

#include "emden/constants.hpp"
#include "emden/dispersion.hpp"
#include "emden/errors.hpp"
#include "emden/rng.hpp"

using namespace emden;

namespace {

// independent polar-form principal square root, the complex-arithmetic oracle
void polar_sqrt(double er, double ei, double& nr, double& ni) {
  const double r = std::hypot(er, ei);
  nr = std::sqrt(0.5 * (r + er));
  ni = (ei >= 0.0 ? 1.0 : -1.0) * std::sqrt(0.5 * (r - er));
}

// symbolic d(w n_R)/dw for a parametric model through the eps' chain rule,
// independent of the finite-difference path used by group_velocity
double group_index_analytic(const DispersionModel& m, double w) {
  const complexd eps = eval_permittivity(m, w);
  const complexd n = std::sqrt(eps);
  const complexd dn = eval_response_derivative(m.eps, w) / (2.0 * n);
  return n.real() + w * dn.real();
}

}  // namespace

TEST_SUITE("dispersion") {

TEST_CASE("lorentz permittivity fixed points") {
  const DispersionModel m = lorentz_model(0.5, 1.0, 0.1);
  SUBCASE("static limit 1 + wp^2/w0^2") {
    const complexd e = eval_permittivity(m, 0.0);
    CHECK(e.real() == 1.25);
    CHECK(e.imag() == 0.0);
  }
  SUBCASE("on resonance the real part of the denominator vanishes") {
    const complexd e = eval_permittivity(m, 1.0);
    CHECK(e.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.imag() == doctest::Approx(2.5).epsilon(1e-15));
  }
  SUBCASE("high-frequency transparency") {
    CHECK(std::abs(eval_permittivity(m, 1e8) - complexd(1.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("drude is lorentz with omega_0 = 0, vacuum is 1") {
  const DispersionModel d = drude_model(0.5, 0.1);
  const DispersionModel l = lorentz_model(0.5, 0.0, 0.1);
  CHECK(eval_permittivity(d, 0.7) == eval_permittivity(l, 0.7));
  CHECK(eval_permittivity(vacuum_model(), 123.0) == complexd(1.0, 0.0));
}

TEST_CASE("reality: eps(-w) == conj(eps(w))") {
  const DispersionModel m = lorentz_model(0.5, 1.0, 0.1);
  std::uint64_t s = 42;
  for (int i = 0; i < 200; ++i) {
    const double w = 5.0 * u64_to_unit(splitmix64(s));
    CHECK(eval_permittivity(m, -w) == std::conj(eval_permittivity(m, w)));
  }
}

TEST_CASE("passivity: eps_I > 0 for w > 0 when gamma > 0; == 0 when gamma == 0") {
  const DispersionModel damped = lorentz_model(0.5, 1.0, 0.1);
  const DispersionModel lossless = lorentz_model(0.5, 1.0, 0.0);
  for (double w : log_grid(1e-3, 1e3, 200)) {
    CHECK(eval_permittivity(damped, w).imag() > 0.0);
    CHECK(eval_permittivity(lossless, w).imag() == 0.0);
  }
}

TEST_CASE("invalid parameters rejected") {
  CHECK_THROWS_AS(lorentz_model(std::numeric_limits<double>::quiet_NaN(), 1.0, 0.1).validate(),
                  validation_error);
  CHECK_THROWS_AS(lorentz_model(-0.5, 1.0, 0.1), validation_error);
  CHECK_THROWS_AS((void)eval_permittivity(lorentz_model(0.5, 1.0, 0.1),
                                          std::numeric_limits<double>::infinity()),
                  validation_error);
}

TEST_CASE("gamma -> 0 limit is linear in gamma away from resonance") {
  const double w = 0.5;
  const complexd e0 = eval_permittivity(lorentz_model(0.5, 1.0, 0.0), w);
  const double d5 = std::abs(eval_permittivity(lorentz_model(0.5, 1.0, 1e-5), w) - e0);
  const double d6 = std::abs(eval_permittivity(lorentz_model(0.5, 1.0, 1e-6), w) - e0);
  const double d7 = std::abs(eval_permittivity(lorentz_model(0.5, 1.0, 1e-7), w) - e0);
  CHECK(d5 / d6 == doctest::Approx(10.0).epsilon(1e-3));
  CHECK(d6 / d7 == doctest::Approx(10.0).epsilon(1e-3));
}

TEST_CASE("refractive index: principal branch with reconstruction identities") {
  SUBCASE("vacuum") {
    const Index n = refractive_index(complexd(1.0, 0.0));
    CHECK(n.re == 1.0);
    CHECK(n.im == 0.0);
    CHECK_FALSE(n.evanescent);
  }
  SUBCASE("on-resonance lorentz value against the polar oracle") {
    const Index n = refractive_index(complexd(1.0, 2.5));
    double nr = 0.0, ni = 0.0;
    polar_sqrt(1.0, 2.5, nr, ni);
    CHECK(n.re == doctest::Approx(nr).epsilon(1e-14));
    CHECK(n.im == doctest::Approx(ni).epsilon(1e-14));
    CHECK(n.re == doctest::Approx(1.3588).epsilon(1e-4));
    CHECK(n.im == doctest::Approx(0.9200).epsilon(1e-4));
  }
  SUBCASE("negative real axis is the flagged evanescent branch") {
    const Index n = refractive_index(complexd(-4.0, 0.0));
    CHECK(n.re == 0.0);
    CHECK(n.im == 2.0);
    CHECK(n.evanescent);
  }
  SUBCASE("identities on random passive draws") {
    std::uint64_t s = 7;
    for (int i = 0; i < 500; ++i) {
      const double er = -3.0 + 8.0 * u64_to_unit(splitmix64(s));
      const double ei = 4.0 * u64_to_unit(splitmix64(s));
      const Index n = refractive_index(complexd(er, ei));
      const double scale = std::max(1.0, std::hypot(er, ei));
      CHECK(std::abs(n.re * n.re - n.im * n.im - er) / scale < 1e-12);
      CHECK(std::abs(2.0 * n.re * n.im - ei) / scale < 1e-12);
      CHECK(n.re >= 0.0);
    }
  }
  SUBCASE("zero rejected") { CHECK_THROWS_AS(refractive_index(complexd(0.0, 0.0)), validation_error); }
}

TEST_CASE("group velocity") {
  SUBCASE("vacuum gives c at any frequency") {
    for (double w : {0.1, 1.0, 17.0})
      CHECK(group_velocity(vacuum_model(), w, 1e-4 * w) == doctest::Approx(c_light).epsilon(1e-12));
  }
  SUBCASE("damped lorentz matches the analytic derivative and stays below c") {
    const DispersionModel m = lorentz_model(0.5, 1.0, 0.1);
    const double w = 0.1;
    const double vg = group_velocity(m, w, 1e-4 * w);
    const double exact = c_light / group_index_analytic(m, w);
    CHECK(vg == doctest::Approx(exact).epsilon(1e-8));
    CHECK(vg < c_light);
  }
  SUBCASE("lossless resonance steepening: v_g -> 0+ from below") {
    const DispersionModel m = lorentz_model(0.5, 1.0, 0.0);
    const double v1 = group_velocity(m, 0.90, 1e-6);
    const double v2 = group_velocity(m, 0.99, 1e-7);
    const double v3 = group_velocity(m, 0.999, 1e-8);
    CHECK(v1 > v2);
    CHECK(v2 > v3);
    CHECK(v3 > 0.0);
  }
  SUBCASE("vanishing group index reported as the singularity error") {
    // inside the lossless gap n_R is identically zero, so w n_R has no slope
    const DispersionModel m = lorentz_model(0.5, 1.0, 0.0);
    CHECK_THROWS_AS((void)group_velocity(m, 1.05, 1e-3), validation_error);
  }
}

TEST_CASE("tabulated interpolation reproduces the parametric model") {
  const DispersionModel ref = lorentz_model(0.5, 1.0, 0.1);
  std::vector<TabSample> samples;
  for (double w : log_grid(1e-2, 1e2, 1600)) samples.push_back({w, eval_permittivity(ref, w)});
  DispersionModel tab;
  tab.eps = tabulated_response(samples);

  // the monotone limiter clamps slopes at the resonance extrema, so fidelity
  // is a few 1e-3 there and orders of magnitude better on smooth stretches
  for (double w : log_grid(2e-2, 50.0, 97)) {
    const complexd a = eval_permittivity(tab, w);
    const complexd b = eval_permittivity(ref, w);
    CHECK(std::abs(a - b) < 5e-3 * std::abs(b));
  }
  for (double w : log_grid(2e-2, 0.5, 97)) {
    const complexd a = eval_permittivity(tab, w);
    const complexd b = eval_permittivity(ref, w);
    CHECK(std::abs(a - b) < 1e-7 * std::abs(b));
  }
  SUBCASE("no extrapolation") {
    CHECK_THROWS_AS((void)eval_permittivity(tab, 1e-3), std::out_of_range);
    CHECK_THROWS_AS((void)eval_permittivity(tab, 1e3), std::out_of_range);
  }
  SUBCASE("reality through the conjugate path") {
    CHECK(eval_permittivity(tab, -0.37) == std::conj(eval_permittivity(tab, 0.37)));
  }
}

TEST_CASE("kramers-kronig residual") {
  SUBCASE("vacuum is exactly causal") {
    const auto grid = log_grid(1e-2, 1e2, 64);
    const KramersKronigResult r = kramers_kronig_residual(vacuum_model(), grid);
    CHECK(r.max_residual == 0.0);
    CHECK(r.causal);
  }
  SUBCASE("lorentz on the documented grid") {
    const auto grid = log_grid(1e-3, 1e3, 4000);
    const KramersKronigResult r =
        kramers_kronig_residual(lorentz_model(0.5, 1.0, 0.1), grid);
    CHECK(r.max_residual < 1e-4);
    CHECK(r.causal);
    CHECK(r.converged);
  }
  SUBCASE("sign-flipped eps_I is flagged non-causal at O(wp^2/w0^2)") {
    const DispersionModel ref = lorentz_model(0.5, 1.0, 0.1);
    std::vector<TabSample> corrupted;
    for (double w : log_grid(1e-2, 1e2, 800)) {
      const complexd e = eval_permittivity(ref, w);
      corrupted.push_back({w, complexd(e.real(), -e.imag())});
    }
    DispersionModel bad;
    bad.eps = tabulated_response(corrupted);
    const auto grid = log_grid(1.2e-2, 0.8e2, 800);
    const KramersKronigResult r = kramers_kronig_residual(bad, grid);
    CHECK(r.max_residual > 0.05);  // order wp^2/w0^2, peaking near resonance
    CHECK(r.max_residual < 10.0);
    CHECK_FALSE(r.causal);
  }
}

}  // TEST_SUITE
