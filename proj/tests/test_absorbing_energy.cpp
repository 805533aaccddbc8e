#include <doctest.h>

#include <cmath>

#include "emden/absorbing_energy.hpp"
#include "emden/constants.hpp"
#include "emden/errors.hpp"
#include "emden/qed_spectrum.hpp"
#include "emden/quadrature.hpp"
#include "emden/rng.hpp"

using namespace emden;

namespace {

void polar_sqrt(double er, double ei, double& nr, double& ni) {
  const double r = std::hypot(er, ei);
  nr = std::sqrt(0.5 * (r + er));
  ni = (ei >= 0.0 ? 1.0 : -1.0) * std::sqrt(0.5 * (r - er));
}

// Im d(w^2 sqrt(eps))/dw by high-order central differences of the polar root,
// independent of the complex chain rule used in the implementation
double im_d_omega2_sqrt_eps_fd(const DispersionModel& m, double w) {
  auto f = [&](double x) {
    const complexd e = eval_permittivity(m, x);
    double nr = 0.0, ni = 0.0;
    polar_sqrt(e.real(), e.imag(), nr, ni);
    return x * x * ni;
  };
  const double h = 1e-5 * w;
  return (-f(w + 2.0 * h) + 8.0 * f(w + h) - 8.0 * f(w - h) + f(w - 2.0 * h)) / (12.0 * h);
}

double d_omega_eps_r_fd(const DispersionModel& m, double w) {
  auto f = [&](double x) { return x * eval_permittivity(m, x).real(); };
  const double h = 1e-5 * w;
  return (-f(w + 2.0 * h) + 8.0 * f(w + h) - 8.0 * f(w - h) + f(w - 2.0 * h)) / (12.0 * h);
}

}  // namespace

TEST_SUITE("absorbing_energy") {

TEST_CASE("green-function norm integral") {
  const complexd eps(1.0, 2.5);
  SUBCASE("closed form at the resonance benchmark") {
    double nr = 0.0, ni = 0.0;
    polar_sqrt(1.0, 2.5, nr, ni);
    const double v = green_norm_integral(eps, 1.0);
    CHECK(v == doctest::Approx(2.0 * pi * pi * nr / 2.5).epsilon(1e-14));
    CHECK(v == doctest::Approx(10.729).epsilon(1e-3));
  }
  SUBCASE("closed form vs adaptive quadrature") {
    CHECK(green_norm_integral(eps, 1.0) ==
          doctest::Approx(green_norm_integral_quad(eps, 1.0, 1e-12)).epsilon(1e-9));
  }
  SUBCASE("1/omega scaling at fixed eps") {
    const double v1 = green_norm_integral(eps, 1.0);
    for (double w : {0.3, 2.0, 17.0}) {
      CHECK(green_norm_integral(eps, w) == doctest::Approx(v1 / w).epsilon(1e-14));
      CHECK(green_norm_integral_quad(eps, w) == doctest::Approx(v1 / w).epsilon(1e-9));
    }
  }
  SUBCASE("diverges as 1/eps_I toward transparency") {
    const double a = green_norm_integral(complexd(2.0, 1e-3), 1.0) * 1e-3;
    const double b = green_norm_integral(complexd(2.0, 1e-6), 1.0) * 1e-6;
    CHECK(a == doctest::Approx(b).epsilon(1e-3));
    CHECK_THROWS_AS((void)green_norm_integral(complexd(2.0, 0.0), 1.0), validation_error);
  }
  SUBCASE("random passive draws: quadrature within 1e-8 of closed form") {
    std::uint64_t s = 99;
    for (int i = 0; i < 50; ++i) {
      const double er = -2.0 + 7.0 * u64_to_unit(splitmix64(s));
      const double ei = 1e-3 * std::pow(5.0 / 1e-3, u64_to_unit(splitmix64(s)));
      const double w = 0.1 * std::pow(100.0, u64_to_unit(splitmix64(s)));
      const complexd e(er, ei);
      CHECK(green_norm_integral(e, w) ==
            doctest::Approx(green_norm_integral_quad(e, w)).epsilon(1e-8));
    }
  }
}

TEST_CASE("regularized k integral") {
  const complexd eps(1.0, 2.5);
  double nr = 0.0, ni = 0.0;
  polar_sqrt(1.0, 2.5, nr, ni);

  SUBCASE("small-a closed form components") {
    const RegularizationConfig reg{1e-3};
    const complexd v = regularized_k_integral(eps, 1.0, reg);
    CHECK(v.real() == doctest::Approx(2.0 * pi * pi * (1000.0 - ni)).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(2.0 * pi * pi * nr).epsilon(1e-12));
  }
  SUBCASE("halving a doubles the 1/a term exactly") {
    const complexd va = regularized_k_integral(eps, 1.0, {1e-3});
    const complexd vb = regularized_k_integral(eps, 1.0, {5e-4});
    CHECK(vb.real() - va.real() == doctest::Approx(2.0 * pi * pi * 1000.0).epsilon(1e-12));
    CHECK(vb.imag() == va.imag());
  }
  SUBCASE("static vacuum limit") {
    const complexd v = regularized_k_integral(complexd(1.0, 1e-12), 1e-9, {1e-4});
    CHECK(v.real() == doctest::Approx(2.0 * pi * pi * 1e4).epsilon(1e-9));
    CHECK(std::abs(v.imag()) < 1e-4);
  }
  SUBCASE("finite-a quadrature agrees to O(a w / c)") {
    for (double w : {0.5, 1.0, 2.0}) {
      const double a = 1e-3 * c_light / w;
      const complexd closed = regularized_k_integral(eps, w, {a});
      const complexd quad = regularized_k_integral_quad(eps, w, a);
      CHECK(std::abs(closed - quad) / std::abs(closed) < 2.0 * a * w / c_light);
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS((void)regularized_k_integral(eps, 1.0, {-1.0}), validation_error);
    CHECK_THROWS_AS((void)regularized_k_integral(eps, 1.0, {0.1}), validation_error);
    CHECK_THROWS_AS((void)regularized_k_integral(complexd(1.0, 0.0), 1.0, {1e-4}),
                    validation_error);
  }
}

TEST_CASE("field spectra") {
  const DispersionModel m = lorentz_model(0.5, 1.0, 0.1);
  SUBCASE("electric: closed form vs k-integral route") {
    CHECK(e_field_spectrum(m, 1.0) ==
          doctest::Approx(e_field_spectrum_quad(m, 1.0, 1e-13)).epsilon(1e-10));
  }
  SUBCASE("electric: transparent limit is (2/pi) w^3 n_R") {
    const DispersionModel lossless = lorentz_model(0.5, 1.0, 0.0);
    const double w = 0.5;
    const double n_r = refractive_index(eval_permittivity(lossless, w)).re;
    CHECK(e_field_spectrum(lossless, w) ==
          doctest::Approx(2.0 / pi * w * w * w * n_r).epsilon(1e-14));
    // continuity in gamma -> 0
    CHECK(e_field_spectrum(lorentz_model(0.5, 1.0, 1e-9), w) ==
          doctest::Approx(e_field_spectrum(lossless, w)).epsilon(1e-8));
  }
  SUBCASE("magnetic: finite part carries Re eps^{3/2} = n_R^3 - 3 n_R n_I^2") {
    const RegularizationConfig reg{1e-3};
    const HFieldSpectrum h = h_field_spectrum(m, 1.0, reg);
    double nr = 0.0, ni = 0.0;
    polar_sqrt(1.0, 2.5, nr, ni);
    const double re32 = nr * nr * nr - 3.0 * nr * ni * ni;
    CHECK(h.finite == doctest::Approx(hbar / (4.0 * pi * pi) * re32).epsilon(1e-13));
  }
  SUBCASE("magnetic: cutoff part linear in eps_I and 1/a") {
    const double w = 0.7;
    const complexd eps = eval_permittivity(m, w);
    const HFieldSpectrum h1 = h_field_spectrum(m, w, {1e-3});
    const HFieldSpectrum h2 = h_field_spectrum(m, w, {5e-4});
    CHECK(h2.cutoff == doctest::Approx(2.0 * h1.cutoff).epsilon(1e-14));
    CHECK(h1.cutoff ==
          doctest::Approx(hbar / (4.0 * pi * pi) * w * w * eps.imag() * 1e3).epsilon(1e-13));
  }
  SUBCASE("magnetic: gamma -> 0 finite part approaches the transparent amplitude") {
    const DispersionModel weak = lorentz_model(0.5, 1.0, 1e-9);
    const double w = 0.5;
    const double n_r = refractive_index(eval_permittivity(weak, w)).re;
    const HFieldSpectrum h = h_field_spectrum(weak, w, {1e-4});
    CHECK(h.finite ==
          doctest::Approx(hbar / (4.0 * pi * pi) * w * w * w * n_r * n_r * n_r).epsilon(1e-7));
  }
}

TEST_CASE("W1 and W2 spectra") {
  const DispersionModel m = lorentz_model(0.5, 1.0, 0.1);
  const RegularizationConfig reg{1e-3};

  SUBCASE("heating rate positive wherever eps_I > 0") {
    for (double w : log_grid(0.05, 5.0, 50)) CHECK(w1_spectrum(m, w, reg).rate > 0.0);
  }
  SUBCASE("rates cancel identically through independent routes") {
    for (double w : log_grid(0.05, 5.0, 50)) {
      const double r1 = w1_spectrum(m, w, reg).rate;
      const double r2 = w2_spectrum(m, w, reg).rate;
      CHECK(std::abs(r1 + r2) <= 1e-12 * std::abs(r1));
    }
  }
  SUBCASE("cutoff terms cancel against the magnetic spectrum") {
    for (double w : {0.3, 1.0, 2.5}) {
      const HFieldSpectrum h = h_field_spectrum(m, w, reg);
      const W2Spectrum w2 = w2_spectrum(m, w, reg);
      CHECK(h.cutoff + w2.static_cutoff == 0.0);
    }
  }
  SUBCASE("static pieces match finite-difference oracles") {
    const double w = 1.0;
    const EnergyBreakdown b = energy_breakdown(m, w, reg);
    const double nr = refractive_index(eval_permittivity(m, w)).re;
    CHECK(b.w1_static_e == doctest::Approx(hbar / (4.0 * pi * pi) * w * w * w * nr *
                                           d_omega_eps_r_fd(m, w))
                              .epsilon(1e-9));
    const double ei = eval_permittivity(m, w).imag();
    CHECK(b.w2_static_finite == doctest::Approx(hbar / (4.0 * pi * pi) * w * w * ei *
                                                im_d_omega2_sqrt_eps_fd(m, w))
                                   .epsilon(1e-9));
  }
  SUBCASE("gamma -> 0 continuity of the static part") {
    const double w = 0.5;
    const DispersionModel weak = lorentz_model(0.5, 1.0, 1e-9);
    const EnergyBreakdown b = energy_breakdown(weak, w, {1e-6});
    CHECK(b.w1_rate < 1e-9);
    // non-absorbing W1: E-part + transparent H^2 part (the 1/a pieces vanish
    // with eps_I and cancel in any case)
    const DispersionModel lossless = lorentz_model(0.5, 1.0, 0.0);
    const double nr = refractive_index(eval_permittivity(lossless, w)).re;
    const double expected = hbar / (4.0 * pi * pi) * w * w * w *
                            (nr * d_omega_eps_r_fd(lossless, w) + nr * nr * nr);
    CHECK(b.w1_static_e + b.h_field_finite == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("total energy spectral density") {
  SUBCASE("assembled form equals the collapsed non-absorbing form pointwise") {
    for (double g : {0.01, 0.1, 0.5}) {
      const DispersionModel m = lorentz_model(0.5, 1.0, g);
      for (double w : log_grid(0.05, 5.0, 200)) {
        const double a = total_energy_spectrum(m, w);
        const double b = total_energy_spectrum_nonabsorbing_form(m, w);
        const double scale = std::max(std::abs(a), std::abs(b));
        CHECK(std::abs(a - b) <= 1e-9 * scale);
      }
    }
  }
  SUBCASE("vacuum carries the free-space zero-point spectral density") {
    const double w = 2.0;
    CHECK(total_energy_spectrum(vacuum_model(), w) ==
          doctest::Approx(hbar * w * w * w / (2.0 * pi * pi)).epsilon(1e-14));
  }
  SUBCASE("matches the transparent-medium rho at zero temperature") {
    const DispersionModel weak = lorentz_model(0.5, 1.0, 1e-10);
    const DispersionModel lossless = lorentz_model(0.5, 1.0, 0.0);
    for (double w : {0.2, 0.5, 0.7}) {
      CHECK(total_energy_spectrum(weak, w) ==
            doctest::Approx(zero_point_spectral_density(lossless, w)).epsilon(1e-8));
    }
  }
  SUBCASE("assembled total independent of the cutoff scale") {
    const DispersionModel m = lorentz_model(0.5, 1.0, 0.1);
    for (double w : log_grid(0.05, 5.0, 20)) {
      const double base = c_light / w;
      const double t5 = energy_breakdown(m, w, {1e-5 * base}).total;
      const double t4 = energy_breakdown(m, w, {1e-4 * base}).total;
      const double t3 = energy_breakdown(m, w, {1e-3 * base}).total;
      const double scale = std::abs(t5);
      CHECK(std::abs(t4 - t5) <= 1e-10 * scale);
      CHECK(std::abs(t3 - t5) <= 1e-10 * scale);
      CHECK(std::abs(energy_breakdown(m, w, {1e-5 * base}).cutoff_residual) <= 1e-10 * scale);
    }
  }
  SUBCASE("magnetic media rejected here") {
    DispersionModel magnetic = lorentz_model(0.5, 1.0, 0.1);
    magnetic.mu = lorentz_response(0.1, 2.0, 0.0);
    CHECK_THROWS_AS((void)total_energy_spectrum(magnetic, 0.5), validation_error);
  }
}

TEST_CASE("thermal band energy") {
  SUBCASE("T = 0 reduces to the band integral of the total spectrum") {
    const DispersionModel m = lorentz_model(0.5, 1.0, 0.1);
    const double a = thermal_total_energy(m, 0.1, 2.0, 0.0);
    const double b = thermal_total_energy(m, 0.1, 2.0, 0.0, {false, 1e-9});
    CHECK(b == 0.0);
    QuadOptions opt;
    opt.rel_tol = 1e-11;
    const double direct =
        integrate([&](double w) { return total_energy_spectrum(m, w); }, 0.1, 2.0, opt);
    CHECK(a == doctest::Approx(direct).epsilon(1e-8));
  }
  SUBCASE("planck closure in vacuum") {
    const double T = 0.7;
    const double u = thermal_total_energy(vacuum_model(), 1e-6, 50.0 * T, T, {false, 1e-10});
    CHECK(u == doctest::Approx(pi * pi / 15.0 * T * T * T * T).epsilon(1e-6));
  }
}

}  // TEST_SUITE
