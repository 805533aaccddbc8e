#include "emden/verify.hpp"

#include <algorithm>
#include <cmath>

#include "emden/absorbing_energy.hpp"
#include "emden/constants.hpp"
#include "emden/energy_classical.hpp"
#include "emden/errors.hpp"
#include "emden/oscillator.hpp"
#include "emden/qed_spectrum.hpp"
#include "emden/quadrature.hpp"
#include "emden/rng.hpp"
#include "emden/sed_sim.hpp"

namespace emden {

namespace {

CheckRecord make(const std::string& name, double err, double tol) {
  return {name, err, tol, err <= tol};
}

bool absorbing_on(const DispersionModel& m, std::span<const double> grid) {
  for (double w : grid)
    if (!(eval_permittivity(m, w).imag() > 0.0)) return false;
  return true;
}

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

}  // namespace

std::vector<CheckRecord> run_verification(const DispersionModel& m, std::span<const double> grid,
                                          double regularization_a) {
  if (grid.size() < 2) throw validation_error("verify: band grid too small");
  std::vector<CheckRecord> out;
  const bool parametric =
      m.eps.kind == MaterialKind::Lorentz || m.eps.kind == MaterialKind::Drude;
  const bool absorbing = absorbing_on(m, grid);

  // reality: eps(-w) == conj(eps(w))
  {
    double err = 0.0;
    for (double w : grid)
      err = std::max(err, std::abs(eval_permittivity(m, -w) -
                                   std::conj(eval_permittivity(m, w))));
    out.push_back(make("reality_eps_conjugate_symmetry", err, 1e-15));
  }

  // passivity: eps_I > 0 on the grid for damped media
  if (m.eps.gamma > 0.0 || m.eps.kind == MaterialKind::Tabulated) {
    double worst = 1e300;
    for (double w : grid) worst = std::min(worst, eval_permittivity(m, w).imag());
    CheckRecord r{"passivity_eps_imag_positive", worst, 0.0, worst > 0.0};
    out.push_back(r);
  }

  // index reconstruction identities
  {
    double err = 0.0;
    for (double w : grid) {
      const complexd eps = eval_permittivity(m, w);
      const Index n = refractive_index(eps);
      const double scale = std::max(1.0, std::abs(eps));
      err = std::max(err, std::abs(n.re * n.re - n.im * n.im - eps.real()) / scale);
      err = std::max(err, std::abs(2.0 * n.re * n.im - eps.imag()) / scale);
    }
    out.push_back(make("index_reconstruction", err, 1e-12));
  }

  if (m.nonmagnetic() && absorbing) {
    RegularizationConfig reg{regularization_a};
    reg.validate(grid.back());

    // energy-form equivalence: assembled vs collapsed spectral density
    {
      double err = 0.0;
      for (double w : grid)
        err = std::max(err, rel(total_energy_spectrum(m, w),
                                total_energy_spectrum_nonabsorbing_form(m, w)));
      out.push_back(make("energy_form_equivalence", err, 1e-9));
    }

    // secular balance and its sign
    {
      double err = 0.0;
      bool positive = true;
      for (double w : grid) {
        const EnergyBreakdown b = energy_breakdown(m, w, reg);
        err = std::max(err, std::abs(b.rate_residual) / std::abs(b.w1_rate));
        positive = positive && b.w1_rate > 0.0;
      }
      out.push_back(make("secular_rate_balance", err, 1e-12));
      out.push_back({"heating_rate_positive", positive ? 0.0 : 1.0, 0.0, positive});
    }

    // cutoff cancellation and 1/a scaling
    {
      double err_inv = 0.0, err_scale = 0.0, err_resid = 0.0;
      for (double w : grid) {
        const double base = c_light / w;
        const EnergyBreakdown b3 = energy_breakdown(m, w, {1e-3 * base});
        const EnergyBreakdown b4 = energy_breakdown(m, w, {1e-4 * base});
        const EnergyBreakdown b5 = energy_breakdown(m, w, {1e-5 * base});
        const double scale = std::abs(b5.total);
        err_inv = std::max(err_inv, std::abs(b3.total - b5.total) / scale);
        err_inv = std::max(err_inv, std::abs(b4.total - b5.total) / scale);
        err_resid = std::max(err_resid, std::abs(b5.cutoff_residual) / scale);
        // dedicated 1/a scaling of the isolated cutoff terms
        err_scale = std::max(err_scale, rel(b3.h_field_cutoff * 1e-3, b4.h_field_cutoff * 1e-4));
        err_scale = std::max(err_scale, rel(b3.w2_static_cutoff * 1e-3, b5.w2_static_cutoff * 1e-5));
      }
      out.push_back(make("cutoff_independence_of_total", err_inv, 1e-10));
      out.push_back(make("cutoff_residual_cancellation", err_resid, 1e-10));
      out.push_back(make("cutoff_terms_scale_as_inverse_a", err_scale, 1e-10));
    }

    // k-integral closed forms vs adaptive quadrature on random passive draws
    {
      double err = 0.0;
      std::uint64_t state = 0x67726e6dULL;
      for (int i = 0; i < 50; ++i) {
        const double eps_r = -2.0 + 7.0 * u64_to_unit(splitmix64(state));
        const double eps_i = 1e-3 * std::pow(5.0 / 1e-3, u64_to_unit(splitmix64(state)));
        const double w = 0.1 * std::pow(100.0, u64_to_unit(splitmix64(state)));
        const complexd eps(eps_r, eps_i);
        err = std::max(err, rel(green_norm_integral(eps, w),
                                green_norm_integral_quad(eps, w)));
      }
      out.push_back(make("green_norm_closed_vs_quadrature", err, 1e-8));
    }
    {
      double err = 0.0;
      for (std::size_t i = 0; i < grid.size(); i += std::max<std::size_t>(1, grid.size() / 8)) {
        const double w = grid[i];
        const complexd eps = eval_permittivity(m, w);
        const double a = 1e-3 * c_light / w;
        const complexd closed = regularized_k_integral(eps, w, {a});
        const complexd quad = regularized_k_integral_quad(eps, w, a);
        err = std::max(err, std::abs(closed - quad) / std::abs(closed) / (a * w / c_light));
      }
      out.push_back(make("regularized_k_integral_vs_quadrature_over_aw", err, 2.0));
    }
  }

  // coth identity: (1/2) coth(w/2T) == 1/2 + N(w)
  {
    const ThermalState st{0.7};
    double err = 0.0;
    for (double w : grid) {
      const double lhs = 0.5 / std::tanh(w / (2.0 * st.temperature));
      err = std::max(err, rel(lhs, st.half_plus_occupation(w)));
    }
    out.push_back(make("coth_identity", err, 1e-14));
  }

  // Kramers-Kronig causality on the documented wide grid
  if (parametric && m.eps.gamma > 0.0) {
    const auto kk_grid = log_grid(1e-3, 1e3, 4000);
    const KramersKronigResult kk = kramers_kronig_residual(m, kk_grid);
    out.push_back(make("kramers_kronig_residual", kk.max_residual, 1e-4));
  }

  // transparent-sibling cross checks (zero-damping version of the same medium)
  if (parametric && m.nonmagnetic()) {
    DispersionModel sibling = m;
    sibling.eps.gamma = 0.0;
    double lo = 0.0, hi = 0.0;
    if (m.eps.kind == MaterialKind::Lorentz && m.eps.omega_0 > 0.0) {
      lo = 0.10 * m.eps.omega_0;
      hi = 0.75 * m.eps.omega_0;
    } else {
      lo = 1.5 * m.eps.omega_p;  // transparent above the plasma edge
      hi = 4.0 * m.eps.omega_p;
    }
    if (hi > lo && lo > 0.0) {
      // spectral density vs the uncorrelated-ensemble integrand with the
      // matched zero-point amplitude spectra. The ensemble form carries the
      // classical 1/2-convention <<E(w)E*(w')>> = |E(w)|^2/2 delta, so the
      // matched |E(w)|^2 is twice the polarization-summed QED amplitude.
      double err = 0.0;
      const auto band = linear_grid(lo, hi, 17);
      auto spec_e = [&](double w) {
        return 4.0 * zero_point_amplitudes(optical_response(sibling, w)).e_sq;
      };
      auto spec_h = [&](double w) {
        return 4.0 * zero_point_amplitudes(optical_response(sibling, w)).h_sq;
      };
      for (double w : band) {
        const SpectralPoint rho = spectral_density(optical_response(sibling, w), ThermalState{});
        const double ens = ensemble_spectral_integrand(sibling, spec_e, spec_h, w);
        err = std::max(err, rel(rho.rho, ens));
      }
      out.push_back(make("brillouin_consistency_rho_vs_ensemble", err, 1e-9));

      // omega-space vs k-space zero-point band integral
      QuadOptions opt;
      opt.rel_tol = 1e-11;
      opt.max_intervals = 20000;
      const double u_omega = integrate(
          [&](double w) { return zero_point_spectral_density(sibling, w); }, lo, hi, opt);
      auto k_of = [&](double w) {
        return w * refractive_index(eval_permittivity(sibling, w)).re / c_light;
      };
      auto omega_of_k = [&](double k) {
        double a = lo, b = hi;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (a + b);
          (k_of(mid) < k ? a : b) = mid;
        }
        return 0.5 * (a + b);
      };
      const double u_k = integrate(
          [&](double k) { return hbar / (2.0 * pi * pi) * k * k * omega_of_k(k); },
          k_of(lo), k_of(hi), opt);
      out.push_back(make("zero_point_k_space_equivalence", rel(u_omega, u_k), 1e-7));
    }
  }

  // commutator envelope: quadrature vs closed form
  {
    double err = 0.0, err_tau0 = 0.0;
    for (double gratio : {0.05, 0.2}) {
      OscillatorParams p;
      p.omega_0 = 1.0;
      p.gamma = gratio;
      p.omega_c = 1e4;
      for (double tau : {0.0, 1.0, 5.0, 20.0}) {
        const double closed = commutator_envelope(p, tau);
        const double quad = commutator_envelope_quadrature(p, tau, 1e-8);
        err = std::max(err, std::abs(closed - quad));
        if (tau == 0.0) err_tau0 = std::max(err_tau0, std::abs(closed - 1.0));
      }
    }
    out.push_back(make("commutator_envelope_quadrature_vs_closed", err, 1e-6));
    out.push_back(make("commutator_equal_time_unity", err_tau0, 1e-10));
  }

  return out;
}

bool all_pass(const std::vector<CheckRecord>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

}  // namespace emden
