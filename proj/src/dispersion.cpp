#include "emden/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "emden/constants.hpp"
#include "emden/errors.hpp"
#include "emden/quadrature.hpp"

namespace emden {

// ---------------------------------------------------------------- tabulated

TabulatedResponse::TabulatedResponse(std::vector<TabSample> samples) {
  if (samples.size() < 2) throw validation_error("tabulated response: need at least 2 samples");
  std::sort(samples.begin(), samples.end(),
            [](const TabSample& a, const TabSample& b) { return a.omega < b.omega; });
  const std::size_t n = samples.size();
  x_.resize(n);
  yr_.resize(n);
  yi_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = samples[i];
    if (!(s.omega > 0.0) || !std::isfinite(s.omega) || !std::isfinite(s.value.real()) ||
        !std::isfinite(s.value.imag()))
      throw validation_error("tabulated response: samples must be finite with omega > 0");
    if (i > 0 && samples[i - 1].omega == s.omega)
      throw validation_error("tabulated response: duplicate omega sample");
    x_[i] = std::log(s.omega);
    yr_[i] = s.value.real();
    yi_[i] = s.value.imag();
  }
  omega_min_ = samples.front().omega;
  omega_max_ = samples.back().omega;

  // Fritsch-Carlson slopes, one pass per component
  auto slopes = [&](const std::vector<double>& y) {
    std::vector<double> d(n);
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      del[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
      d[0] = d[1] = del[0];
      return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (del[i - 1] * del[i] <= 0.0) {
        d[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
      }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
      double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
      if (d * d0 <= 0.0)
        d = 0.0;
      else if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0))
        d = 3.0 * d0;
      return d;
    };
    d[0] = end_slope(h[0], h[1], del[0], del[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    return d;
  };
  dr_ = slopes(yr_);
  di_ = slopes(yi_);
}

complexd TabulatedResponse::eval(double omega) const {
  if (empty()) throw validation_error("tabulated response: empty table");
  if (!(omega >= omega_min_ && omega <= omega_max_))
    throw std::out_of_range("tabulated response: omega outside table range");
  const double x = std::log(omega);
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  if (i + 1 >= x_.size()) i = x_.size() - 2;
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  const double h10 = t * (1.0 - t) * (1.0 - t);
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  const double re = h00 * yr_[i] + h * h10 * dr_[i] + h01 * yr_[i + 1] + h * h11 * dr_[i + 1];
  const double im = h00 * yi_[i] + h * h10 * di_[i] + h01 * yi_[i + 1] + h * h11 * di_[i + 1];
  return {re, im};
}

// ------------------------------------------------------------------- models

void ResponseFunction::validate(const std::string& label) const {
  auto bad = [&](const char* what) { throw validation_error(label + ": " + what); };
  switch (kind) {
    case MaterialKind::Vacuum:
      break;
    case MaterialKind::Lorentz:
    case MaterialKind::Drude:
      if (!std::isfinite(omega_p) || !std::isfinite(omega_0) || !std::isfinite(gamma))
        bad("parameters must be finite");
      if (omega_p < 0.0 || omega_0 < 0.0 || gamma < 0.0) bad("parameters must be non-negative");
      if (kind == MaterialKind::Drude && omega_0 != 0.0) bad("Drude requires omega_0 = 0");
      break;
    case MaterialKind::Tabulated:
      if (table.empty()) bad("tabulated kind without a table");
      break;
  }
}

ResponseFunction lorentz_response(double omega_p, double omega_0, double gamma) {
  ResponseFunction r;
  r.kind = MaterialKind::Lorentz;
  r.omega_p = omega_p;
  r.omega_0 = omega_0;
  r.gamma = gamma;
  r.validate("lorentz response");
  return r;
}

ResponseFunction drude_response(double omega_p, double gamma) {
  ResponseFunction r;
  r.kind = MaterialKind::Drude;
  r.omega_p = omega_p;
  r.gamma = gamma;
  r.validate("drude response");
  return r;
}

ResponseFunction tabulated_response(std::vector<TabSample> samples) {
  ResponseFunction r;
  r.kind = MaterialKind::Tabulated;
  r.table = TabulatedResponse(std::move(samples));
  return r;
}

complexd eval_response(const ResponseFunction& r, double omega) {
  if (!std::isfinite(omega)) throw validation_error("eval_response: omega must be finite");
  switch (r.kind) {
    case MaterialKind::Vacuum:
      return {1.0, 0.0};
    case MaterialKind::Lorentz:
    case MaterialKind::Drude: {
      const complexd den(omega * omega - r.omega_0 * r.omega_0, r.gamma * omega);
      if (den == complexd(0.0, 0.0))
        throw validation_error("eval_response: permittivity pole (undamped resonance)");
      return complexd(1.0, 0.0) - r.omega_p * r.omega_p / den;
    }
    case MaterialKind::Tabulated: {
      if (omega >= 0.0) return r.table.eval(omega);
      return std::conj(r.table.eval(-omega));
    }
  }
  throw validation_error("eval_response: unknown kind");
}

complexd eval_response_derivative(const ResponseFunction& r, double omega) {
  switch (r.kind) {
    case MaterialKind::Vacuum:
      return {0.0, 0.0};
    case MaterialKind::Lorentz:
    case MaterialKind::Drude: {
      const complexd den(omega * omega - r.omega_0 * r.omega_0, r.gamma * omega);
      if (den == complexd(0.0, 0.0))
        throw validation_error("eval_response_derivative: permittivity pole");
      return r.omega_p * r.omega_p * complexd(2.0 * omega, r.gamma) / (den * den);
    }
    case MaterialKind::Tabulated: {
      const double h = 1e-4 * std::max(std::abs(omega), 1e-30);
      auto d = [&](double step) {
        return (eval_response(r, omega + step) - eval_response(r, omega - step)) / (2.0 * step);
      };
      const complexd dh = d(h);
      const complexd dh2 = d(0.5 * h);
      return (4.0 * dh2 - dh) / 3.0;
    }
  }
  throw validation_error("eval_response_derivative: unknown kind");
}

void DispersionModel::validate() const {
  eps.validate("permittivity");
  mu.validate("permeability");
}

DispersionModel vacuum_model() { return {}; }

DispersionModel lorentz_model(double omega_p, double omega_0, double gamma) {
  DispersionModel m;
  m.eps = lorentz_response(omega_p, omega_0, gamma);
  return m;
}

DispersionModel drude_model(double omega_p, double gamma) {
  DispersionModel m;
  m.eps = drude_response(omega_p, gamma);
  return m;
}

complexd eval_permittivity(const DispersionModel& m, double omega) {
  return eval_response(m.eps, omega);
}

complexd eval_permeability(const DispersionModel& m, double omega) {
  return eval_response(m.mu, omega);
}

// -------------------------------------------------------------------- index

Index refractive_index(complexd eps, complexd mu) {
  const complexd w = eps * mu;
  if (w == complexd(0.0, 0.0)) throw validation_error("refractive_index: eps*mu == 0");
  Index out;
  if (w.imag() == 0.0 && w.real() < 0.0) {
    out.re = 0.0;
    out.im = std::sqrt(-w.real());
    out.evanescent = true;
    return out;
  }
  const complexd n = std::sqrt(w);  // principal branch, Re >= 0
  out.re = n.real();
  out.im = n.imag();
  return out;
}

double group_velocity(const DispersionModel& m, double omega, double h) {
  if (!(omega > 0.0)) throw validation_error("group_velocity: omega must be positive");
  if (!(h > 0.0)) throw validation_error("group_velocity: step must be positive");
  auto f = [&](double w) {
    const Index n = refractive_index(eval_permittivity(m, w), eval_permeability(m, w));
    return w * n.re;
  };
  auto central = [&](double step) { return (f(omega + step) - f(omega - step)) / (2.0 * step); };
  const double d1 = central(h);
  const double d2 = central(0.5 * h);
  const double deriv = (4.0 * d2 - d1) / 3.0;
  if (std::abs(deriv) < 1e-12)
    throw validation_error("group_velocity: d(omega n_R)/domega vanishes (anomalous dispersion)");
  return c_light / deriv;
}

OpticalResponse optical_response(const DispersionModel& m, double omega, double fd_step) {
  OpticalResponse r;
  r.omega = omega;
  r.eps = eval_permittivity(m, omega);
  r.mu = eval_permeability(m, omega);
  const Index n = refractive_index(r.eps, r.mu);
  r.n_re = n.re;
  r.n_im = n.im;
  r.evanescent = n.evanescent;
  const double h = (fd_step > 0.0) ? fd_step : 1e-4 * omega;
  r.v_g = group_velocity(m, omega, h);
  return r;
}

// ---------------------------------------------------------- Kramers-Kronig

namespace {

double kk_dispersion_integral(const DispersionModel& m, double omega,
                              std::span<const double> grid) {
  // (2/pi) P-int_0^X  t eps_I(t) / (t^2 - omega^2) dt  with plateau subtraction:
  // the subtracted constant integrates to (1/2w) ln((X-w)/(X+w)) on [0, X].
  const double X = grid.back();
  const double f_w = omega * eval_permittivity(m, omega).imag();
  const double eps_i_slope = (eval_permittivity(m, omega).imag() +
                              omega * eval_response_derivative(m.eps, omega).imag());
  auto integrand = [&](double t) {
    const double f_t = t * eval_permittivity(m, t).imag();
    const double dt = t - omega;
    if (std::abs(dt) < 1e-9 * omega) return eps_i_slope / (2.0 * omega);
    return (f_t - f_w) / (dt * (t + omega));
  };
  double sum = 0.0;
  // leading panel [0, grid[0]]; tabulated models cannot evaluate below their
  // support, so there the grid itself is the lower edge (pre: grid covers the
  // support of eps_I)
  if (grid.front() > 0.0 && m.eps.kind != MaterialKind::Tabulated) {
    const double panel[2] = {0.0, grid.front()};
    sum += integrate_on_grid(integrand, panel, 2);
  }
  sum += integrate_on_grid(integrand, grid.data(), grid.size());
  if (omega < X) sum += f_w * std::log((X - omega) / (X + omega)) / (2.0 * omega);
  return (2.0 / pi) * sum;
}

double kk_max_residual(const DispersionModel& m, std::span<const double> grid) {
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / 128);
  double worst = 0.0;
  for (std::size_t j = stride; j + stride < grid.size(); j += stride) {
    const double w = grid[j];
    const double lhs = eval_permittivity(m, w).real() - 1.0;
    const double res = std::abs(lhs - kk_dispersion_integral(m, w, grid));
    worst = std::max(worst, res);
  }
  return worst;
}

}  // namespace

KramersKronigResult kramers_kronig_residual(const DispersionModel& m,
                                            std::span<const double> grid,
                                            double causal_threshold) {
  if (grid.size() < 8) throw validation_error("kramers_kronig_residual: grid too small");
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!(grid[i] > 0.0) || (i > 0 && grid[i] <= grid[i - 1]))
      throw validation_error("kramers_kronig_residual: grid must be positive and increasing");

  KramersKronigResult out;
  out.max_residual = kk_max_residual(m, grid);

  std::vector<double> coarse;
  coarse.reserve(grid.size() / 2 + 1);
  for (std::size_t i = 0; i < grid.size(); i += 2) coarse.push_back(grid[i]);
  if (coarse.back() != grid.back()) coarse.push_back(grid.back());
  out.coarse_residual = kk_max_residual(m, coarse);

  const double scale = std::max(out.max_residual, 1e-14);
  out.converged = std::abs(out.coarse_residual - out.max_residual) <= 0.5 * scale;
  out.causal = out.max_residual < causal_threshold;
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw validation_error("log_grid: bad arguments");
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (!(hi > lo) || n < 2) throw validation_error("linear_grid: bad arguments");
  std::vector<double> g(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

}  // namespace emden
