#ifndef EMDEN_DISPERSION_HPP
#define EMDEN_DISPERSION_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace emden {

using complexd = std::complex<double>;

enum class MaterialKind { Vacuum, Lorentz, Drude, Tabulated };

struct TabSample {
  double omega;
  complexd value;
};

// Monotone cubic (Fritsch-Carlson) interpolation of a tabulated response,
// real and imaginary parts separately, in log(omega). No extrapolation.
class TabulatedResponse {
 public:
  TabulatedResponse() = default;
  explicit TabulatedResponse(std::vector<TabSample> samples);

  complexd eval(double omega) const;  // omega within [min, max]
  double omega_min() const { return omega_min_; }
  double omega_max() const { return omega_max_; }
  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_;                  // log omega
  std::vector<double> yr_, yi_;            // sample values
  std::vector<double> dr_, di_;            // monotone slopes
  double omega_min_ = 0.0, omega_max_ = 0.0;
};

// One scalar linear response: the permittivity, or an analogous permeability.
struct ResponseFunction {
  MaterialKind kind = MaterialKind::Vacuum;
  double omega_p = 0.0;  // plasma frequency (coupling), >= 0
  double omega_0 = 0.0;  // resonance frequency, >= 0 (0 for Drude)
  double gamma = 0.0;    // damping rate, >= 0
  TabulatedResponse table;

  void validate(const std::string& label) const;
};

ResponseFunction lorentz_response(double omega_p, double omega_0, double gamma);
ResponseFunction drude_response(double omega_p, double gamma);
ResponseFunction tabulated_response(std::vector<TabSample> samples);

// eval_response(-w) == conj(eval_response(w)) by construction.
complexd eval_response(const ResponseFunction& r, double omega);
// d(response)/d(omega): analytic for parametric kinds, Richardson central
// differences (step 1e-4*omega) for tabulated ones.
complexd eval_response_derivative(const ResponseFunction& r, double omega);

struct DispersionModel {
  ResponseFunction eps;  // permittivity
  ResponseFunction mu;   // permeability; Vacuum kind means mu == 1 identically

  bool nonmagnetic() const { return mu.kind == MaterialKind::Vacuum; }
  void validate() const;
};

DispersionModel vacuum_model();
DispersionModel lorentz_model(double omega_p, double omega_0, double gamma);
DispersionModel drude_model(double omega_p, double gamma);

complexd eval_permittivity(const DispersionModel& m, double omega);
complexd eval_permeability(const DispersionModel& m, double omega);

struct Index {
  double re = 1.0;
  double im = 0.0;
  bool evanescent = false;  // eps*mu on the negative real axis: n_R = 0 branch
};

// Principal square root of eps*mu with n_R >= 0 (passive, outgoing branch).
Index refractive_index(complexd eps, complexd mu = complexd(1.0, 0.0));

struct OpticalResponse {
  double omega = 0.0;
  complexd eps{1.0, 0.0};
  complexd mu{1.0, 0.0};
  double n_re = 1.0;
  double n_im = 0.0;
  double v_g = 1.0;  // c / d(omega n_R)/domega, signed
  bool evanescent = false;
};

// Richardson-extrapolated central difference of d(omega n_R)/domega; the
// returned velocity is c over that derivative. Throws when the derivative
// magnitude falls below 1e-12 (anomalous-dispersion singularity).
double group_velocity(const DispersionModel& m, double omega, double h);

OpticalResponse optical_response(const DispersionModel& m, double omega, double fd_step = 0.0);

struct KramersKronigResult {
  double max_residual = 0.0;
  double coarse_residual = 0.0;  // same computation on the half-resolution grid
  bool converged = true;         // fine/coarse residuals agree
  bool causal = true;            // max residual below the causality threshold
};

// Residual of eps_R(w) - 1 - (2/pi) P-int_0^inf w' eps_I(w')/(w'^2 - w^2) dw'
// evaluated on (a decimation of) the grid points. The principal value is
// handled by subtracting the w*eps_I(w) plateau, which makes the integrand
// regular; the truncated-tail log term is restored analytically.
KramersKronigResult kramers_kronig_residual(const DispersionModel& m,
                                            std::span<const double> grid,
                                            double causal_threshold = 1e-3);

// Log- or linearly-spaced grids (CLI band helper lives here so tests share it).
std::vector<double> log_grid(double lo, double hi, std::size_t n);
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace emden

#endif
