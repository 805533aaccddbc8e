#ifndef EMDEN_QUADRATURE_HPP
#define EMDEN_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace emden {

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

// Adaptive Gauss-Kronrod (7-15 pair) on a finite interval. Throws
// tolerance_error if the interval budget is exhausted before convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, const QuadOptions& opt = {});

// Single 15-point Kronrod panel, no refinement (building block for composite rules).
double gk15_panel(const std::function<double(double)>& f, double a, double b);

// Composite fixed-order Gauss-Legendre (7 points per panel) over the panels of
// a caller-supplied grid. Used where the grid itself is the refinement control.
double integrate_on_grid(const std::function<double(double)>& f, const double* grid,
                         std::size_t n);

}  // namespace emden

#endif
