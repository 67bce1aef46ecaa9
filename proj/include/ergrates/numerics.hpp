#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ergrates/vec.hpp"

namespace ergrates::numerics {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Supported orders: 4, 5, 6, 7, 8, 10.
const GaussRule& gauss_legendre(int order);

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (15-point). Throws BudgetExceeded when the error
/// estimate stays above max(rel_tol * L1, abs_tol).
double integrate(const RealFn& f, double a, double b, double rel_tol,
                 double abs_tol = 0.0);

/// Tanh-sinh quadrature for integrands with endpoint singularities. Throws
/// BudgetExceeded when the error estimate stays above max(rel_tol * L1, abs_tol).
double integrate_endpoint_singular(const RealFn& f, double a, double b,
                                   double rel_tol, double abs_tol = 0.0);

/// Fixed Gauss-Legendre on panels of length <= panel over [a, b].
double integrate_panels(const RealFn& f, double a, double b, double panel,
                        const GaussRule& rule);

/// How the angular integrand behaves on the coordinate hyperplanes.
enum class AngularKind {
  Smooth,         // Gauss-Kronrod
  AxisSingular,   // integrable singularities where some omega_k = 0
};

/// Identifies the smooth piece of a piecewise-smooth integrand. Switches
/// between pieces are located by bisection and become panel endpoints.
using BranchFn = std::function<int(double)>;

/// Samples per interval used to detect branch switches.
inline constexpr int kBranchSamples = 128;

/// Integral of a piecewise-smooth f over [a, b]: split at every switch of
/// `branch`, then Gauss-Kronrod (Smooth) or tanh-sinh (AxisSingular) per piece.
double integrate_piecewise(const RealFn& f, const BranchFn& branch, double a, double b,
                           double rel_tol, AngularKind kind);

using SphereFn = std::function<double(const VecD&)>;
using SphereBranchFn = std::function<int(const VecD&)>;

/// Integral of f over the unit sphere S^{d-1}, d in {1, 2, 3}. Pieces are
/// split at the coordinate hyperplanes and, when `branch` is given, at the
/// switches it reports along each great-circle arc. With `even` set the
/// integrand is assumed to satisfy f(-w) = f(w) and only half the sphere is
/// visited.
double integrate_sphere(std::size_t dim, const SphereFn& f, double rel_tol, AngularKind kind,
                        bool even, const SphereBranchFn& branch = {});

/// Sign changes of f on a grid of spacing `step` over [lo, hi], refined to
/// machine precision.
std::vector<double> find_roots(const RealFn& f, double lo, double hi, double step);

struct Extremum {
  double x;
  double value;
};

/// Interior local maxima of f sampled with spacing `step`, refined by Brent.
std::vector<Extremum> find_local_maxima(const RealFn& f, double lo, double hi,
                                        double step);

/// Least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace ergrates::numerics
