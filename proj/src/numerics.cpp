#include "ergrates/numerics.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "ergrates/error.hpp"

namespace ergrates::numerics {

namespace {

template <int N>
GaussRule make_rule() {
  using Gauss = boost::math::quadrature::gauss<double, N>;
  const auto& x = Gauss::abscissa();
  const auto& w = Gauss::weights();
  GaussRule rule;
  // Boost stores the non-negative half; for odd N the first node is 0.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      rule.nodes.push_back(0.0);
      rule.weights.push_back(w[i]);
    } else {
      rule.nodes.push_back(-x[i]);
      rule.weights.push_back(w[i]);
      rule.nodes.push_back(x[i]);
      rule.weights.push_back(w[i]);
    }
  }
  return rule;
}

constexpr double kHalfPi = 0.5 * std::numbers::pi;

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static const GaussRule r4 = make_rule<4>();
  static const GaussRule r5 = make_rule<5>();
  static const GaussRule r6 = make_rule<6>();
  static const GaussRule r7 = make_rule<7>();
  static const GaussRule r8 = make_rule<8>();
  static const GaussRule r10 = make_rule<10>();
  switch (order) {
    case 4: return r4;
    case 5: return r5;
    case 6: return r6;
    case 7: return r7;
    case 8: return r8;
    case 10: return r10;
    default:
      throw InvalidArgument("gauss_legendre: unsupported order " +
                            std::to_string(order));
  }
}

double integrate(const RealFn& f, double a, double b, double rel_tol,
                 double abs_tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 20, rel_tol, &error, &l1);
  if (error > 2.0 * std::max(rel_tol * l1, abs_tol) && error > 1e-300) {
    throw BudgetExceeded("adaptive quadrature did not reach tolerance");
  }
  return value;
}

double integrate_endpoint_singular(const RealFn& f, double a, double b,
                                   double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  try {
    double error = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate(f, a, b, rel_tol, &error, &l1);
    if (error > 10.0 * std::max(rel_tol * l1, abs_tol) && error > 1e-300) {
      throw BudgetExceeded("tanh-sinh quadrature did not reach tolerance");
    }
    return value;
  } catch (const boost::math::evaluation_error& e) {
    throw BudgetExceeded(std::string("tanh-sinh quadrature failed: ") + e.what());
  }
}

double integrate_panels(const RealFn& f, double a, double b, double panel,
                        const GaussRule& rule) {
  if (a == b) return 0.0;
  const auto count = static_cast<std::size_t>(std::ceil((b - a) / panel));
  const std::size_t n = std::max<std::size_t>(count, 1);
  const double h = (b - a) / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = a + h * static_cast<double>(i);
    const double mid = lo + 0.5 * h;
    double s = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      s += rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]);
    }
    total += 0.5 * h * s;
  }
  return total;
}

double integrate_piecewise(const RealFn& f, const BranchFn& branch, double a, double b,
                           double rel_tol, AngularKind kind) {
  // Tiny pieces next to a switch may carry almost nothing; judge them against
  // the magnitude of the whole interval.
  double abs_tol = 1e-300;
  // A switch missed between two samples leaves a kink inside a piece; halving
  // the piece a few times isolates it.
  std::function<double(double, double, int)> piece = [&](double lo, double hi, int depth) {
    if (!(hi > lo)) return 0.0;
    const double tol = std::max(abs_tol * (hi - lo) / (b - a), 1e-300);
    try {
      return kind == AngularKind::Smooth ? integrate(f, lo, hi, rel_tol, tol)
                                         : integrate_endpoint_singular(f, lo, hi, rel_tol, tol);
    } catch (const BudgetExceeded&) {
      if (depth >= 12) throw;
      const double mid = 0.5 * (lo + hi);
      return piece(lo, mid, depth + 1) + piece(mid, hi, depth + 1);
    }
  };
  if (!branch) return piece(a, b, 0);
  const double h = (b - a) / kBranchSamples;
  double scale = 0.0;
  for (int i = 1; i < kBranchSamples; ++i) scale += std::abs(f(a + h * i));
  abs_tol = rel_tol * scale * h;
  // Stay off the endpoints, where singular integrands may not be evaluable.
  auto sample = [&](int i) {
    if (i == 0) return a + 1e-9 * h;
    if (i == kBranchSamples) return b - 1e-9 * h;
    return a + h * i;
  };
  double total = 0.0;
  double start = a;
  double lo = sample(0);
  int lo_branch = branch(lo);
  for (int i = 1; i <= kBranchSamples; ++i) {
    double hi = sample(i);
    const int hi_branch = branch(hi);
    if (hi_branch != lo_branch) {
      double l = lo;
      double r = hi;
      while (r - l > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(r))) {
        const double m = 0.5 * (l + r);
        if (m <= l || m >= r) break;
        (branch(m) == lo_branch ? l : r) = m;
      }
      const double cut = 0.5 * (l + r);
      total += piece(start, cut, 0);
      start = cut;
    }
    lo = hi;
    lo_branch = hi_branch;
  }
  return total + piece(start, b, 0);
}

double integrate_sphere(std::size_t dim, const SphereFn& f, double rel_tol, AngularKind kind,
                        bool even, const SphereBranchFn& branch) {
  switch (dim) {
    case 1:
      return even ? 2.0 * f(VecD{1.0}) : f(VecD{1.0}) + f(VecD{-1.0});
    case 2: {
      auto point = [](double th) { return VecD{std::cos(th), std::sin(th)}; };
      auto g = [&](double th) { return f(point(th)); };
      BranchFn b;
      if (branch) b = [&](double th) { return branch(point(th)); };
      const int quadrants = even ? 2 : 4;
      double total = 0.0;
      for (int q = 0; q < quadrants; ++q) {
        total += integrate_piecewise(g, b, q * kHalfPi, (q + 1) * kHalfPi, rel_tol, kind);
      }
      return even ? 2.0 * total : total;
    }
    case 3: {
      const double inner_tol = 0.1 * rel_tol;
      auto ring = [&](double phi) {
        const double s = std::sin(phi);
        const double c = std::cos(phi);
        auto point = [s, c](double th) { return VecD{s * std::cos(th), s * std::sin(th), c}; };
        auto g = [&](double th) { return f(point(th)); };
        BranchFn b;
        if (branch) b = [&](double th) { return branch(point(th)); };
        double total = 0.0;
        for (int q = 0; q < 4; ++q) {
          total += integrate_piecewise(g, b, q * kHalfPi, (q + 1) * kHalfPi, inner_tol, kind);
        }
        return total * s;
      };
      // Pieces appear and vanish as phi varies; the sequence of pieces met
      // around a ring identifies the smooth regime of the ring integral.
      BranchFn ring_branch;
      if (branch) {
        ring_branch = [&](double phi) {
          const double s = std::sin(phi);
          const double c = std::cos(phi);
          std::size_t h = 1469598103934665603ull;
          int last = std::numeric_limits<int>::min();
          for (int i = 0; i < 4 * kBranchSamples; ++i) {
            const double th = (i + 0.5) * kHalfPi / kBranchSamples;
            const int id = branch(VecD{s * std::cos(th), s * std::sin(th), c});
            if (id != last) {
              h = (h ^ static_cast<std::size_t>(id + 1000003)) * 1099511628211ull;
              last = id;
            }
          }
          return static_cast<int>(h & 0x7fffffff);
        };
      }
      const auto outer = branch ? AngularKind::AxisSingular : kind;
      double total = integrate_piecewise(ring, ring_branch, 0.0, kHalfPi, rel_tol, outer);
      if (even) return 2.0 * total;
      return total +
             integrate_piecewise(ring, ring_branch, kHalfPi, std::numbers::pi, rel_tol, outer);
    }
    default:
      throw InvalidArgument("integrate_sphere: dimension must be 1, 2 or 3");
  }
}

std::vector<double> find_roots(const RealFn& f, double lo, double hi, double step) {
  std::vector<double> roots;
  double a = lo;
  double fa = f(a);
  if (fa == 0.0) roots.push_back(a);
  while (a < hi) {
    const double b = std::min(a + step, hi);
    const double fb = f(b);
    if (fb == 0.0) {
      roots.push_back(b);
    } else if (fa != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      std::uintmax_t iters = 200;
      const auto [r0, r1] = boost::math::tools::toms748_solve(
          f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
      roots.push_back(0.5 * (r0 + r1));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

std::vector<Extremum> find_local_maxima(const RealFn& f, double lo, double hi,
                                        double step) {
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  std::vector<double> xs(n + 1);
  std::vector<double> ys(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    xs[i] = std::min(lo + step * static_cast<double>(i), hi);
    ys[i] = f(xs[i]);
  }
  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 <= n; ++i) {
    if (ys[i] >= ys[i - 1] && ys[i] > ys[i + 1]) {
      auto neg = [&](double x) { return -f(x); };
      const auto [x, v] =
          boost::math::tools::brent_find_minima(neg, xs[i - 1], xs[i + 1], 40);
      out.push_back({x, -v});
    }
  }
  return out;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("least_squares_slope: need >= 2 paired samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("least_squares_slope: constant abscissa");
  return sxy / sxx;
}

}  // namespace ergrates::numerics
