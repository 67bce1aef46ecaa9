#include "ergrates/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "ergrates/bessel.hpp"
#include "ergrates/error.hpp"
#include "ergrates/numerics.hpp"

namespace ergrates {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{iz/2} sin(z/2) / (z/2) = (e^{iz} - 1) / (iz)
Complex cube_factor(double z) {
  const double h = 0.5 * z;
  const double sinc = std::abs(h) < 1e-4 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
  return std::polar(sinc, h);
}

// ---- adaptive tensor-product quadrature ---------------------------------

constexpr int kHighOrder = 6;
constexpr int kLowOrder = 5;

struct Cell {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct CellEstimate {
  Complex value;
  double error;
};

// Smooth map from a box onto the body together with its Jacobian. For the
// cube the box is [0,1]^d and the map is the identity. For an ellipsoid the
// box is [-pi/2, pi/2]^{d-1} x [-1, 1] with
//   y_k = a_k rho_k sin u_k,  rho_{k+1} = rho_k cos u_k   (k < d-1)
//   y_{d-1} = a_{d-1} rho_{d-1} u_{d-1},
// whose Jacobian a_1..a_d prod cos^{d-k} u_k is smooth up to the boundary.
class BodyMap {
 public:
  BodyMap(const ConvexBody& body, const VecD& x) : body_(body), x_(x) {}

  std::vector<double> box_lo() const {
    const std::size_t d = x_.dim();
    if (body_.kind() == BodyKind::Cube) return std::vector<double>(d, 0.0);
    std::vector<double> lo(d, -0.5 * kPi);
    lo[d - 1] = -1.0;
    return lo;
  }

  std::vector<double> box_hi() const {
    const std::size_t d = x_.dim();
    if (body_.kind() == BodyKind::Cube) return std::vector<double>(d, 1.0);
    std::vector<double> hi(d, 0.5 * kPi);
    hi[d - 1] = 1.0;
    return hi;
  }

  // Bound on |d(x, y(u)) / du_k| over the box.
  std::vector<double> phase_rates() const {
    const std::size_t d = x_.dim();
    std::vector<double> rates(d);
    if (body_.kind() == BodyKind::Cube) {
      for (std::size_t k = 0; k < d; ++k) rates[k] = std::abs(x_[k]);
      return rates;
    }
    const VecD& a = body_.semi_axes();
    const double amax = *std::max_element(a.begin(), a.end());
    for (std::size_t k = 0; k + 1 < d; ++k) rates[k] = x_.norm() * amax;
    rates[d - 1] = std::abs(x_[d - 1]) * a[d - 1];
    return rates;
  }

  // Tensor Gauss rule of the given order over one cell.
  Complex integrate_cell(const Cell& cell, const numerics::GaussRule& rule) const {
    const std::size_t d = x_.dim();
    const std::size_t n = rule.nodes.size();
    // Per-axis nodes and weights mapped into the cell.
    std::vector<double> u(d * n);
    std::vector<double> w(d * n);
    for (std::size_t k = 0; k < d; ++k) {
      const double half = 0.5 * (cell.hi[k] - cell.lo[k]);
      const double mid = 0.5 * (cell.hi[k] + cell.lo[k]);
      for (std::size_t i = 0; i < n; ++i) {
        u[k * n + i] = mid + half * rule.nodes[i];
        w[k * n + i] = half * rule.weights[i];
      }
    }
    if (body_.kind() == BodyKind::Cube) {
      // The integrand factorizes, so the tensor rule does as well.
      Complex total(1.0, 0.0);
      for (std::size_t k = 0; k < d; ++k) {
        Complex s(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
          s += w[k * n + i] * std::polar(1.0, x_[k] * u[k * n + i]);
        }
        total *= s;
      }
      return total;
    }
    return ellipsoid_level(0, 1.0, 1.0, 0.0, u, w, n);
  }

 private:
  Complex ellipsoid_level(std::size_t k, double rho, double jac, double phase,
                          const std::vector<double>& u,
                          const std::vector<double>& w, std::size_t n) const {
    const std::size_t d = x_.dim();
    const VecD& a = body_.semi_axes();
    Complex sum(0.0, 0.0);
    if (k + 1 == d) {
      const double scale = a[k] * rho;
      for (std::size_t i = 0; i < n; ++i) {
        const double y = scale * u[k * n + i];
        sum += w[k * n + i] * std::polar(1.0, phase + x_[k] * y);
      }
      return sum * (jac * scale);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double s = std::sin(u[k * n + i]);
      const double c = std::cos(u[k * n + i]);
      const double y = a[k] * rho * s;
      sum += w[k * n + i] * ellipsoid_level(k + 1, rho * c, jac * a[k] * rho * c,
                                            phase + x_[k] * y, u, w, n);
    }
    return sum;
  }

  const ConvexBody& body_;
  const VecD& x_;
};

}  // namespace

Complex ft_ball(double radius, const VecD& x) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("ft_ball: radius must be positive");
  }
  const std::size_t d = x.dim();
  if (d < 1 || d > kMaxDim) throw InvalidArgument("ft_ball: unsupported dimension");
  const double nu = 0.5 * static_cast<double>(d);
  const double scaled = bessel_j_over_power(nu, radius * x.norm());
  return {std::pow(2.0 * kPi, nu) * std::pow(radius, static_cast<double>(d)) * scaled,
          0.0};
}

Complex ft_cube(const VecD& x) {
  Complex total(1.0, 0.0);
  for (double v : x) total *= cube_factor(v);
  return total;
}

Complex ft(const ConvexBody& body, const VecD& x) {
  if (x.dim() != body.dim()) throw DimensionMismatch(body.dim(), x.dim());
  switch (body.kind()) {
    case BodyKind::Ball:
      return ft_ball(body.radius(), x);
    case BodyKind::Ellipsoid: {
      const VecD& a = body.semi_axes();
      return a.product() * ft_ball(1.0, hadamard(x, a));
    }
    case BodyKind::Cube:
      return ft_cube(x);
  }
  return {};
}

double ball_profile(std::size_t dim, double z) {
  const double nu = 0.5 * static_cast<double>(dim);
  return std::tgamma(nu + 1.0) * std::pow(2.0, nu) * bessel_j_over_power(nu, z);
}

double normalized_modulus_sq(const ConvexBody& body, const VecD& x) {
  if (x.dim() != body.dim()) throw DimensionMismatch(body.dim(), x.dim());
  if (body.kind() == BodyKind::Cube) {
    double m = 1.0;
    for (double v : x) {
      const double h = 0.5 * v;
      const double sinc = std::abs(h) < 1e-4 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
      m *= sinc * sinc;
    }
    return m;
  }
  const double g = ball_profile(body.dim(), hadamard(x, body.semi_axes()).norm());
  return g * g;
}

Complex ft_scaled(const ConvexBody& body, const VecD& t, const VecD& x) {
  if (t.dim() != body.dim()) throw DimensionMismatch(body.dim(), t.dim());
  if (!t.all_positive()) throw InvalidArgument("ft_scaled: t must be positive");
  return t.product() * ft(body, hadamard(x, t));
}

QuadratureResult ft_quadrature(const ConvexBody& body, const VecD& x, double tol,
                               std::size_t max_evaluations) {
  const std::size_t d = body.dim();
  if (x.dim() != d) throw DimensionMismatch(d, x.dim());
  if (d > 3) throw InvalidArgument("ft_quadrature: dimension must be <= 3");
  if (x.norm() > kQuadratureMaxFrequency) {
    throw InvalidArgument("ft_quadrature: |x| exceeds the oscillation cap");
  }
  if (!(tol > 0.0)) throw InvalidArgument("ft_quadrature: tolerance must be positive");

  const BodyMap map(body, x);
  const auto& high = numerics::gauss_legendre(kHighOrder);
  const auto& low = numerics::gauss_legendre(kLowOrder);
  std::size_t per_cell = 1;
  std::size_t low_cell = 1;
  for (std::size_t k = 0; k < d; ++k) {
    per_cell *= high.nodes.size();
    low_cell *= low.nodes.size();
  }
  per_cell += low_cell;

  // Initial grid: each cell spans at most a quarter period per axis.
  const auto lo = map.box_lo();
  const auto hi = map.box_hi();
  const auto rates = map.phase_rates();
  std::vector<std::size_t> counts(d);
  std::size_t initial = 1;
  for (std::size_t k = 0; k < d; ++k) {
    const double span = hi[k] - lo[k];
    counts[k] = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(span * rates[k] / (0.5 * kPi))));
    initial *= counts[k];
  }
  if (initial * per_cell > max_evaluations) {
    throw BudgetExceeded("ft_quadrature: initial grid exceeds the node budget");
  }

  std::vector<Cell> cells;
  std::vector<CellEstimate> estimates;
  cells.reserve(initial);
  std::vector<std::size_t> index(d, 0);
  for (std::size_t c = 0; c < initial; ++c) {
    Cell cell{std::vector<double>(d), std::vector<double>(d)};
    for (std::size_t k = 0; k < d; ++k) {
      const double h = (hi[k] - lo[k]) / static_cast<double>(counts[k]);
      cell.lo[k] = lo[k] + h * static_cast<double>(index[k]);
      cell.hi[k] = index[k] + 1 == counts[k] ? hi[k] : cell.lo[k] + h;
    }
    cells.push_back(std::move(cell));
    for (std::size_t k = 0; k < d; ++k) {
      if (++index[k] < counts[k]) break;
      index[k] = 0;
    }
  }

  std::size_t evaluations = 0;
  auto estimate = [&](const Cell& cell) {
    evaluations += per_cell;
    const Complex q_high = map.integrate_cell(cell, high);
    const Complex q_low = map.integrate_cell(cell, low);
    return CellEstimate{q_high, std::abs(q_high - q_low)};
  };

  using Entry = std::pair<double, std::size_t>;  // (error, cell index)
  std::priority_queue<Entry> worst;
  double total_error = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    estimates.push_back(estimate(cells[i]));
    total_error += estimates.back().error;
    worst.emplace(estimates.back().error, i);
  }

  while (total_error > tol) {
    const std::size_t split = 1u << d;
    if (evaluations + split * per_cell > max_evaluations) {
      throw BudgetExceeded("ft_quadrature: tolerance not reached within the node budget");
    }
    const std::size_t i = worst.top().second;
    worst.pop();
    const Cell parent = cells[i];
    total_error -= estimates[i].error;
    for (std::size_t child = 0; child < split; ++child) {
      Cell c = parent;
      for (std::size_t k = 0; k < d; ++k) {
        const double mid = 0.5 * (parent.lo[k] + parent.hi[k]);
        if (child & (1u << k)) c.lo[k] = mid;
        else c.hi[k] = mid;
      }
      const CellEstimate e = estimate(c);
      total_error += e.error;
      if (child == 0) {
        cells[i] = std::move(c);
        estimates[i] = e;
        worst.emplace(e.error, i);
      } else {
        cells.push_back(std::move(c));
        estimates.push_back(e);
        worst.emplace(e.error, cells.size() - 1);
      }
    }
    // Guard against drift in the running error sum.
    if (total_error <= tol) {
      total_error = 0.0;
      for (const auto& e : estimates) total_error += e.error;
    }
  }

  Complex value(0.0, 0.0);
  for (const auto& e : estimates) value += e.value;
  return {value, total_error, evaluations};
}

namespace herz {

double amplitude_coefficient(std::size_t dim) {
  return std::pow(2.0 * kPi, 0.5 * (static_cast<double>(dim) - 1.0));
}

double phase_offset(std::size_t dim) {
  return kPi * (static_cast<double>(dim) + 1.0) / 4.0;
}

}  // namespace herz

HerzAmplitude herz_asymptotic(const ConvexBody& body, const VecD& x) {
  if (!body.strictly_convex()) {
    throw NotStrictlyConvex("herz_asymptotic: the cube is not strictly convex");
  }
  if (x.dim() != body.dim()) throw DimensionMismatch(body.dim(), x.dim());
  const double r = x.norm();
  if (!(r > 0.0)) throw InvalidArgument("herz_asymptotic: x must be nonzero");
  const std::size_t d = body.dim();
  const auto [plus, minus] = extremal_points(body, x);
  const double decay = std::pow(r, -0.5 * (static_cast<double>(d) + 1.0));
  const double coeff = herz::amplitude_coefficient(d);

  HerzAmplitude out;
  out.amplitude_plus = coeff * decay / std::sqrt(gaussian_curvature(body, plus));
  out.amplitude_minus = coeff * decay / std::sqrt(gaussian_curvature(body, minus));
  out.phase_plus = dot(x, plus) - herz::phase_offset(d);
  out.phase_minus = dot(x, minus) + herz::phase_offset(d);
  out.value = std::polar(out.amplitude_plus, out.phase_plus) +
              std::polar(out.amplitude_minus, out.phase_minus);
  out.modulus_envelope = out.amplitude_plus + out.amplitude_minus;
  return out;
}

double decay_bound_constant(const ConvexBody& body, std::span<const VecD> samples) {
  if (samples.empty()) throw InvalidArgument("decay_bound_constant: empty sample");
  const double exponent = 0.5 * (static_cast<double>(body.dim()) + 1.0);
  double best = 0.0;
  for (const auto& x : samples) {
    const double r = x.norm();
    if (!(r > 0.0)) throw InvalidArgument("decay_bound_constant: zero sample");
    best = std::max(best, std::abs(ft(body, x)) * std::pow(r, exponent));
  }
  return best;
}

namespace {

// Grid spacing that resolves the oscillation of F along eta: the phase
// difference between the extremal contributions is r * width.
double ray_step(const ConvexBody& body, const VecD& eta) {
  return 2.0 * kPi / width(body, eta) / 32.0;
}

}  // namespace

std::vector<RayPeak> modulus_peaks_along_ray(const ConvexBody& body,
                                             const VecD& direction, double r_lo,
                                             double r_hi) {
  const VecD eta = direction.normalized();
  auto modulus = [&](double r) { return std::abs(ft(body, r * eta)); };
  std::vector<RayPeak> peaks;
  for (const auto& e :
       numerics::find_local_maxima(modulus, r_lo, r_hi, ray_step(body, eta))) {
    peaks.push_back({e.x, e.value});
  }
  return peaks;
}

std::vector<double> real_part_zeros_along_ray(const ConvexBody& body,
                                              const VecD& direction, double r_lo,
                                              double r_hi) {
  const VecD eta = direction.normalized();
  auto re = [&](double r) { return ft(body, r * eta).real(); };
  return numerics::find_roots(re, r_lo, r_hi, ray_step(body, eta));
}

}  // namespace ergrates
