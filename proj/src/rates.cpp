#include "ergrates/rates.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include "ergrates/bessel.hpp"
#include "ergrates/error.hpp"
#include "ergrates/fourier.hpp"
#include "ergrates/numerics.hpp"
#include "ergrates/parallel.hpp"

namespace ergrates {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_t(const VecD& t, std::size_t dim) {
  if (t.dim() != dim) throw DimensionMismatch(dim, t.dim());
  if (!t.all_positive()) throw InvalidArgument("t must be positive");
}

// tanh-sinh has an absolute error floor; map onto [0, 1] and divide out the
// expected magnitude so small integrals keep their relative accuracy.
double scaled_singular(const numerics::RealFn& f, double a, double b, double magnitude,
                       double tol) {
  if (!(b > a)) return 0.0;
  if (!(magnitude > 0.0)) magnitude = 1.0;
  const double h = b - a;
  auto g = [&](double x) { return f(a + h * x) * h / magnitude; };
  return magnitude * numerics::integrate_endpoint_singular(g, 0.0, 1.0, tol, tol);
}

// H(Z) = \int_0^Z s^{beta - 1} G(s)^2 ds for the ball profile G, tabulated at
// quarter periods of G^2 and extended on demand.
class RadialPrimitive {
 public:
  static constexpr double kKnot = 0.25 * kPi;

  RadialPrimitive(std::size_t dim, double beta) : dim_(dim), beta_(beta) {}

  double operator()(double z) {
    if (!(z > 0.0)) return 0.0;
    if (z <= kKnot) return head(z);
    const auto k = static_cast<std::size_t>(z / kKnot);
    while (table_.size() <= k) extend();
    const double a = kKnot * static_cast<double>(k);
    return table_[k] + tail(a, z);
  }

 private:
  double integrand(double s) const {
    const double g = ball_profile(dim_, s);
    return std::pow(s, beta_ - 1.0) * g * g;
  }

  double head(double z) const {
    // z^beta \int_0^1 x^{beta - 1} G(z x)^2 dx
    auto f = [&](double x) {
      const double g = ball_profile(dim_, z * x);
      return std::pow(x, beta_ - 1.0) * g * g;
    };
    return std::pow(z, beta_) * numerics::integrate_endpoint_singular(f, 0.0, 1.0, 1e-12);
  }

  // Away from the origin a quarter period is resolved by one Kronrod rule.
  double tail(double a, double b) const {
    if (!(b > a)) return 0.0;
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    return GK::integrate([&](double s) { return integrand(s); }, a, b, 0, 0.0);
  }

  void extend() {
    if (table_.empty()) {
      table_.push_back(0.0);
      table_.push_back(head(kKnot));
      return;
    }
    const double a = kKnot * static_cast<double>(table_.size() - 1);
    table_.push_back(table_.back() + tail(a, a + kKnot));
  }

  std::size_t dim_;
  double beta_;
  std::vector<double> table_;
};

RadialPrimitive& primitive(std::size_t dim, double beta) {
  thread_local std::map<std::pair<std::size_t, double>, RadialPrimitive> cache;
  return cache.try_emplace({dim, beta}, dim, beta).first->second;
}

// Cube: r -> |F[I_K](r v)|^2 / L_d(K)^2, a product of sinc^2 factors.
double cube_profile(const VecD& v, double r) {
  double m = 1.0;
  for (double c : v) {
    const double h = 0.5 * r * c;
    const double s = std::abs(h) < 1e-4 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
    m *= s * s;
  }
  return m;
}

// \int_0^{r_max} r^{beta - 1} |F(r v)|^2 dr for the cube on quarter-period panels.
double cube_radial_integral(const VecD& v, double beta, double r_max, double tol) {
  if (!(r_max > 0.0)) return 0.0;
  double frequency = 0.0;
  for (double c : v) frequency += std::abs(c);
  if (frequency == 0.0) return std::pow(r_max, beta) / beta;
  auto f = [&](double r) { return std::pow(r, beta - 1.0) * cube_profile(v, r); };
  double panel = kPi / (2.0 * frequency);
  const double first = std::min(panel, r_max);
  const double head = scaled_singular(f, 0.0, first, std::pow(first, beta) / beta, 0.1 * tol);
  if (first >= r_max) return head;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double span = r_max - first;
    const auto n = static_cast<std::size_t>(std::ceil(span / panel));
    const double h = span / static_cast<double>(n);
    double sum = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = first + h * static_cast<double>(i);
      const double b = i + 1 == n ? r_max : a + h;
      double e = 0.0;
      sum += GK::integrate(f, a, b, 0, 0.0, &e);
      err += e;
    }
    if (err <= tol * (head + sum)) return head + sum;
    panel *= 0.5;
  }
  throw BudgetExceeded("i_k_continuous: radial quadrature did not reach tolerance");
}

bool all_equal(const VecD& t) {
  return std::all_of(t.begin(), t.end(), [&](double v) { return v == t[0]; });
}

VecD first_axis(std::size_t dim) {
  VecD e(dim);
  e[0] = 1.0;
  return e;
}

// Contribution of direction w: A(w) \int_0^{cut(w)} r^{beta - 1} |F(r w.t)|^2 dr.
double directional(const ConvexBody& body, const PolarDensity& part, const VecD& w, const VecD& t,
                   double tol) {
  const double weight = part.angular(w);
  if (weight == 0.0) return 0.0;
  const double cut = part.cutoff(w);
  const VecD v = hadamard(w, t);
  if (body.kind() == BodyKind::Cube) {
    return weight * cube_radial_integral(v, part.exponent, cut, 0.1 * tol);
  }
  // Substituting s = r |v.a| leaves the universal primitive H.
  const double lambda = hadamard(v, body.semi_axes()).norm();
  const double beta = part.exponent;
  return weight * std::pow(lambda, -beta) * primitive(body.dim(), beta)(cut * lambda);
}

double continuous_part(const ConvexBody& body, const PolarDensity& part, std::size_t dim,
                       const VecD& t, double tol) {
  if (body.kind() == BodyKind::Ball && part.isotropic && all_equal(t)) {
    // Every direction contributes the same radial integral.
    return unit_sphere_area(dim) * directional(body, part, first_axis(dim), t, tol);
  }
  auto f = [&](const VecD& w) { return directional(body, part, w, t, tol); };
  const auto kind = part.axis_singular ? numerics::AngularKind::AxisSingular
                                       : numerics::AngularKind::Smooth;
  return numerics::integrate_sphere(dim, f, tol, kind, true, part.cutoff_branch);
}

// ---- distribution-function form ------------------------------------------

// Level-set bookkeeping for u -> {z : G(z) > u}, G = |ball profile|.
class LobeTable {
 public:
  LobeTable(std::size_t dim, double z_max) : dim_(dim) {
    auto j = [nu = 0.5 * static_cast<double>(dim)](double z) { return bessel_j(nu, z); };
    zeros_ = numerics::find_roots(j, 0.5, z_max + 4.0, 0.5);
    if (zeros_.empty()) throw Error("distribution form: no Bessel zero found");
    for (std::size_t k = 0; k + 1 < zeros_.size() && zeros_[k] < z_max; ++k) {
      auto neg = [&](double z) { return -g(z); };
      const auto [z, v] =
          boost::math::tools::brent_find_minima(neg, zeros_[k], zeros_[k + 1], 52);
      peaks_.push_back(z);
      heights_.push_back(-v);
    }
  }

  double g(double z) const { return std::abs(ball_profile(dim_, z)); }

  const std::vector<double>& zeros() const { return zeros_; }
  const std::vector<double>& peaks() const { return peaks_; }
  const std::vector<double>& heights() const { return heights_; }

  // Point in [lo, hi] where G crosses u; G - u changes sign on the bracket.
  double crossing(double u, double lo, double hi) const {
    auto f = [&](double z) { return g(z) - u; };
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) return std::abs(flo) < std::abs(fhi) ? lo : hi;
    std::uintmax_t iters = 100;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(48), iters);
    return 0.5 * (a + b);
  }

 private:
  std::size_t dim_;
  std::vector<double> zeros_;
  std::vector<double> peaks_;
  std::vector<double> heights_;
};

// 2 \int_0^1 u mu({r : G(kappa r) > u, r <= r_cut}) du per unit solid angle,
// mu = c r^{gamma - 1} dr.
double distribution_integral(std::size_t dim, double kappa, double gamma, double r_cut, double c,
                             double tol) {
  const double z_max = kappa * r_cut;
  const LobeTable table(dim, z_max);
  auto mu = [&](double a, double b) {
    b = std::min(b, z_max);
    if (!(b > a)) return 0.0;
    return c * (std::pow(b / kappa, gamma) - std::pow(a / kappa, gamma)) / gamma;
  };
  // Magnitude of a lobe: top^2 times the mass it spans.
  auto over_u = [&](const numerics::RealFn& h, double top, double split, double lo, double hi) {
    const double scale = top * top * mu(lo, hi);
    if (!(scale > 0.0)) return 0.0;
    if (split > 0.0 && split < top) {
      return scaled_singular(h, 0.0, split, scale, tol) + scaled_singular(h, split, top, scale, tol);
    }
    return scaled_singular(h, 0.0, top, scale, tol);
  };
  const auto& zeros = table.zeros();
  // Main lobe [0, z_1), where G falls from 1 to 0.
  auto main_lobe = [&](double u) { return u * mu(0.0, table.crossing(u, 0.0, zeros[0])); };
  double total = over_u(main_lobe, 1.0, z_max < zeros[0] ? table.g(z_max) : -1.0, 0.0, zeros[0]);
  for (std::size_t k = 0; k < table.peaks().size(); ++k) {
    const double lo = zeros[k];
    const double hi = zeros[k + 1];
    const double peak = table.peaks()[k];
    auto lobe = [&](double u) {
      const double a = table.crossing(u, lo, peak);
      if (a >= z_max) return 0.0;
      return u * mu(a, table.crossing(u, peak, hi));
    };
    const double split = z_max < hi ? table.g(z_max) : -1.0;
    total += over_u(lobe, table.heights()[k], split, lo, hi);
  }
  return 2.0 * total;
}

// ---- evidence tests --------------------------------------------------------

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void validate_grid(const RateGrid& grid, std::size_t dim) {
  if (grid.p.size() < kMinGridLevels) {
    throw InvalidArgument("grid too small: need at least " + std::to_string(kMinGridLevels) +
                          " p levels");
  }
  if (grid.directions.empty()) throw InvalidArgument("grid too small: no directions");
  for (const auto& s : grid.directions) require_positive_t(s, dim);
  for (std::size_t i = 0; i < grid.p.size(); ++i) {
    if (!(grid.p[i] > 0.0) || (i && !(grid.p[i] > grid.p[i - 1]))) {
      throw InvalidArgument("grid p levels must be positive and increasing");
    }
  }
}

// sup over directions of ratio(t) for each p, evaluated in parallel.
RatioSeries sup_series(const RateGrid& grid, const std::function<double(const VecD&)>& ratio) {
  const std::size_t nd = grid.directions.size();
  const auto values = parallel_map(grid.p.size() * nd, [&](std::size_t i) {
    return ratio(grid.p[i / nd] * grid.directions[i % nd]);
  });
  RatioSeries out;
  out.p = grid.p;
  for (std::size_t j = 0; j < grid.p.size(); ++j) {
    out.sup_ratio.push_back(*std::max_element(values.begin() + j * nd, values.begin() + (j + 1) * nd));
  }
  out.test = doubling_test(out.p, out.sup_ratio);
  return out;
}

double evaluate_i(const ConvexBody& body, const SpectralMeasure& sigma, const VecD& t, double tol) {
  return sigma.atomic_part().empty() ? i_k(body, sigma, t, tol)
                                     : i_k_window_averaged(body, sigma, t, tol);
}

RateFit solve_fit(std::span<const RateSample> samples, std::string path, bool with_log) {
  if (samples.size() < kMinFitPoints) {
    throw InvalidArgument("fit_rate: need at least " + std::to_string(kMinFitPoints) + " samples");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].p > 1.0)) throw InvalidArgument("fit_rate: p must exceed 1");
    if (!(samples[i].value > 0.0)) throw InvalidArgument("fit_rate: values must be positive");
    if (i && !(samples[i].p > samples[i - 1].p)) {
      throw InvalidArgument("fit_rate: p must be increasing");
    }
  }
  const double decades = std::log10(samples.back().p / samples.front().p);
  if (decades < kMinFitDecades * (1.0 - 1e-12)) {
    throw InvalidArgument("fit_rate: p range spans fewer than 2 decades");
  }
  const auto n = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index cols = with_log ? 3 : 2;
  Eigen::MatrixXd x(n, cols);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lp = std::log(samples[i].p);
    x(i, 0) = lp;
    x(i, 1) = 1.0;
    if (with_log) x(i, 2) = std::log(lp);
    y(i) = std::log(samples[i].value);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < cols) throw InvalidArgument("fit_rate: degenerate design matrix");
  const Eigen::VectorXd beta = qr.solve(y);
  RateFit fit;
  fit.theta_hat = beta(0);
  fit.intercept = beta(1);
  fit.log_power_hat = with_log ? beta(2) : 0.0;
  fit.residual_rms = std::sqrt((x * beta - y).squaredNorm() / static_cast<double>(n));
  fit.points = samples.size();
  fit.path = std::move(path);
  return fit;
}

// Brent refinement of an extremum of h on [lo, hi] (sign = +1 for max).
std::pair<double, double> refine_extremum(const std::function<double(double)>& h, double lo,
                                          double hi, double sign) {
  auto neg = [&](double x) { return -sign * h(x); };
  const auto [x, v] = boost::math::tools::brent_find_minima(neg, lo, hi, 52);
  return {x, -sign * v};
}

}  // namespace

// ---- homogeneous functions and sectors --------------------------------------

HomogeneousFunction::HomogeneousFunction(std::size_t dim, double degree, SphereRule rule,
                                         std::string description)
    : dim_(dim), degree_(degree), rule_(std::move(rule)), description_(std::move(description)) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("homogeneous function: bad dimension");
  if (!rule_) throw InvalidArgument("homogeneous function: missing sphere rule");
  if (!std::isfinite(degree)) throw InvalidArgument("homogeneous function: degree must be finite");
}

HomogeneousFunction HomogeneousFunction::power(std::size_t dim, double degree) {
  return {dim, degree, [](const VecD&) { return 1.0; }, "power:" + format_double(-degree)};
}

HomogeneousFunction HomogeneousFunction::monomial(const VecD& a) {
  const double degree = -std::accumulate(a.begin(), a.end(), 0.0);
  auto rule = [a](const VecD& w) {
    double v = 1.0;
    for (std::size_t k = 0; k < a.dim(); ++k) v *= std::pow(w[k], -a[k]);
    return v;
  };
  std::string text = "monomial:";
  for (std::size_t k = 0; k < a.dim(); ++k) text += (k ? "," : "") + format_double(a[k]);
  return {a.dim(), degree, rule, text};
}

double HomogeneousFunction::operator()(const VecD& t) const {
  require_positive_t(t, dim_);
  const double r = t.norm();
  return std::pow(r, degree_) * rule_((1.0 / r) * t);
}

Sector::Sector(double bound) : bound_(bound) {
  if (!(bound >= 1.0) || !std::isfinite(bound)) throw InvalidArgument("sector bound B must be >= 1");
}

bool Sector::contains(const VecD& t) const {
  if (!t.all_positive()) return false;
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  // Boundary directions built from exp(log B) may overshoot by an ulp.
  return *hi <= bound_ * *lo * (1.0 + 1e-12);
}

std::vector<VecD> Sector::sample_directions(std::size_t dim, std::size_t per_axis) const {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("sector: bad dimension");
  if (per_axis < 1) throw InvalidArgument("sector: need at least one sample per axis");
  std::vector<VecD> out;
  if (dim == 1) return {VecD{1.0}};
  if (per_axis == 1) return {VecD(dim, 1.0).normalized()};
  if (dim == 2) {
    const double lo = std::atan(1.0 / bound_);
    const double hi = std::atan(bound_);
    for (std::size_t i = 0; i < per_axis; ++i) {
      const double a = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(per_axis - 1);
      out.push_back(VecD{std::cos(a), std::sin(a)});
    }
    return out;
  }
  const double span = std::log(bound_);
  std::vector<std::size_t> idx(dim - 1, 0);
  while (true) {
    VecD t(dim, 1.0);
    double lmin = 0.0, lmax = 0.0;
    for (std::size_t k = 0; k + 1 < dim; ++k) {
      const double l = -span + 2.0 * span * static_cast<double>(idx[k]) / static_cast<double>(per_axis - 1);
      t[k + 1] = std::exp(l);
      lmin = std::min(lmin, l);
      lmax = std::max(lmax, l);
    }
    if (lmax - lmin <= span * (1.0 + 1e-12)) out.push_back(t.normalized());
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

// ---- fits --------------------------------------------------------------------

RateFit fit_rate(std::span<const RateSample> samples, std::string path) {
  return solve_fit(samples, std::move(path), true);
}

RateFit fit_power(std::span<const RateSample> samples, std::string path) {
  return solve_fit(samples, std::move(path), false);
}

std::vector<double> geometric_ladder(double p_min, double p_max, double max_ratio) {
  if (!(p_min > 0.0) || !(p_max > p_min)) throw InvalidArgument("ladder: need 0 < p_min < p_max");
  if (!(max_ratio > 1.0)) throw InvalidArgument("ladder: ratio must exceed 1");
  const auto n = static_cast<std::size_t>(
      std::ceil(std::log(p_max / p_min) / std::log(max_ratio) - 1e-9));
  std::vector<double> p(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    p[k] = p_min * std::pow(p_max / p_min, static_cast<double>(k) / static_cast<double>(n));
  }
  p.front() = p_min;
  p.back() = p_max;
  return p;
}

// ---- I_K evaluators --------------------------------------------------------------

double i_k_atomic(const ConvexBody& body, const SpectralMeasure& sigma, const VecD& t) {
  if (sigma.kind() != MeasureKind::Atomic) throw InvalidArgument("i_k_atomic: measure is not atomic");
  if (sigma.dim() != body.dim()) throw DimensionMismatch(body.dim(), sigma.dim());
  require_positive_t(t, body.dim());
  const double vol = body.volume();
  double total = 0.0;
  for (const auto& a : sigma.atoms()) {
    total += a.weight * std::norm(ft(body, hadamard(a.location, t)) / vol);
  }
  return total;
}

double i_k_continuous(const ConvexBody& body, const SpectralMeasure& sigma, const VecD& t,
                      double tol) {
  const std::size_t d = body.dim();
  if (sigma.dim() != d) throw DimensionMismatch(d, sigma.dim());
  require_positive_t(t, d);
  if (d > 3) throw InvalidArgument("i_k_continuous: dimension must be <= 3");
  if (!sigma.has_density()) throw InvalidArgument("i_k_continuous: measure has atoms");
  if (!(tol > 0.0)) throw InvalidArgument("i_k_continuous: tolerance must be positive");
  double total = 0.0;
  for (const auto& part : sigma.polar_parts()) total += continuous_part(body, part, d, t, tol);
  return total;
}

double i_k(const ConvexBody& body, const SpectralMeasure& sigma, const VecD& t, double tol) {
  const auto atoms = sigma.atomic_part();
  double total = atoms.empty() ? 0.0
                               : i_k_atomic(body, SpectralMeasure::atomic(sigma.dim(), atoms), t);
  const auto parts = sigma.polar_parts();
  if (!parts.empty()) {
    if (body.dim() > 3) throw InvalidArgument("i_k: continuous parts need dimension <= 3");
    require_positive_t(t, body.dim());
    for (const auto& part : parts) total += continuous_part(body, part, body.dim(), t, tol);
  }
  return total;
}

double i_k_window_averaged(const ConvexBody& body, const SpectralMeasure& sigma, const VecD& t,
                           double tol) {
  const auto atoms = sigma.atomic_part();
  double total = 0.0;
  if (!atoms.empty()) {
    const auto atomic = SpectralMeasure::atomic(sigma.dim(), atoms);
    for (int k = 0; k < kWindowSamples; ++k) {
      const double lambda = 1.0 + (k + 0.5) / kWindowSamples;
      total += i_k_atomic(body, atomic, lambda * t);
    }
    total /= kWindowSamples;
  }
  const auto parts = sigma.polar_parts();
  if (!parts.empty()) {
    require_positive_t(t, body.dim());
    for (const auto& part : parts) total += continuous_part(body, part, body.dim(), t, tol);
  }
  return total;
}

double i_k_distribution_form(const ConvexBody& body, const SpectralMeasure& sigma, const VecD& t,
                             double tol) {
  if (body.kind() != BodyKind::Ball) {
    throw InvalidArgument("i_k_distribution_form: only balls are supported");
  }
  const std::size_t d = body.dim();
  if (sigma.dim() != d) throw DimensionMismatch(d, sigma.dim());
  require_positive_t(t, d);
  std::vector<SpectralMeasure> radial;
  if (sigma.kind() == MeasureKind::Sum) {
    radial = sigma.parts();
  } else {
    radial.push_back(sigma);
  }
  for (const auto& part : radial) {
    if (part.kind() != MeasureKind::RadialPower) {
      throw InvalidArgument("i_k_distribution_form: only radial-power measures are supported");
    }
  }
  double total = 0.0;
  for (const auto& part : radial) {
    auto per_direction = [&](const VecD& w) {
      const double kappa = body.radius() * hadamard(w, t).norm();
      return distribution_integral(d, kappa, part.gamma(), part.cutoff(), part.scale(), tol);
    };
    if (all_equal(t)) {
      total += unit_sphere_area(d) * per_direction(first_axis(d));
    } else {
      if (d > 3) throw InvalidArgument("i_k_distribution_form: dimension must be <= 3");
      total += numerics::integrate_sphere(d, per_direction, 10.0 * tol,
                                          numerics::AngularKind::Smooth, true);
    }
  }
  return total;
}

// ---- checkers ---------------------------------------------------------------

BoundednessTest doubling_test(std::span<const double> p, std::span<const double> values) {
  if (p.size() != values.size() || p.size() < 3) {
    throw InvalidArgument("doubling test: need >= 3 paired values");
  }
  BoundednessTest out;
  out.last = values.back();
  out.median = median_of({values.begin(), values.end()});
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (values[i] > 0.0) {
      lx.push_back(std::log(p[i]));
      ly.push_back(std::log(values[i]));
    }
  }
  out.slope = lx.size() >= 2 ? numerics::least_squares_slope(lx, ly) : 0.0;
  if (out.median > 0.0) {
    out.margin = out.last / (4.0 * out.median);
  } else {
    out.margin = out.last > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  out.bounded = !(out.margin > 1.0 && out.slope > 0.0);
  return out;
}

Theorem1Report check_theorem1(const ConvexBody& body, const SpectralMeasure& sigma,
                              const HomogeneousFunction& phi, const RateGrid& grid, double tol) {
  const std::size_t d = body.dim();
  if (sigma.dim() != d) throw DimensionMismatch(d, sigma.dim());
  if (phi.dim() != d) throw DimensionMismatch(d, phi.dim());
  if (!(phi.degree() > -(static_cast<double>(d) + 1.0))) {
    throw InvalidArgument("theorem 1 needs a degree above -(d+1)");
  }
  validate_grid(grid, d);
  Theorem1Report r;
  r.i_ratio = sup_series(grid, [&](const VecD& t) { return evaluate_i(body, sigma, t, tol) / phi(t); });
  r.mass_ratio = sup_series(grid, [&](const VecD& t) {
    return mass(sigma, Neighborhood::ellipsoid_inverse(t)) / phi(t);
  });
  r.consistent = r.i_ratio.test.bounded == r.mass_ratio.test.bounded;
  r.verdict = r.consistent ? "consistent with equivalence" : "inconsistent with equivalence";
  return r;
}

Theorem2Report check_theorem2(const ConvexBody& body, const SpectralMeasure& sigma,
                              const Sector& sector, const RateGrid& grid, double tol,
                              bool require_sector) {
  const std::size_t d = body.dim();
  if (sigma.dim() != d) throw DimensionMismatch(d, sigma.dim());
  validate_grid(grid, d);
  Theorem2Report r;
  for (const auto& s : grid.directions) r.in_sector = r.in_sector && sector.contains(s);
  if (require_sector && !r.in_sector) {
    throw InvalidArgument("theorem 2 grid leaves the sector X_B");
  }
  const double q = static_cast<double>(d) + 1.0;
  r.scaled_i = sup_series(grid, [&](const VecD& t) {
    return std::pow(t.norm(), q) * evaluate_i(body, sigma, t, tol);
  });
  r.singular = singular_integral(sigma, q);
  if (r.singular.status == SingularIntegral::Status::Undetermined) {
    r.consistent = false;
    r.verdict = "undetermined";
  } else {
    const bool finite = r.singular.status == SingularIntegral::Status::Finite;
    r.consistent = finite == r.scaled_i.test.bounded;
    r.verdict = r.consistent ? "consistent with equivalence" : "inconsistent with equivalence";
  }
  return r;
}

Theorem3Report check_theorem3(const ConvexBody& body, const SpectralMeasure& sigma, double theta,
                              const VecD& direction, std::span<const double> p, double tol) {
  const std::size_t d = body.dim();
  if (sigma.dim() != d) throw DimensionMismatch(d, sigma.dim());
  const double critical = -(static_cast<double>(d) + 1.0);
  if (!(theta < critical)) throw InvalidArgument("theorem 3 needs a degree below -(d+1)");
  require_positive_t(direction, d);
  const VecD s = direction.normalized();
  Theorem3Report r;
  r.p.assign(p.begin(), p.end());
  r.i_values = parallel_map(r.p.size(), [&](std::size_t i) {
    return evaluate_i(body, sigma, r.p[i] * s, tol);
  });
  for (std::size_t i = 0; i < r.p.size(); ++i) {
    r.scaled.push_back(std::pow(r.p[i], -critical) * r.i_values[i]);
  }
  r.sigma_zero = sigma.is_zero();
  if (r.sigma_zero) {
    r.consistent = std::all_of(r.i_values.begin(), r.i_values.end(), [](double v) { return v == 0.0; });
    r.verdict = r.consistent ? "trivial rate: sigma = 0 and I vanishes" : "inconsistent: sigma = 0 but I > 0";
    return r;
  }
  std::vector<RateSample> samples;
  for (std::size_t i = 0; i < r.p.size(); ++i) samples.push_back({r.p[i], r.i_values[i]});
  r.fit = fit_power(samples, "p*(" + to_string(s) + ")");
  r.consistent = r.fit.theta_hat >= critical - kCriticalFitSlack;
  r.verdict = r.consistent ? "rate excluded" : "inconsistent: fitted decay beats -(d+1)";
  return r;
}

PredictedRate proposition2_bound(double gamma, std::size_t dim) {
  if (!(gamma > 0.0)) throw InvalidArgument("proposition 2: gamma must be positive");
  const double critical = static_cast<double>(dim) + 1.0;
  if (std::abs(gamma - critical) <= 1e-12 * critical) return {-critical, 1, "critical"};
  if (gamma < critical) return {-gamma, 0, "subcritical"};
  return {-critical, 0, "supercritical"};
}

EquivalenceBounds homog_equivalence_bounds(const HomogeneousFunction& phi, const Sector& sector) {
  const std::size_t d = phi.dim();
  auto check = [](double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("homogeneous function must be positive on the sector sphere");
    }
    return v;
  };
  if (d == 1) {
    const double v = check(phi.on_sphere(VecD{1.0}));
    return {v * (1.0 - kEquivalenceGuard), v * (1.0 + kEquivalenceGuard), VecD{1.0}, VecD{1.0}};
  }
  // Log-ratio coordinates l_k = log(t_{k+1} / t_1), feasible when
  // max(0, l) - min(0, l) <= log B.
  const double span = std::log(sector.bound());
  auto direction = [&](const std::vector<double>& l) {
    VecD t(d, 1.0);
    for (std::size_t k = 0; k + 1 < d; ++k) t[k + 1] = std::exp(l[k]);
    return t.normalized();
  };
  auto value = [&](const std::vector<double>& l) { return check(phi.on_sphere(direction(l))); };
  auto feasible_range = [&](const std::vector<double>& l, std::size_t k) {
    double lmin = 0.0, lmax = 0.0;
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (j == k) continue;
      lmin = std::min(lmin, l[j]);
      lmax = std::max(lmax, l[j]);
    }
    return std::pair{lmax - span, lmin + span};
  };
  const std::size_t per_axis = d == 2 ? 10001 : d == 3 ? 201 : 41;
  std::vector<double> best_lo, best_hi;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::vector<std::size_t> idx(d - 1, 0);
  std::vector<double> l(d - 1);
  while (true) {
    double lmin = 0.0, lmax = 0.0;
    for (std::size_t k = 0; k + 1 < d; ++k) {
      l[k] = span == 0.0 ? 0.0 : -span + 2.0 * span * static_cast<double>(idx[k]) / static_cast<double>(per_axis - 1);
      lmin = std::min(lmin, l[k]);
      lmax = std::max(lmax, l[k]);
    }
    if (lmax - lmin <= span * (1.0 + 1e-12)) {
      const double v = value(l);
      if (v < lo) { lo = v; best_lo = l; }
      if (v > hi) { hi = v; best_hi = l; }
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  // Coordinate-wise Brent refinement around the sampled extremes.
  const double step = span == 0.0 ? 0.0 : 2.0 * span / static_cast<double>(per_axis - 1);
  auto refine = [&](std::vector<double> x, double sign, double& best) {
    for (int sweep = 0; sweep < 3 && step > 0.0; ++sweep) {
      for (std::size_t k = 0; k < x.size(); ++k) {
        const auto [a, b] = feasible_range(x, k);
        const double left = std::max(a, x[k] - step);
        const double right = std::min(b, x[k] + step);
        if (!(right > left)) continue;
        auto h = [&](double v) {
          auto y = x;
          y[k] = v;
          return value(y);
        };
        const auto [arg, val] = refine_extremum(h, left, right, sign);
        if (sign * val > sign * best) {
          best = val;
          x[k] = arg;
        }
      }
    }
    return x;
  };
  best_lo = refine(best_lo, -1.0, lo);
  best_hi = refine(best_hi, 1.0, hi);
  return {lo * (1.0 - kEquivalenceGuard), hi * (1.0 + kEquivalenceGuard), direction(best_lo),
          direction(best_hi)};
}

}  // namespace ergrates
