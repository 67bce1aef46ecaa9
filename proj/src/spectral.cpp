#include "ergrates/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ergrates/error.hpp"
#include "ergrates/geometry.hpp"
#include "ergrates/numerics.hpp"

namespace ergrates {

namespace {

constexpr double kShellRelTol = 1e-8;

void check_dim(std::size_t dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw InvalidArgument("spectral measure: dimension must be in 1.." +
                          std::to_string(kMaxDim));
  }
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " must be positive");
  }
}

void check_positive(const VecD& v, const char* what) {
  for (double x : v) check_positive(x, what);
}

// \int_a^b r^{e-1} dr, 0 when b <= a.
double radial_power_integral(double a, double b, double e) {
  if (!(b > a)) return 0.0;
  if (std::isinf(b)) {
    if (e < 0.0) return std::pow(a, e) / -e;
    return std::numeric_limits<double>::infinity();
  }
  if (a == 0.0) {
    if (e > 0.0) return std::pow(b, e) / e;
    return std::numeric_limits<double>::infinity();
  }
  const double l = std::log(b / a);
  if (e == 0.0) return l;
  return std::pow(a, e) * std::expm1(e * l) / e;
}

double integrate_polar(const PolarDensity& part, std::size_t dim,
                       const numerics::SphereFn& radial_factor,
                       const numerics::SphereBranchFn& branch, double rel_tol) {
  auto f = [&](const VecD& w) { return part.angular(w) * radial_factor(w); };
  const auto kind = part.axis_singular ? numerics::AngularKind::AxisSingular
                                       : numerics::AngularKind::Smooth;
  return numerics::integrate_sphere(dim, f, rel_tol, kind, true, branch);
}

double mass_of_part(const PolarDensity& part, std::size_t dim, const Neighborhood& n,
                    double rel_tol) {
  auto radial = [&](const VecD& w) {
    const double r = std::min(n.radial_extent(w), part.cutoff(w));
    return std::pow(r, part.exponent) / part.exponent;
  };
  auto branch = [&](const VecD& w) {
    if (n.radial_extent(w) < part.cutoff(w)) return n.extent_branch(w);
    return 16 + part.cutoff_branch(w);
  };
  return integrate_polar(part, dim, radial, branch, rel_tol);
}

double atomic_mass(const std::vector<Atom>& atoms, const Neighborhood& n) {
  double total = 0.0;
  for (const auto& a : atoms) {
    if (n.contains(a.location)) total += a.weight;
  }
  return total;
}

// Closed form for the variants that have one; NaN otherwise.
double closed_form_mass(const SpectralMeasure& s, const Neighborhood& n) {
  const auto& p = n.parameter();
  const std::size_t d = s.dim();
  if (s.kind() == MeasureKind::RadialPower) {
    if (n.shape() == NeighborhoodShape::Ellipsoid &&
        std::all_of(p.begin(), p.end(), [&](double v) { return v == p[0]; })) {
      const double r = std::min(p[0], s.cutoff());
      return s.scale() * unit_sphere_area(d) * std::pow(r, s.gamma()) / s.gamma();
    }
    if (n.shape() == NeighborhoodShape::Box &&
        std::all_of(p.begin(), p.end(), [&](double t) { return t * s.cutoff() <= 1.0; })) {
      return s.total_mass();
    }
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (s.kind() == MeasureKind::AnisotropicPower) {
    const auto& a = s.alpha();
    const auto& b = s.half_widths();
    if (n.shape() == NeighborhoodShape::Box) {
      double m = s.scale();
      for (std::size_t k = 0; k < d; ++k) {
        m *= 2.0 * std::pow(std::min(1.0 / p[k], b[k]), a[k]) / a[k];
      }
      return m;
    }
    bool inside_box = true;
    for (std::size_t k = 0; k < d; ++k) inside_box = inside_box && p[k] <= b[k];
    if (inside_box) {
      // Dirichlet integral over the unit ball.
      double m = s.scale();
      double sum_alpha = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        m *= std::pow(p[k], a[k]) * std::tgamma(0.5 * a[k]);
        sum_alpha += a[k];
      }
      return m / std::tgamma(0.5 * sum_alpha + 1.0);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

SingularIntegral combine(const std::vector<SingularIntegral>& pieces) {
  SingularIntegral out{SingularIntegral::Status::Finite, 0.0};
  bool undetermined = false;
  for (const auto& p : pieces) {
    if (p.status == SingularIntegral::Status::Infinite) return {p.status, 0.0};
    if (p.status == SingularIntegral::Status::Undetermined) undetermined = true;
    out.value += p.value;
  }
  if (undetermined) return {SingularIntegral::Status::Undetermined, 0.0};
  return out;
}

SingularIntegral atomic_singular(const std::vector<Atom>& atoms, double q) {
  double total = 0.0;
  for (const auto& a : atoms) total += a.weight / std::pow(a.location.norm(), q);
  return {SingularIntegral::Status::Finite, total};
}

SingularIntegral shells_singular(const PolarDensity& part, std::size_t dim, double q) {
  const double e = part.exponent - q;
  auto between = [&](double lo, double hi) {
    auto radial = [&, lo, hi](const VecD& w) {
      return radial_power_integral(lo, std::min(hi, part.cutoff(w)), e);
    };
    auto branch = [&, lo, hi](const VecD& w) {
      const double c = part.cutoff(w);
      if (c <= lo) return -1;
      if (c >= hi) return -2;
      return part.cutoff_branch(w);
    };
    return integrate_polar(part, dim, radial, branch, kShellRelTol);
  };
  double partial = between(1.0, std::numeric_limits<double>::infinity());
  std::vector<double> shells(kShellCount);
  for (int j = 1; j <= kShellCount; ++j) {
    const double hi = std::ldexp(1.0, 1 - j);
    shells[j - 1] = between(0.5 * hi, hi);
    partial += shells[j - 1];
    if (!(partial <= kShellDivergenceBound)) {
      return {SingularIntegral::Status::Infinite, 0.0};
    }
  }
  const auto tail = shells.end() - kShellWindow;
  if (std::all_of(tail, shells.end(), [](double s) { return s == 0.0; })) {
    return {SingularIntegral::Status::Finite, partial};
  }
  bool decaying = true;
  bool growing = true;
  for (auto it = tail; it != shells.end(); ++it) {
    const double prev = *(it - 1);
    decaying = decaying && *it < kShellDecayRatio * prev;
    growing = growing && kShellDecayRatio * *it > prev;
  }
  if (decaying) {
    const double rho = shells.back() / shells[shells.size() - 2];
    return {SingularIntegral::Status::Finite, partial + shells.back() * rho / (1.0 - rho)};
  }
  if (growing) return {SingularIntegral::Status::Infinite, 0.0};
  return {SingularIntegral::Status::Undetermined, 0.0};
}

SingularIntegral singular_impl(const SpectralMeasure& s, double q, bool force_shells) {
  if (!(q > 0.0)) throw InvalidArgument("singular_integral: q must be positive");
  switch (s.kind()) {
    case MeasureKind::Atomic:
      return atomic_singular(s.atoms(), q);
    case MeasureKind::RadialPower:
      if (!force_shells) {
        if (s.gamma() <= q) return {SingularIntegral::Status::Infinite, 0.0};
        return {SingularIntegral::Status::Finite,
                s.scale() * unit_sphere_area(s.dim()) * std::pow(s.cutoff(), s.gamma() - q) /
                    (s.gamma() - q)};
      }
      [[fallthrough]];
    case MeasureKind::AnisotropicPower:
      return shells_singular(s.polar_parts().front(), s.dim(), q);
    case MeasureKind::Sum: {
      std::vector<SingularIntegral> pieces;
      for (const auto& p : s.parts()) pieces.push_back(singular_impl(p, q, force_shells));
      return combine(pieces);
    }
  }
  return {};
}

}  // namespace

SpectralMeasure SpectralMeasure::zero(std::size_t dim) { return atomic(dim, {}); }

SpectralMeasure SpectralMeasure::atomic(std::size_t dim, std::vector<Atom> atoms) {
  check_dim(dim);
  SpectralMeasure s;
  s.kind_ = MeasureKind::Atomic;
  s.dim_ = dim;
  for (const auto& a : atoms) {
    if (a.location.dim() != dim) throw DimensionMismatch(a.location.dim(), dim);
    if (a.location.norm() == 0.0) {
      throw InvalidArgument("atomic measure: atom at the origin is not allowed");
    }
    check_positive(a.weight, "atom weight");
    s.total_mass_ += a.weight;
  }
  s.atoms_ = std::move(atoms);
  return s;
}

SpectralMeasure SpectralMeasure::radial_power(std::size_t dim, double gamma, double cutoff,
                                              double scale) {
  check_dim(dim);
  check_positive(gamma, "gamma");
  check_positive(cutoff, "cutoff");
  check_positive(scale, "scale");
  SpectralMeasure s;
  s.kind_ = MeasureKind::RadialPower;
  s.dim_ = dim;
  s.gamma_ = gamma;
  s.cutoff_ = cutoff;
  s.scale_ = scale;
  s.total_mass_ = scale * unit_sphere_area(dim) * std::pow(cutoff, gamma) / gamma;
  return s;
}

SpectralMeasure SpectralMeasure::radial_power_with_mass(std::size_t dim, double gamma,
                                                        double cutoff, double total_mass) {
  check_dim(dim);
  check_positive(gamma, "gamma");
  check_positive(cutoff, "cutoff");
  check_positive(total_mass, "mass");
  const double unit = unit_sphere_area(dim) * std::pow(cutoff, gamma) / gamma;
  auto s = radial_power(dim, gamma, cutoff, total_mass / unit);
  s.total_mass_ = total_mass;
  return s;
}

SpectralMeasure SpectralMeasure::anisotropic_power(VecD alpha, VecD half_widths,
                                                   double scale) {
  check_dim(alpha.dim());
  if (alpha.dim() != half_widths.dim()) {
    throw DimensionMismatch(alpha.dim(), half_widths.dim());
  }
  check_positive(alpha, "alpha");
  check_positive(half_widths, "box half-width");
  check_positive(scale, "scale");
  SpectralMeasure s;
  s.kind_ = MeasureKind::AnisotropicPower;
  s.dim_ = alpha.dim();
  s.scale_ = scale;
  s.total_mass_ = scale;
  for (std::size_t k = 0; k < s.dim_; ++k) {
    s.total_mass_ *= 2.0 * std::pow(half_widths[k], alpha[k]) / alpha[k];
  }
  s.alpha_ = std::move(alpha);
  s.half_widths_ = std::move(half_widths);
  return s;
}

SpectralMeasure SpectralMeasure::anisotropic_power_with_mass(VecD alpha, VecD half_widths,
                                                             double total_mass) {
  check_positive(total_mass, "mass");
  auto unit = anisotropic_power(std::move(alpha), std::move(half_widths), 1.0);
  auto s = anisotropic_power(unit.alpha_, unit.half_widths_, total_mass / unit.total_mass_);
  s.total_mass_ = total_mass;
  return s;
}

SpectralMeasure SpectralMeasure::sum(std::vector<SpectralMeasure> parts) {
  if (parts.empty()) throw InvalidArgument("sum measure: needs at least one part");
  SpectralMeasure s;
  s.kind_ = MeasureKind::Sum;
  s.dim_ = parts.front().dim();
  for (const auto& p : parts) {
    if (p.dim() != s.dim_) throw DimensionMismatch(p.dim(), s.dim_);
    s.total_mass_ += p.total_mass_;
  }
  s.parts_ = std::move(parts);
  return s;
}

bool SpectralMeasure::has_density() const { return atomic_part().empty(); }

std::vector<Atom> SpectralMeasure::atomic_part() const {
  if (kind_ == MeasureKind::Atomic) return atoms_;
  std::vector<Atom> out;
  for (const auto& p : parts_) {
    auto sub = p.atomic_part();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::vector<PolarDensity> SpectralMeasure::polar_parts() const {
  std::vector<PolarDensity> out;
  switch (kind_) {
    case MeasureKind::Atomic:
      break;
    case MeasureKind::RadialPower: {
      PolarDensity p;
      p.exponent = gamma_;
      p.angular = [c = scale_](const VecD&) { return c; };
      p.cutoff = [r = cutoff_](const VecD&) { return r; };
      p.cutoff_branch = [](const VecD&) { return 0; };
      p.isotropic = true;
      out.push_back(std::move(p));
      break;
    }
    case MeasureKind::AnisotropicPower: {
      PolarDensity p;
      p.exponent = std::accumulate(alpha_.begin(), alpha_.end(), 0.0);
      p.angular = [c = scale_, a = alpha_](const VecD& w) {
        double v = c;
        for (std::size_t k = 0; k < a.dim(); ++k) {
          if (a[k] != 1.0) v *= std::pow(std::abs(w[k]), a[k] - 1.0);
        }
        return v;
      };
      p.cutoff = [b = half_widths_](const VecD& w) {
        double r = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < b.dim(); ++k) {
          if (w[k] != 0.0) r = std::min(r, b[k] / std::abs(w[k]));
        }
        return r;
      };
      p.cutoff_branch = [b = half_widths_](const VecD& w) {
        int arg = 0;
        double r = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < b.dim(); ++k) {
          if (w[k] != 0.0 && b[k] / std::abs(w[k]) < r) {
            r = b[k] / std::abs(w[k]);
            arg = static_cast<int>(k);
          }
        }
        return arg;
      };
      // Non-integer exponents leave |w_k|^{alpha_k - 1} non-smooth at w_k = 0.
      p.axis_singular = std::any_of(alpha_.begin(), alpha_.end(),
                                    [](double a) { return a != std::round(a); });
      out.push_back(std::move(p));
      break;
    }
    case MeasureKind::Sum:
      for (const auto& part : parts_) {
        auto sub = part.polar_parts();
        for (auto& p : sub) out.push_back(std::move(p));
      }
      break;
  }
  return out;
}

std::string SpectralMeasure::describe() const {
  switch (kind_) {
    case MeasureKind::Atomic: {
      std::string out = "atomic:[";
      for (std::size_t j = 0; j < atoms_.size(); ++j) {
        if (j) out += ',';
        out += '(' + to_string(atoms_[j].location) + ';' + format_double(atoms_[j].weight) + ')';
      }
      return out + ']';
    }
    case MeasureKind::RadialPower:
      return "radial:" + format_double(gamma_) + ',' + format_double(cutoff_) + ',' +
             format_double(total_mass_);
    case MeasureKind::AnisotropicPower:
      return "aniso:" + to_string(alpha_) + ';' + to_string(half_widths_) + ';' +
             format_double(total_mass_);
    case MeasureKind::Sum: {
      std::string out = "sum:[";
      for (std::size_t j = 0; j < parts_.size(); ++j) {
        if (j) out += '|';
        out += parts_[j].describe();
      }
      return out + ']';
    }
  }
  return {};
}

Neighborhood Neighborhood::ellipsoid(VecD delta) {
  check_positive(delta, "neighborhood parameter");
  return Neighborhood(NeighborhoodShape::Ellipsoid, std::move(delta));
}

Neighborhood Neighborhood::ellipsoid_inverse(const VecD& t) {
  check_positive(t, "neighborhood parameter");
  VecD delta(t.dim());
  for (std::size_t k = 0; k < t.dim(); ++k) delta[k] = 1.0 / t[k];
  return ellipsoid(std::move(delta));
}

Neighborhood Neighborhood::box(VecD t) {
  check_positive(t, "neighborhood parameter");
  return Neighborhood(NeighborhoodShape::Box, std::move(t));
}

bool Neighborhood::contains(const VecD& x) const {
  if (x.dim() != dim()) throw DimensionMismatch(x.dim(), dim());
  if (shape_ == NeighborhoodShape::Ellipsoid) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim(); ++k) {
      const double u = x[k] / parameter_[k];
      s += u * u;
    }
    return s < 1.0;
  }
  for (std::size_t k = 0; k < dim(); ++k) {
    const double u = parameter_[k] * x[k];
    if (!(u > -1.0 && u <= 1.0)) return false;
  }
  return true;
}

double Neighborhood::radial_extent(const VecD& omega) const {
  if (omega.dim() != dim()) throw DimensionMismatch(omega.dim(), dim());
  if (shape_ == NeighborhoodShape::Ellipsoid) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim(); ++k) {
      const double u = omega[k] / parameter_[k];
      s += u * u;
    }
    return 1.0 / std::sqrt(s);
  }
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dim(); ++k) {
    if (omega[k] != 0.0) r = std::min(r, 1.0 / (parameter_[k] * std::abs(omega[k])));
  }
  return r;
}

int Neighborhood::extent_branch(const VecD& omega) const {
  if (shape_ == NeighborhoodShape::Ellipsoid) return 0;
  int arg = 0;
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dim(); ++k) {
    if (omega[k] != 0.0 && 1.0 / (parameter_[k] * std::abs(omega[k])) < r) {
      r = 1.0 / (parameter_[k] * std::abs(omega[k]));
      arg = static_cast<int>(k);
    }
  }
  return arg;
}

double mass(const SpectralMeasure& sigma, const Neighborhood& n, double rel_tol) {
  if (sigma.dim() != n.dim()) throw DimensionMismatch(sigma.dim(), n.dim());
  switch (sigma.kind()) {
    case MeasureKind::Atomic:
      return atomic_mass(sigma.atoms(), n);
    case MeasureKind::Sum: {
      double total = 0.0;
      for (const auto& p : sigma.parts()) total += mass(p, n, rel_tol);
      return total;
    }
    default:
      break;
  }
  const double exact = closed_form_mass(sigma, n);
  if (!std::isnan(exact)) return exact;
  return mass_of_part(sigma.polar_parts().front(), sigma.dim(), n, rel_tol);
}

SingularIntegral singular_integral(const SpectralMeasure& sigma, double q) {
  return singular_impl(sigma, q, false);
}

SingularIntegral singular_integral_by_shells(const SpectralMeasure& sigma, double q) {
  return singular_impl(sigma, q, true);
}

double density_at(const SpectralMeasure& sigma, const VecD& x) {
  if (x.dim() != sigma.dim()) throw DimensionMismatch(x.dim(), sigma.dim());
  const double r = x.norm();
  if (r == 0.0) throw InvalidArgument("density_at: x must be nonzero");
  switch (sigma.kind()) {
    case MeasureKind::Atomic:
      if (!sigma.atoms().empty()) {
        throw InvalidArgument("density_at: atomic measures have no density");
      }
      return 0.0;
    case MeasureKind::RadialPower:
      if (r > sigma.cutoff()) return 0.0;
      return sigma.scale() * std::pow(r, sigma.gamma() - static_cast<double>(sigma.dim()));
    case MeasureKind::AnisotropicPower: {
      double v = sigma.scale();
      for (std::size_t k = 0; k < x.dim(); ++k) {
        const double u = std::abs(x[k]);
        if (u > sigma.half_widths()[k]) return 0.0;
        v *= std::pow(u, sigma.alpha()[k] - 1.0);
      }
      return v;
    }
    case MeasureKind::Sum: {
      if (!sigma.has_density()) {
        throw InvalidArgument("density_at: measure has an atomic part");
      }
      double total = 0.0;
      for (const auto& p : sigma.parts()) total += density_at(p, x);
      return total;
    }
  }
  return 0.0;
}

std::string to_string(SingularIntegral::Status status) {
  switch (status) {
    case SingularIntegral::Status::Finite:
      return "finite";
    case SingularIntegral::Status::Infinite:
      return "infinite";
    case SingularIntegral::Status::Undetermined:
      return "undetermined";
  }
  return {};
}

}  // namespace ergrates
