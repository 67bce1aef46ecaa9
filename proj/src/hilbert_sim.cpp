#include "ergrates/hilbert_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ergrates/error.hpp"

namespace ergrates {

AtomicAction::AtomicAction(std::size_t dim, std::vector<ActionAtom> atoms) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("action: bad dimension");
  for (auto& a : atoms) {
    if (a.frequency.dim() != dim) throw DimensionMismatch(dim, a.frequency.dim());
    if (a.frequency.norm() == 0.0) throw InvalidArgument("action: zero frequency");
    if (!std::isfinite(a.coefficient.real()) || !std::isfinite(a.coefficient.imag())) {
      throw InvalidArgument("action: coefficients must be finite");
    }
    auto same = std::find_if(atoms_.begin(), atoms_.end(), [&](const ActionAtom& b) {
      return std::equal(b.frequency.begin(), b.frequency.end(), a.frequency.begin());
    });
    if (same == atoms_.end()) {
      atoms_.push_back(std::move(a));
    } else {
      same->coefficient += a.coefficient;
    }
  }
}

AtomicAction AtomicAction::demo(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> radius(1.0, 3.0);
  std::vector<ActionAtom> atoms;
  for (std::size_t j = 0; j < n; ++j) {
    VecD x(dim);
    for (auto& c : x) c = normal(rng);
    const double norm = x.norm();
    x = (radius(rng) / norm) * x;
    const double re = normal(rng);
    const double im = normal(rng);
    atoms.push_back({std::move(x), Complex(re, im)});
  }
  return {dim, std::move(atoms)};
}

double AtomicAction::norm_sq() const {
  double total = 0.0;
  for (const auto& a : atoms_) total += std::norm(a.coefficient);
  return total;
}

std::vector<Complex> AtomicAction::apply(const VecD& s, std::span<const Complex> h) const {
  if (s.dim() != dim_) throw DimensionMismatch(dim_, s.dim());
  if (h.size() != atoms_.size()) throw InvalidArgument("action: coefficient count mismatch");
  std::vector<Complex> out(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    out[j] = std::polar(1.0, dot(s, atoms_[j].frequency)) * h[j];
  }
  return out;
}

std::vector<Complex> AtomicAction::apply(const VecD& s) const {
  std::vector<Complex> h;
  for (const auto& a : atoms_) h.push_back(a.coefficient);
  return apply(s, h);
}

std::string AtomicAction::describe() const {
  std::string out = "action:[";
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    if (j) out += ",";
    out += "(";
    for (std::size_t k = 0; k < dim_; ++k) out += (k ? "," : "") + format_double(atoms_[j].frequency[k]);
    out += ";" + format_double(atoms_[j].coefficient.real()) + "," +
           format_double(atoms_[j].coefficient.imag()) + ")";
  }
  return out + "]";
}

double simulate_average(const AtomicAction& action, const ConvexBody& body, const VecD& t) {
  if (body.dim() != action.dim()) throw DimensionMismatch(body.dim(), action.dim());
  if (t.dim() != body.dim()) throw DimensionMismatch(body.dim(), t.dim());
  if (!t.all_positive()) throw InvalidArgument("t must be positive");
  double volume = body.volume();
  for (double v : t) volume *= v;
  double total = 0.0;
  for (const auto& a : action.atoms()) {
    total += std::norm(ft_scaled(body, t, a.frequency) / volume * a.coefficient);
  }
  return total;
}

SpectralMeasure induced_measure(const AtomicAction& action) {
  std::vector<Atom> atoms;
  for (const auto& a : action.atoms()) {
    const double w = std::norm(a.coefficient);
    if (w > 0.0) atoms.push_back({a.frequency, w});
  }
  return SpectralMeasure::atomic(action.dim(), std::move(atoms));
}

}  // namespace ergrates
