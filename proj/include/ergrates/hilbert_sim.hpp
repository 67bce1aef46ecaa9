#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ergrates/fourier.hpp"
#include "ergrates/geometry.hpp"
#include "ergrates/spectral.hpp"
#include "ergrates/vec.hpp"

namespace ergrates {

struct ActionAtom {
  VecD frequency;
  Complex coefficient;
};

/// Unitary R^d-action on L^2 of a finite atomic measure by multiplication
/// operators, (U_s h)_j = e^{i(s, x_j)} h_j, together with the vector h.
/// Frequencies are nonzero, so h has no invariant component. Coefficients at
/// identical frequencies are summed on construction.
class AtomicAction {
 public:
  AtomicAction(std::size_t dim, std::vector<ActionAtom> atoms);

  /// n atoms with |x_j| in [1, 3] and complex normal coefficients.
  static AtomicAction demo(std::size_t n, std::size_t dim, std::uint64_t seed);

  std::size_t dim() const { return dim_; }
  const std::vector<ActionAtom>& atoms() const { return atoms_; }
  /// sum_j |h_j|^2.
  double norm_sq() const;

  /// U_s h.
  std::vector<Complex> apply(const VecD& s) const;
  /// U_s applied to arbitrary coefficients on the same frequencies.
  std::vector<Complex> apply(const VecD& s, std::span<const Complex> h) const;

  /// Text form `action:[(x1,x2;re,im),...]`.
  std::string describe() const;

 private:
  std::size_t dim_;
  std::vector<ActionAtom> atoms_;
};

/// ||L_d(K_t)^{-1} \int_{K_t} U_s h ds||^2, computed atom by atom from the
/// transform of the dilated body.
double simulate_average(const AtomicAction& action, const ConvexBody& body, const VecD& t);

/// Spectral measure of h: atoms (x_j, |h_j|^2). Zero coefficients are dropped.
SpectralMeasure induced_measure(const AtomicAction& action);

}  // namespace ergrates
