#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergrates/geometry.hpp"
#include "ergrates/hilbert_sim.hpp"
#include "ergrates/rates.hpp"
#include "ergrates/spectral.hpp"
#include "ergrates/vec.hpp"

namespace ergrates {

/// Parsers for the text-form grammars. Every malformed input raises
/// InvalidArgument with a message naming the offending piece.

/// Whole-token decimal number; rejects trailing text and non-finite values.
double parse_number(std::string_view text);
/// Non-negative integer.
std::uint64_t parse_count(std::string_view text);
/// Comma-separated numbers, `1,2.5,3`.
VecD parse_vec(std::string_view text);

/// `ball:R`, `ellipsoid:a1,a2[,a3]` or `cube`. Balls and cubes take `dim`.
ConvexBody parse_body(std::string_view text, std::size_t dim);

/// `atomic:[(x1,x2;w),...]`, `radial:gamma,R,mass`,
/// `aniso:alpha1,...;b1,...;mass` or `sum:[m1|m2|...]`. Radial parts take
/// `dim`; the other kinds must agree with it.
SpectralMeasure parse_measure(std::string_view text, std::size_t dim);
/// Dimension a measure string fixes by itself, if any.
std::optional<std::size_t> measure_dimension(std::string_view text);

/// `action:[(x1,x2;re,im),...]` or `demoN` (N random atoms from `seed`).
/// The dimension comes from the first frequency, if any.
std::optional<std::size_t> action_dimension(std::string_view text);
AtomicAction parse_action(std::string_view text, std::size_t dim, std::uint64_t seed);

/// `power:g` for |t|^{-g} or `monomial:a1,...` for prod t_k^{-a_k}.
HomogeneousFunction parse_phi(std::string_view text, std::size_t dim);

/// `lo:hi` with 0 < lo < hi.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
};
Range parse_range(std::string_view text);

/// `lo:hi:n` with 0 <= lo < hi and n >= 2.
struct Sampling {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};
Sampling parse_sampling(std::string_view text);

}  // namespace ergrates
