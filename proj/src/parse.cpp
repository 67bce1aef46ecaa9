#include "ergrates/parse.hpp"

#include <charconv>
#include <cmath>

#include "ergrates/error.hpp"

namespace ergrates {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

// Splits on `sep` outside brackets and parentheses.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (depth < 0) throw InvalidArgument("unbalanced brackets in " + quoted(s));
    if (c == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw InvalidArgument("unbalanced brackets in " + quoted(s));
  out.push_back(s.substr(start));
  return out;
}

// `kind:rest` -> {kind, rest}; rest empty when there is no colon.
std::pair<std::string_view, std::string_view> split_kind(std::string_view s) {
  s = trim(s);
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return {s, {}};
  return {trim(s.substr(0, colon)), trim(s.substr(colon + 1))};
}

std::string_view unwrap(std::string_view s, char open, char close, std::string_view what) {
  s = trim(s);
  if (s.size() < 2 || s.front() != open || s.back() != close) {
    throw InvalidArgument(std::string(what) + ": expected " + open + "..." + close + " in " + quoted(s));
  }
  return s.substr(1, s.size() - 2);
}

// Items of `[ (..), (..) ]`, each without its parentheses.
std::vector<std::string_view> group_list(std::string_view s, std::string_view what) {
  const auto body = trim(unwrap(s, '[', ']', what));
  std::vector<std::string_view> out;
  if (body.empty()) return out;
  for (auto item : split_top(body, ',')) out.push_back(unwrap(item, '(', ')', what));
  return out;
}

std::size_t check_dim(std::size_t expected, std::size_t got, std::string_view what) {
  if (expected != got) {
    throw InvalidArgument(std::string(what) + " has dimension " + std::to_string(got) +
                          ", expected " + std::to_string(expected));
  }
  return got;
}

}  // namespace

double parse_number(std::string_view text) {
  const auto s = trim(text);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InvalidArgument("not a number: " + quoted(text));
  }
  return v;
}

std::uint64_t parse_count(std::string_view text) {
  const auto s = trim(text);
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw InvalidArgument("not a non-negative integer: " + quoted(text));
  }
  return v;
}

VecD parse_vec(std::string_view text) {
  if (trim(text).empty()) throw InvalidArgument("empty vector");
  std::vector<double> v;
  for (auto item : split_top(text, ',')) v.push_back(parse_number(item));
  return VecD(std::move(v));
}

ConvexBody parse_body(std::string_view text, std::size_t dim) {
  const auto [kind, rest] = split_kind(text);
  if (kind == "ball") return ConvexBody::ball(parse_number(rest), dim);
  if (kind == "ellipsoid") return ConvexBody::ellipsoid(parse_vec(rest));
  if (kind == "cube") {
    if (!rest.empty()) throw InvalidArgument("cube takes no parameters");
    return ConvexBody::cube(dim);
  }
  throw InvalidArgument("unknown body " + quoted(text) + " (expected ball:R, ellipsoid:a1,a2[,a3] or cube)");
}

std::optional<std::size_t> measure_dimension(std::string_view text) {
  const auto [kind, rest] = split_kind(text);
  if (kind == "atomic") {
    const auto atoms = group_list(rest, "atomic");
    if (atoms.empty()) return std::nullopt;
    const auto parts = split_top(atoms.front(), ';');
    return parse_vec(parts.front()).dim();
  }
  if (kind == "aniso") return parse_vec(split_top(rest, ';').front()).dim();
  if (kind == "sum") {
    for (auto part : split_top(unwrap(rest, '[', ']', "sum"), '|')) {
      if (auto d = measure_dimension(part)) return d;
    }
  }
  return std::nullopt;
}

SpectralMeasure parse_measure(std::string_view text, std::size_t dim) {
  const auto [kind, rest] = split_kind(text);
  if (kind == "atomic") {
    std::vector<Atom> atoms;
    for (auto item : group_list(rest, "atomic")) {
      const auto parts = split_top(item, ';');
      if (parts.size() != 2) throw InvalidArgument("atomic: expected (x1,...;w) in " + quoted(item));
      VecD x = parse_vec(parts[0]);
      check_dim(dim, x.dim(), "atom location");
      atoms.push_back({std::move(x), parse_number(parts[1])});
    }
    return SpectralMeasure::atomic(dim, std::move(atoms));
  }
  if (kind == "radial") {
    const auto v = parse_vec(rest);
    if (v.dim() != 3) throw InvalidArgument("radial: expected gamma,R,mass");
    return SpectralMeasure::radial_power_with_mass(dim, v[0], v[1], v[2]);
  }
  if (kind == "aniso") {
    const auto parts = split_top(rest, ';');
    if (parts.size() != 3) throw InvalidArgument("aniso: expected alpha1,...;b1,...;mass");
    VecD alpha = parse_vec(parts[0]);
    check_dim(dim, alpha.dim(), "aniso exponents");
    return SpectralMeasure::anisotropic_power_with_mass(std::move(alpha), parse_vec(parts[1]),
                                                        parse_number(parts[2]));
  }
  if (kind == "sum") {
    std::vector<SpectralMeasure> parts;
    for (auto part : split_top(unwrap(rest, '[', ']', "sum"), '|')) {
      parts.push_back(parse_measure(part, dim));
    }
    return SpectralMeasure::sum(std::move(parts));
  }
  throw InvalidArgument("unknown measure " + quoted(text) +
                        " (expected atomic:[...], radial:..., aniso:... or sum:[...])");
}

std::optional<std::size_t> action_dimension(std::string_view text) {
  const auto [kind, rest] = split_kind(text);
  if (kind != "action") return std::nullopt;
  const auto atoms = group_list(rest, "action");
  if (atoms.empty()) return std::nullopt;
  return parse_vec(split_top(atoms.front(), ';').front()).dim();
}

AtomicAction parse_action(std::string_view text, std::size_t dim, std::uint64_t seed) {
  const auto s = trim(text);
  if (s.starts_with("demo")) {
    return AtomicAction::demo(parse_count(s.substr(4)), dim, seed);
  }
  const auto [kind, rest] = split_kind(s);
  if (kind != "action") {
    throw InvalidArgument("unknown action " + quoted(text) + " (expected action:[...] or demoN)");
  }
  std::vector<ActionAtom> atoms;
  for (auto item : group_list(rest, "action")) {
    const auto parts = split_top(item, ';');
    if (parts.size() != 2) throw InvalidArgument("action: expected (x1,...;re,im) in " + quoted(item));
    VecD x = parse_vec(parts[0]);
    check_dim(dim, x.dim(), "action frequency");
    const auto c = parse_vec(parts[1]);
    if (c.dim() != 2) throw InvalidArgument("action: coefficient must be re,im in " + quoted(item));
    atoms.push_back({std::move(x), Complex(c[0], c[1])});
  }
  return {dim, std::move(atoms)};
}

HomogeneousFunction parse_phi(std::string_view text, std::size_t dim) {
  const auto [kind, rest] = split_kind(text);
  if (kind == "power") return HomogeneousFunction::power(dim, -parse_number(rest));
  if (kind == "monomial") {
    VecD a = parse_vec(rest);
    check_dim(dim, a.dim(), "monomial exponents");
    return HomogeneousFunction::monomial(a);
  }
  throw InvalidArgument("unknown phi " + quoted(text) + " (expected power:g or monomial:a1,...)");
}

Range parse_range(std::string_view text) {
  const auto parts = split_top(text, ':');
  if (parts.size() != 2) throw InvalidArgument("expected lo:hi in " + quoted(text));
  Range r{parse_number(parts[0]), parse_number(parts[1])};
  if (!(r.lo > 0.0) || !(r.hi > r.lo)) throw InvalidArgument("range needs 0 < lo < hi in " + quoted(text));
  return r;
}

Sampling parse_sampling(std::string_view text) {
  const auto parts = split_top(text, ':');
  if (parts.size() != 3) throw InvalidArgument("expected lo:hi:n in " + quoted(text));
  Sampling s{parse_number(parts[0]), parse_number(parts[1]), parse_count(parts[2])};
  if (!(s.lo >= 0.0) || !(s.hi > s.lo)) throw InvalidArgument("sampling needs 0 <= lo < hi in " + quoted(text));
  if (s.count < 2) throw InvalidArgument("sampling needs at least 2 points in " + quoted(text));
  return s;
}

}  // namespace ergrates
