#include "ergrates/config.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

#include "ergrates/error.hpp"
#include "ergrates/parse.hpp"

namespace ergrates {

namespace {

using Canon = std::function<std::string(std::string_view)>;

std::string number_text(double v) { return format_double(v); }

std::string vec_text(const VecD& v) {
  std::string out;
  for (std::size_t k = 0; k < v.dim(); ++k) out += (k ? "," : "") + number_text(v[k]);
  return out;
}

VecD positive_vec(std::string_view s) {
  VecD v = parse_vec(s);
  if (!v.all_positive()) throw InvalidArgument("components must be positive");
  return v;
}

// Placeholder dimension for syntax checks before the working one is known.
std::size_t provisional(std::optional<std::size_t> d) { return d.value_or(2); }

std::string path_text(std::string_view s) {
  if (s.empty()) throw InvalidArgument("path must not be empty");
  return std::string(s);
}

const std::vector<std::pair<std::string, Canon>>& table() {
  static const std::vector<std::pair<std::string, Canon>> keys{
      {"body", [](std::string_view s) { return parse_body(s, 2).describe(); }},
      {"dim",
       [](std::string_view s) {
         const auto d = parse_count(s);
         if (d < 1 || d > 3) throw InvalidArgument("dim must be 1, 2 or 3");
         return std::to_string(d);
       }},
      {"measure",
       [](std::string_view s) { return parse_measure(s, provisional(measure_dimension(s))).describe(); }},
      {"action",
       [](std::string_view s) {
         if (s.starts_with("demo")) {
           if (parse_count(s.substr(4)) < 1) throw InvalidArgument("demo action needs at least one atom");
           return "demo" + std::to_string(parse_count(s.substr(4)));
         }
         return parse_action(s, provisional(action_dimension(s)), 0).describe();
       }},
      {"seed", [](std::string_view s) { return std::to_string(parse_count(s)); }},
      {"phi",
       [](std::string_view s) {
         if (s.starts_with("monomial:")) return parse_phi(s, parse_vec(s.substr(9)).dim()).describe();
         return parse_phi(s, 2).describe();
       }},
      {"direction", [](std::string_view s) { return vec_text(positive_vec(s)); }},
      {"t",
       [](std::string_view s) {
         std::string out;
         std::size_t start = 0;
         while (true) {
           const auto end = s.find(';', start);
           const auto item = s.substr(start, end == std::string_view::npos ? end : end - start);
           out += (out.empty() ? "" : ";") + vec_text(positive_vec(item));
           if (end == std::string_view::npos) break;
           start = end + 1;
         }
         return out;
       }},
      {"p",
       [](std::string_view s) {
         const auto r = parse_range(s);
         if (!(r.lo > 1.0)) throw InvalidArgument("p range must start above 1");
         return number_text(r.lo) + ":" + number_text(r.hi);
       }},
      {"ray",
       [](std::string_view s) {
         const auto r = parse_sampling(s);
         return number_text(r.lo) + ":" + number_text(r.hi) + ":" + std::to_string(r.count);
       }},
      {"box",
       [](std::string_view s) {
         const auto r = parse_sampling(s);
         return number_text(r.lo) + ":" + number_text(r.hi) + ":" + std::to_string(r.count);
       }},
      {"tolerance",
       [](std::string_view s) {
         const double v = parse_number(s);
         if (!(v > 0.0) || !(v < 1.0)) throw InvalidArgument("tolerance must lie in (0, 1)");
         return number_text(v);
       }},
      {"sector",
       [](std::string_view s) {
         const double v = parse_number(s);
         if (!(v >= 1.0)) throw InvalidArgument("sector bound must be >= 1");
         return number_text(v);
       }},
      {"per-axis",
       [](std::string_view s) {
         const auto n = parse_count(s);
         if (n < 1) throw InvalidArgument("per-axis must be >= 1");
         return std::to_string(n);
       }},
      {"theorem",
       [](std::string_view s) {
         const auto n = parse_count(s);
         if (n < 1 || n > 3) throw InvalidArgument("theorem must be 1, 2 or 3");
         return std::to_string(n);
       }},
      {"theta", [](std::string_view s) { return number_text(parse_number(s)); }},
      {"require-sector",
       [](std::string_view s) -> std::string {
         if (s == "true" || s == "false") return std::string(s);
         throw InvalidArgument("require-sector must be true or false");
       }},
      {"alpha", [](std::string_view s) { return vec_text(positive_vec(s)); }},
      {"grid",
       [](std::string_view s) {
         const auto g = parse_sampling(s);
         if (g.lo != 0.0) throw InvalidArgument("grid must start at 0");
         if (g.count < 8) throw InvalidArgument("grid resolution must be at least 8");
         return "0:" + number_text(g.hi) + ":" + std::to_string(g.count);
       }},
      {"r-mode",
       [](std::string_view s) -> std::string {
         if (s == "verbatim" || s == "at-max") return std::string(s);
         throw InvalidArgument("r-mode must be verbatim or at-max");
       }},
      {"out", path_text},
      {"report", path_text},
      {"gnuplot", path_text},
  };
  return keys;
}

bool is_output_key(std::string_view k) { return k == "out" || k == "report" || k == "gnuplot"; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, canon] : table()) k.push_back(name);
    return k;
  }();
  return keys;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const auto& t = table();
  const auto it = std::find_if(t.begin(), t.end(), [&](const auto& e) { return e.first == key; });
  if (it == t.end()) throw InvalidArgument("unknown key '" + std::string(key) + "'");
  try {
    values_[std::string(key)] = it->second(trim(value));
  } catch (const Error& e) {
    throw InvalidArgument(std::string(key) + ": " + e.what());
  }
}

void RunConfig::set_default(std::string_view key, std::string_view value) {
  if (!has(key)) set(key, value);
}

bool RunConfig::has(std::string_view key) const { return values_.find(key) != values_.end(); }

const std::string& RunConfig::get(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing required key '" + std::string(key) + "'");
  return it->second;
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::vector<std::string> errors;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      errors.push_back(where + "expected key = value");
      continue;
    }
    try {
      config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const Error& e) {
      errors.push_back(where + e.what());
    }
  }
  if (!errors.empty()) throw ConfigError(errors);
  return config;
}

std::string emit_config(const RunConfig& config) {
  std::string out;
  for (const auto& key : config_keys()) {
    if (config.has(key)) out += key + " = " + config.get(key) + "\n";
  }
  return out;
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& key : config_keys()) {
    if (!config.has(key) || is_output_key(key)) continue;
    for (char c : key + "=" + config.get(key) + "\n") {
      h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t config_dimension(const RunConfig& config) {
  if (config.has("body") && config.get("body").starts_with("ellipsoid")) {
    return parse_body(config.get("body"), 2).dim();
  }
  if (config.has("dim")) return parse_count(config.get("dim"));
  return 2;
}

std::vector<std::string> validate_config(const RunConfig& config) {
  std::vector<std::string> errors;
  if (config.has("body") && config.get("body").starts_with("ellipsoid") && config.has("dim")) {
    const auto d = parse_body(config.get("body"), 2).dim();
    if (d != parse_count(config.get("dim"))) {
      errors.push_back("dim = " + config.get("dim") + " conflicts with body " + config.get("body"));
    }
  }
  const std::size_t d = config_dimension(config);
  if (d > 3) errors.push_back("body dimension must be at most 3");
  auto check = [&](std::string_view key, const std::function<void(const std::string&)>& f) {
    if (!config.has(key)) return;
    try {
      f(config.get(key));
    } catch (const Error& e) {
      errors.push_back(std::string(key) + ": " + e.what());
    }
  };
  check("measure", [&](const std::string& s) { parse_measure(s, d); });
  check("action", [&](const std::string& s) { parse_action(s, d, 0); });
  check("phi", [&](const std::string& s) { parse_phi(s, d); });
  check("direction", [&](const std::string& s) {
    if (parse_vec(s).dim() != d) throw InvalidArgument("needs " + std::to_string(d) + " components");
  });
  check("t", [&](const std::string& s) {
    std::size_t start = 0;
    while (true) {
      const auto end = s.find(';', start);
      if (parse_vec(s.substr(start, end == std::string::npos ? end : end - start)).dim() != d) {
        throw InvalidArgument("every t needs " + std::to_string(d) + " components");
      }
      if (end == std::string::npos) break;
      start = end + 1;
    }
  });
  check("alpha", [&](const std::string& s) {
    if (parse_vec(s).dim() > kMaxDim) throw InvalidArgument("too many components");
  });
  return errors;
}

}  // namespace ergrates
