#include "ergrates/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "ergrates/classify.hpp"
#include "ergrates/config.hpp"
#include "ergrates/error.hpp"
#include "ergrates/fourier.hpp"
#include "ergrates/hilbert_sim.hpp"
#include "ergrates/numerics.hpp"
#include "ergrates/parallel.hpp"
#include "ergrates/parse.hpp"
#include "ergrates/rates.hpp"

namespace ergrates {

namespace {

using nlohmann::json;

struct Subcommand {
  std::string name;
  std::string help;
  std::vector<std::string> keys;
};

const std::vector<Subcommand>& subcommands() {
  static const std::vector<Subcommand> subs{
      {"fourier", "Sample F[I_K] and its stationary-phase envelope along a ray or on a box",
       {"body", "dim", "direction", "ray", "box", "out"}},
      {"rates", "Evaluate I_K(p s) along a ray and fit the decay rate",
       {"body", "dim", "measure", "direction", "p", "tolerance", "out", "report"}},
      {"simulate", "Compare the ergodic average of an atomic action with the spectral integral",
       {"body", "dim", "action", "seed", "t", "out"}},
      {"verify", "Check a rate theorem numerically and write a JSON report",
       {"theorem", "body", "dim", "measure", "phi", "sector", "per-axis", "p", "theta", "direction",
        "tolerance", "out"}},
      {"classify", "Regime tables for one exponent vector, as JSON", {"alpha", "r-mode", "out"}},
      {"regionmap", "Label the (alpha_1, alpha_2) plane for cube and ball averages",
       {"grid", "r-mode", "out", "gnuplot"}},
  };
  return subs;
}

std::string num(double v) { return std::isfinite(v) ? format_double(v) : (v > 0 ? "inf" : v < 0 ? "-inf" : "nan"); }

std::string csv_trailer(const RunConfig& config) {
  return "# config-hash " + config_hash(config) + "\n# version " + std::string(kVersion) + "\n";
}

json report_header(const RunConfig& config) {
  return {{"schema", kSchemaVersion}, {"version", std::string(kVersion)}, {"config_hash", config_hash(config)}};
}

std::vector<double> as_vector(const VecD& v) { return {v.begin(), v.end()}; }

void write_artifact(const RunConfig& config, const std::string& key, const std::string& text,
                    std::ostream& out) {
  if (!config.has(key)) {
    out << text;
    return;
  }
  std::ofstream file(config.get(key), std::ios::binary);
  if (!file) throw ConfigError("cannot open " + config.get(key) + " for writing");
  file << text;
  if (!file) throw ConfigError("cannot write " + config.get(key));
}

TieMode tie_mode(const RunConfig& config) {
  return config.get("r-mode") == "at-max" ? TieMode::AtMax : TieMode::AllSuccessive;
}

std::vector<VecD> t_list(const std::string& s) {
  std::vector<VecD> out;
  std::size_t start = 0;
  while (true) {
    const auto end = s.find(';', start);
    out.push_back(parse_vec(s.substr(start, end == std::string::npos ? end : end - start)));
    if (end == std::string::npos) return out;
    start = end + 1;
  }
}

json fit_json(const RateFit& f) {
  return {{"theta_hat", f.theta_hat}, {"log_power_hat", f.log_power_hat}, {"intercept", f.intercept},
          {"residual_rms", f.residual_rms}, {"points", f.points}, {"path", f.path}};
}

json test_json(const BoundednessTest& t) {
  return {{"bounded", t.bounded}, {"last", t.last}, {"median", t.median}, {"slope", t.slope},
          {"margin", t.margin}};
}

json label_json(const RegimeLabel& l) {
  return {{"family", to_string(l.family)}, {"exponents", as_vector(l.exponents)}, {"log_power", l.log_power}};
}

// ---- subcommands ---------------------------------------------------------------

std::string run_fourier(const RunConfig& c) {
  const std::size_t d = config_dimension(c);
  const auto body = parse_body(c.get("body"), d);
  std::vector<VecD> points;
  if (c.has("box")) {
    const auto s = parse_sampling(c.get("box"));
    const double total = std::pow(static_cast<double>(s.count), static_cast<double>(d));
    if (total > 1e6) throw InvalidArgument("box: at most 1e6 points");
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      VecD x(d);
      for (std::size_t k = 0; k < d; ++k) {
        x[k] = s.lo + (s.hi - s.lo) * static_cast<double>(idx[k]) / static_cast<double>(s.count - 1);
      }
      points.push_back(std::move(x));
      std::size_t k = 0;
      while (k < d && ++idx[k] == s.count) idx[k++] = 0;
      if (k == d) break;
    }
  } else {
    const auto s = parse_sampling(c.get("ray"));
    const VecD eta = parse_vec(c.get("direction")).normalized();
    for (std::size_t i = 0; i < s.count; ++i) {
      points.push_back((s.lo + (s.hi - s.lo) * static_cast<double>(i) / static_cast<double>(s.count - 1)) * eta);
    }
  }
  std::string text;
  for (std::size_t k = 0; k < d; ++k) text += "x_" + std::to_string(k + 1) + ",";
  text += "re,im,abs,herz_envelope\n";
  const auto rows = parallel_map(points.size(), [&](std::size_t i) {
    const auto& x = points[i];
    const Complex f = ft(body, x);
    std::string row;
    for (double v : x) row += num(v) + ",";
    row += num(f.real()) + "," + num(f.imag()) + "," + num(std::abs(f)) + ",";
    if (body.strictly_convex() && x.norm() > 0.0) row += num(herz_asymptotic(body, x).modulus_envelope);
    return row + "\n";
  });
  for (const auto& r : rows) text += r;
  return text + csv_trailer(c);
}

std::pair<std::string, std::string> run_rates(const RunConfig& c) {
  const std::size_t d = config_dimension(c);
  const auto body = parse_body(c.get("body"), d);
  const auto sigma = parse_measure(c.get("measure"), d);
  const VecD s = parse_vec(c.get("direction"));
  const auto range = parse_range(c.get("p"));
  const double tol = parse_number(c.get("tolerance"));
  const auto p = geometric_ladder(range.lo, range.hi);
  const auto values = parallel_map(p.size(), [&](std::size_t i) { return i_k(body, sigma, p[i] * s, tol); });

  std::string text = "p,";
  for (std::size_t k = 0; k < d; ++k) text += "t_" + std::to_string(k + 1) + ",";
  text += "I,theta_fit_running\n";
  std::vector<double> lx, ly;
  bool positive = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    text += num(p[i]) + ",";
    for (double v : s) text += num(p[i] * v) + ",";
    text += num(values[i]) + ",";
    positive = positive && values[i] > 0.0;
    lx.push_back(std::log(p[i]));
    ly.push_back(positive ? std::log(values[i]) : 0.0);
    if (positive && lx.size() >= 3) text += num(numerics::least_squares_slope(lx, ly));
    text += "\n";
  }
  text += csv_trailer(c);

  json report = report_header(c);
  report["body"] = body.describe();
  report["measure"] = sigma.describe();
  report["p"] = p;
  report["I"] = values;
  std::vector<RateSample> samples;
  for (std::size_t i = 0; i < p.size(); ++i) samples.push_back({p[i], values[i]});
  try {
    report["fit"] = fit_json(fit_rate(samples, "p*(" + c.get("direction") + ")"));
  } catch (const InvalidArgument& e) {
    report["fit"] = nullptr;
    report["fit_error"] = e.what();
  }
  if (sigma.kind() == MeasureKind::RadialPower) {
    const auto b = proposition2_bound(sigma.gamma(), d);
    report["predicted"] = {{"theta", b.theta}, {"log_power", b.log_power}, {"regime", b.regime}};
  }
  return {text, report.dump(2) + "\n"};
}

std::string run_simulate(const RunConfig& c) {
  const std::size_t d = config_dimension(c);
  const auto body = parse_body(c.get("body"), d);
  const auto action = parse_action(c.get("action"), d, parse_count(c.get("seed")));
  const auto sigma = induced_measure(action);
  std::string text;
  for (std::size_t k = 0; k < d; ++k) text += "t_" + std::to_string(k + 1) + ",";
  text += "norm_sq,i_k_atomic,abs_diff\n";
  for (const auto& t : t_list(c.get("t"))) {
    const double direct = simulate_average(action, body, t);
    const double spectral = i_k_atomic(body, sigma, t);
    for (double v : t) text += num(v) + ",";
    text += num(direct) + "," + num(spectral) + "," + num(std::abs(direct - spectral)) + "\n";
  }
  return text + csv_trailer(c);
}

std::string run_verify(const RunConfig& c) {
  const std::size_t d = config_dimension(c);
  const auto body = parse_body(c.get("body"), d);
  const auto sigma = parse_measure(c.get("measure"), d);
  const double tol = parse_number(c.get("tolerance"));
  const auto range = parse_range(c.get("p"));
  const int theorem = static_cast<int>(parse_count(c.get("theorem")));
  json report = report_header(c);
  report["theorem"] = theorem;
  report["body"] = body.describe();
  report["measure"] = sigma.describe();
  report["fit"] = nullptr;
  if (theorem == 3) {
    const double theta = parse_number(c.get("theta"));
    const auto p = geometric_ladder(range.lo, range.hi);
    const auto r = check_theorem3(body, sigma, theta, parse_vec(c.get("direction")), p, tol);
    report["verdict"] = r.verdict;
    report["consistent"] = r.consistent;
    report["sigma_zero"] = r.sigma_zero;
    report["theta"] = theta;
    report["sup_ratios"] = {{"p", r.p}, {"scaled_i", r.scaled}};
    report["i_values"] = r.i_values;
    if (!r.sigma_zero) report["fit"] = fit_json(r.fit);
    return report.dump(2) + "\n";
  }
  const Sector sector(parse_number(c.get("sector")));
  const RateGrid grid{sector.sample_directions(d, parse_count(c.get("per-axis"))),
                      geometric_ladder(range.lo, range.hi)};
  report["sector"] = sector.bound();
  std::vector<json> dirs;
  for (const auto& w : grid.directions) dirs.push_back(as_vector(w));
  report["directions"] = dirs;
  if (theorem == 1) {
    const auto phi = parse_phi(c.get("phi"), d);
    const auto r = check_theorem1(body, sigma, phi, grid, tol);
    report["phi"] = phi.describe();
    report["verdict"] = r.verdict;
    report["consistent"] = r.consistent;
    report["sup_ratios"] = {{"p", r.i_ratio.p},
                            {"i_over_phi", r.i_ratio.sup_ratio},
                            {"mass_over_phi", r.mass_ratio.sup_ratio}};
    report["tests"] = {{"i_over_phi", test_json(r.i_ratio.test)}, {"mass_over_phi", test_json(r.mass_ratio.test)}};
  } else {
    const bool require = c.get("require-sector") == "true";
    const auto r = check_theorem2(body, sigma, sector, grid, tol, require);
    report["verdict"] = r.verdict;
    report["consistent"] = r.consistent;
    report["in_sector"] = r.in_sector;
    report["singular_integral"] = {{"status", to_string(r.singular.status)}, {"value", r.singular.value}};
    report["sup_ratios"] = {{"p", r.scaled_i.p}, {"scaled_i", r.scaled_i.sup_ratio}};
    report["tests"] = {{"scaled_i", test_json(r.scaled_i.test)}};
  }
  return report.dump(2) + "\n";
}

std::string run_classify(const RunConfig& c) {
  const PowerParams p(parse_vec(c.get("alpha")), tie_mode(c));
  json report = report_header(c);
  report["alpha"] = as_vector(p.alpha);
  report["alpha_star"] = as_vector(p.alpha_star);
  report["m"] = p.m;
  report["r"] = p.r;
  report["r_mode"] = c.get("r-mode");
  report["theta"] = p.theta;
  report["square"] = label_json(square_regime(p));
  report["circle"] = label_json(circle_regime(p));
  report["verdict"] = to_string(compare_along_diagonal(p));
  return report.dump(2) + "\n";
}

std::string gnuplot_script(const std::string& csv) {
  return "# Region maps for cube (left) and ball (right) averages.\n"
         "set datafile separator \",\"\n"
         "set terminal pngcairo size 1200,560\n"
         "set output \"" + csv + ".png\"\n"
         "set multiplot layout 1,2\n"
         "set xlabel \"alpha_1\"\n"
         "set ylabel \"alpha_2\"\n"
         "set size ratio -1\n"
         "sq(f, l) = (f eq \"square-subcritical\") ? 0 : (f eq \"square-critical\") ? l : 3 + l\n"
         "ci(f) = (f eq \"circle-subcritical\") ? 0 : (f eq \"circle-critical\") ? 1 : 2\n"
         "set title \"cube averages: 5 labels\"\n"
         "set palette maxcolors 5\n"
         "set cbrange [-0.5:4.5]\n"
         "plot \"" + csv + "\" every ::1 using 1:2:(sq(strcol(3), $4)) with points pt 5 ps 0.3 palette notitle\n"
         "set title \"ball averages: 3 labels\"\n"
         "set palette maxcolors 3\n"
         "set cbrange [-0.5:2.5]\n"
         "plot \"" + csv + "\" every ::1 using 1:2:(ci(strcol(5))) with points pt 5 ps 0.3 palette notitle\n"
         "unset multiplot\n";
}

std::string run_regionmap(const RunConfig& c) {
  const auto g = parse_sampling(c.get("grid"));
  const auto map = region_map(g.hi, g.hi, g.count, tie_mode(c));
  std::string text = "alpha1,alpha2,square_family,square_log,circle_family,circle_log,verdict\n";
  for (const auto& cell : map.cells) {
    text += num(cell.alpha1) + "," + num(cell.alpha2) + "," + to_string(cell.square.family) + "," +
            std::to_string(cell.square.log_power) + "," + to_string(cell.circle.family) + "," +
            std::to_string(cell.circle.log_power) + "," + to_string(cell.verdict) + "\n";
  }
  text += "# square-labels " + std::to_string(map.square_labels) + "\n";
  text += "# circle-labels " + std::to_string(map.circle_labels) + "\n";
  text += "# square-components " + std::to_string(map.square_components) + "\n";
  text += "# circle-components " + std::to_string(map.circle_components) + "\n";
  return text + csv_trailer(c);
}

void apply_defaults(RunConfig& c, const std::string& sub) {
  const std::size_t d = config_dimension(c);
  std::string ones;
  for (std::size_t k = 0; k < d; ++k) ones += k ? ",1" : "1";
  c.set_default("body", "ball:1");
  c.set_default("direction", ones);
  c.set_default("tolerance", "1e-6");
  c.set_default("p", "10:1000");
  c.set_default("seed", "1");
  c.set_default("r-mode", "verbatim");
  if (sub == "fourier") c.set_default("ray", "0:50:201");
  if (sub == "verify") {
    c.set_default("sector", "2");
    c.set_default("per-axis", "5");
    c.set_default("require-sector", "true");
    c.set_default("theta", format_double(-static_cast<double>(d) - 2.0));
  }
  if (sub == "regionmap") c.set_default("grid", "0:4:201");
  if (sub == "simulate") c.set_default("t", ones);
}

void require(const RunConfig& c, std::initializer_list<const char*> keys) {
  std::vector<std::string> missing;
  for (const char* k : keys) {
    if (!c.has(k)) missing.push_back(std::string("missing required key '") + k + "'");
  }
  if (!missing.empty()) throw ConfigError(missing);
}

void dispatch(const std::string& sub, RunConfig& c, std::ostream& out) {
  apply_defaults(c, sub);
  if (const auto errors = validate_config(c); !errors.empty()) throw ConfigError(errors);
  if (sub == "fourier") {
    write_artifact(c, "out", run_fourier(c), out);
  } else if (sub == "rates") {
    require(c, {"measure"});
    const auto [csv, report] = run_rates(c);
    write_artifact(c, "out", csv, out);
    if (c.has("report")) write_artifact(c, "report", report, out);
  } else if (sub == "simulate") {
    require(c, {"action"});
    write_artifact(c, "out", run_simulate(c), out);
  } else if (sub == "verify") {
    require(c, {"theorem", "measure"});
    if (c.get("theorem") == "1") require(c, {"phi"});
    write_artifact(c, "out", run_verify(c), out);
  } else if (sub == "classify") {
    require(c, {"alpha"});
    write_artifact(c, "out", run_classify(c), out);
  } else if (sub == "regionmap") {
    if (c.has("gnuplot") && !c.has("out")) throw ConfigError("gnuplot needs out to name the CSV");
    write_artifact(c, "out", run_regionmap(c), out);
    if (c.has("gnuplot")) write_artifact(c, "gnuplot", gnuplot_script(c.get("out")), out);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot read config file " + path);
  std::ostringstream s;
  s << file.rdbuf();
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convergence rates of ergodic averages: spectral integrals, transforms and rate checks",
               "ergrates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  struct Bound {
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::string config_path;
    bool no_sector = false;
  };
  std::vector<Bound> bound(subcommands().size());
  for (std::size_t i = 0; i < subcommands().size(); ++i) {
    const auto& s = subcommands()[i];
    auto& b = bound[i];
    b.app = app.add_subcommand(s.name, s.help);
    b.app->add_option("--config", b.config_path, "key = value file; command-line options win");
    for (const auto& key : s.keys) b.app->add_option("--" + key, b.values[key], "see README");
    if (s.name == "verify") b.app->add_flag("--no-sector", b.no_sector, "allow grids outside the sector");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    for (std::size_t i = 0; i < bound.size(); ++i) {
      auto& b = bound[i];
      if (!b.app->parsed()) continue;
      RunConfig config;
      if (!b.config_path.empty()) config = parse_config(read_file(b.config_path));
      std::vector<std::string> errors;
      for (const auto& key : subcommands()[i].keys) {
        if (b.app->count("--" + key) == 0) continue;
        try {
          config.set(key, b.values[key]);
        } catch (const Error& e) {
          errors.push_back(std::string("--") + e.what());
        }
      }
      if (b.no_sector) config.set("require-sector", "false");
      if (!errors.empty()) throw ConfigError(errors);
      dispatch(subcommands()[i].name, config, out);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    for (const auto& m : e.messages()) err << "config error: " << m << "\n";
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    err << "numeric budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DimensionMismatch& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ergrates
