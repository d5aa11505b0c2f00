#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rabiring/bogoliubov.hpp"
#include "rabiring/criticality.hpp"
#include "rabiring/meanfield.hpp"
#include "rabiring/normal_phase.hpp"
#include "rabiring/observables.hpp"
#include "rabiring/ring_model.hpp"

namespace rabiring::cli {

namespace {

using json = nlohmann::ordered_json;

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kCommands{"phase-diagram", "solve", "current-sweep", "scaling", "census"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value)) {
    throw ArgumentError("not a number: '" + std::string(s) + "'");
  }
  return value;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct RunConfig {
  std::string command;
  int sites = 6;
  double omega = 1.0;
  double delta = 50.0;
  double hop = 0.05;
  std::string theta = "0";
  double g1 = 0.7;
  std::string grid_theta = "-pi:pi:201";
  std::string grid_g1 = "0.3:0.8:101";
  std::uint64_t seed = 0;
  int jobs = 0;
  int starts = 64;
  std::string format;
  std::string out;
  std::string config;
  // scaling
  std::string side = "both";
  double delta_min = 1e-4;
  double delta_max = 1e-2;
  int points = 16;
  bool halve = false;
  // census
  int n_min = 3;
  int n_max = 12;

  RingParameters params() const {
    RingParameters p;
    p.sites = sites;
    p.omega = omega;
    p.delta = delta;
    p.hop = hop;
    p.theta = parse_angle(theta);
    p.g1 = g1;
    p.validate();
    return p;
  }

  SolverStrategy strategy() const {
    if (starts < 0) throw ArgumentError("--starts must be non-negative");
    SolverStrategy s;
    s.random_starts = starts;
    s.seed = seed;
    return s;
  }

  int workers() const {
    if (jobs < 0) throw ArgumentError("--jobs must be non-negative");
    if (jobs > 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
  }

  std::string format_or(const std::string& fallback) const { return format.empty() ? fallback : format; }
};

/// key=value lines turned into --key=value tokens; '#' starts a comment.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty()) {
      throw ArgumentError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    if (key == "config") throw ArgumentError(path + ": config files cannot include other config files");
    tokens.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  return tokens;
}

/// Splices the config file (if any) in right after the subcommand so that
/// command-line flags, which come later, take precedence. Keys that only
/// another subcommand understands are skipped, so one file can serve all.
std::vector<std::string> with_config(std::vector<std::string> args, const CLI::App& app) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  auto tokens = config_tokens(*path);
  auto cmd = std::find_first_of(args.begin(), args.end(), kCommands.begin(), kCommands.end());
  if (cmd == args.end()) return args;
  const CLI::App* chosen = app.get_subcommand(*cmd);
  std::erase_if(tokens, [&](const std::string& token) {
    const std::string flag = token.substr(0, token.find('='));
    if (chosen->get_option_no_throw(flag) || app.get_option_no_throw(flag)) return false;
    for (const auto* sub : app.get_subcommands({})) {
      if (sub->get_option_no_throw(flag)) return true;
    }
    return false;
  });
  args.insert(cmd + 1, tokens.begin(), tokens.end());
  return args;
}

json parameters_json(const RunConfig& rc, const RingParameters& p) {
  return json{{"N", p.sites},       {"omega", p.omega}, {"delta", p.delta},      {"hop", p.hop},
              {"theta", p.theta},   {"g1", p.g1},       {"seed", rc.seed},       {"starts", rc.starts}};
}

json config_json(const MeanFieldConfiguration& c) { return json{{"a", c.a}, {"b", c.b}}; }

json winding_json(const MeanFieldConfiguration& c) {
  try {
    return winding_number(spin_vectors(c));
  } catch (const UndefinedWindingError&) {
    return "undefined";
  } catch (const AmbiguousWindingError&) {
    return "undefined";
  }
}

json currents_json(const CurrentReport& r) {
  return json{{"I", r.ring}, {"I135", r.odd_subring}, {"I246", r.even_subring}};
}

void emit(const RunConfig& rc, const std::string& text, std::ostream& out) {
  if (rc.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(rc.out, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + rc.out + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + rc.out + "'");
}

void require_format(const std::string& format) {
  if (format != "csv" && format != "json") throw ArgumentError("--format must be csv or json");
}

std::string cmd_phase_diagram(const RunConfig& rc) {
  const auto p = rc.params();
  const auto thetas = parse_grid(rc.grid_theta);
  const auto g1s = parse_grid(rc.grid_g1);
  const auto format = rc.format_or("csv");
  require_format(format);
  const auto cells = phase_diagram(p, thetas, g1s, rc.strategy(), rc.workers());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (format == "json") {
    json rows = json::array();
    for (const auto& c : cells) {
      const bool ok = c.error.empty();
      json row{{"theta", c.theta},
               {"g1", c.g1},
               {"label", c.label.name()},
               {"A4", c.a4},
               {"B2", c.b2},
               {"I", ok ? c.currents.ring : nan},
               {"I135", ok ? c.currents.odd_subring : nan},
               {"I246", ok ? c.currents.even_subring : nan},
               {"degeneracy", c.degeneracy},
               {"energy", ok ? c.energy : nan}};
      if (!ok) row["error"] = c.error;
      rows.push_back(std::move(row));
    }
    return json{{"parameters", parameters_json(rc, p)}, {"cells", rows}}.dump(2) + "\n";
  }
  std::string text = "theta,g1,label,A4,B2,I,I135,I246\n";
  for (const auto& c : cells) {
    const bool ok = c.error.empty();
    text += num(c.theta) + "," + num(c.g1) + "," + c.label.name() + "," + num(c.a4) + "," + num(c.b2) + "," +
            num(ok ? c.currents.ring : nan) + "," + num(ok ? c.currents.odd_subring : nan) + "," +
            num(ok ? c.currents.even_subring : nan) + "\n";
  }
  return text;
}

std::string cmd_solve(const RunConfig& rc) {
  const auto p = rc.params();
  const auto format = rc.format_or("json");
  require_format(format);
  const auto result = minimize_energy(p, rc.strategy());
  const auto ground = result.ground_states();
  if (ground.empty()) {
    throw ConvergenceError("no converged minimum from " + std::to_string(result.starts) + " starts",
                           MeanFieldConfiguration::zero(p.sites));
  }

  if (format == "csv") {
    std::string text = "index,label,energy,I,I135,I246,winding,gap";
    for (int n = 1; n <= p.sites; ++n) text += ",a" + std::to_string(n);
    for (int n = 1; n <= p.sites; ++n) text += ",b" + std::to_string(n);
    text += "\n";
    for (std::size_t i = 0; i < ground.size(); ++i) {
      const auto& g = ground[i];
      const auto cur = currents(g.config);
      const auto w = winding_json(g.config);
      text += std::to_string(i) + "," + g.label.name() + "," + num(g.energy) + "," + num(cur.ring) + "," +
              num(cur.odd_subring) + "," + num(cur.even_subring) + "," +
              (w.is_string() ? w.get<std::string>() : std::to_string(w.get<int>())) + "," +
              num(spectrum_at(p, g.config).gap());
      for (double x : g.config.a) text += "," + num(x);
      for (double x : g.config.b) text += "," + num(x);
      text += "\n";
    }
    return text;
  }

  json normal = nullptr;
  try {
    const auto sel = classify_theta(p);
    normal = json{{"label", sel.label.name()},
                  {"momentum_index", sel.momentum_index},
                  {"g1c", sel.critical_coupling},
                  {"tied", sel.tied}};
  } catch (const SingularError&) {
  }
  json states = json::array();
  for (const auto& g : ground) {
    const auto spec = spectrum_at(p, g.config);
    states.push_back(json{{"label", g.label.name()},
                          {"chirality", to_string(g.label.chirality)},
                          {"energy", g.energy},
                          {"condensation_energy", g.condensation},
                          {"residual", g.residual_norm},
                          {"iterations", g.iterations},
                          {"start", g.seed},
                          {"config", config_json(g.config)},
                          {"currents", currents_json(currents(g.config))},
                          {"winding", winding_json(g.config)},
                          {"spectrum",
                           {{"gap", spec.gap()},
                            {"energies", spec.energies},
                            {"stable", spec.stable},
                            {"positive_definite", spec.positive_definite},
                            {"zero_modes", spec.zero_modes}}}});
  }
  const auto regime = magnetic_couplings(p);
  return json{{"parameters", parameters_json(rc, p)},
              {"normal_phase", normal},
              {"magnetic_regime", to_string(regime.regime)},
              {"starts", result.starts},
              {"local_minima_count", result.minima.size()},
              {"dropped", result.dropped},
              {"label", ground.front().label.name()},
              {"energy", ground.front().energy},
              {"degeneracy", ground.size()},
              {"ground_states", states}}
             .dump(2) +
         "\n";
}

std::string cmd_current_sweep(const RunConfig& rc, std::vector<double>& failed) {
  const auto p = rc.params();
  const auto thetas = parse_grid(rc.grid_theta);
  const auto format = rc.format_or("csv");
  require_format(format);
  const std::vector<double> g1s{p.g1};
  const auto cells = phase_diagram(p, thetas, g1s, rc.strategy(), rc.workers());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  json rows = json::array();
  std::string text = "theta,I,I135,I246\n";
  for (const auto& c : cells) {
    const bool ok = c.error.empty();
    if (!ok) failed.push_back(c.theta);
    const double i = ok ? c.currents.ring : nan;
    const double i135 = ok ? c.currents.odd_subring : nan;
    const double i246 = ok ? c.currents.even_subring : nan;
    text += num(c.theta) + "," + num(i) + "," + num(i135) + "," + num(i246) + "\n";
    rows.push_back(json{{"theta", c.theta}, {"label", c.label.name()}, {"I", i}, {"I135", i135}, {"I246", i246}});
  }
  if (format == "json") return json{{"parameters", parameters_json(rc, p)}, {"rows", rows}}.dump(2) + "\n";
  return text;
}

json fit_json(const ScalingFit& f) {
  return json{{"gamma", f.gamma},         {"log_prefactor", f.log_prefactor}, {"delta_min", f.delta_min},
              {"delta_max", f.delta_max}, {"r_squared", f.r_squared},         {"points", f.points}};
}

std::string cmd_scaling(const RunConfig& rc) {
  const auto p = rc.params();
  const auto format = rc.format_or("json");
  require_format(format);
  if (rc.points < 8) throw ArgumentError("--points must be at least 8 for an exponent fit");
  std::vector<Side> sides;
  if (rc.side == "below" || rc.side == "both") sides.push_back(Side::Below);
  if (rc.side == "above" || rc.side == "both") sides.push_back(Side::Above);
  if (sides.empty()) throw ArgumentError("--side must be below, above or both");
  const ReducedGrid grid{rc.delta_min, rc.delta_max, rc.points};
  grid.values();

  json fits = json::array();
  std::string text = "side,gamma,log_prefactor,delta_min,delta_max,r_squared,points";
  if (rc.halve) text += ",halved_gamma,gamma_shift";
  text += "\n";
  double g1c = 0.0;
  std::vector<double> gammas;
  for (Side side : sides) {
    const auto curve = gap_curve(p, p.theta, side, grid, rc.strategy());
    g1c = curve.g1c;
    const auto fit = fit_exponent(curve);
    gammas.push_back(fit.gamma);
    json entry{{"side", to_string(side)}};
    entry.update(fit_json(fit));
    text += to_string(side) + "," + num(fit.gamma) + "," + num(fit.log_prefactor) + "," + num(fit.delta_min) + "," +
            num(fit.delta_max) + "," + num(fit.r_squared) + "," + std::to_string(fit.points);
    if (rc.halve) {
      const auto half = fit_exponent(gap_curve(p, p.theta, side, {rc.delta_min, rc.delta_max / 2, rc.points},
                                               rc.strategy()));
      entry["halved"] = fit_json(half);
      entry["gamma_shift"] = half.gamma - fit.gamma;
      text += "," + num(half.gamma) + "," + num(half.gamma - fit.gamma);
    }
    text += "\n";
    json points = json::array();
    for (const auto& pt : curve.points) {
      points.push_back(json{{"delta", pt.reduced}, {"g1", pt.g1}, {"gap", pt.gap}, {"degeneracy", pt.degeneracy}});
    }
    entry["curve"] = points;
    fits.push_back(std::move(entry));
  }
  if (format == "csv") return text;
  json doc{{"parameters", parameters_json(rc, p)}, {"theta", p.theta}, {"g1c", g1c}, {"fits", fits}};
  if (gammas.size() == 2) doc["asymmetry"] = gammas[1] - gammas[0];
  return doc.dump(2) + "\n";
}

std::string cmd_census(const RunConfig& rc) {
  const auto format = rc.format_or("csv");
  require_format(format);
  if (rc.n_min < 3 || rc.n_max < rc.n_min) throw ArgumentError("need 3 <= --n-min <= --n-max");
  if (!(rc.omega > 0.0)) throw ArgumentError("--omega must be positive");
  json rows = json::array();
  std::string text = "N,chiral,ferro,antiferro\n";
  for (int n = rc.n_min; n <= rc.n_max; ++n) {
    const auto c = phase_census(n, rc.hop / rc.omega);
    text += std::to_string(n) + "," + std::to_string(c.chiral) + "," + std::to_string(c.ferro) + "," +
            std::to_string(c.antiferro) + "\n";
    rows.push_back(json{{"N", n}, {"chiral", c.chiral}, {"ferro", c.ferro}, {"antiferro", c.antiferro}});
  }
  if (format == "json") return json{{"hop_ratio", rc.hop / rc.omega}, {"rows", rows}}.dump(2) + "\n";
  return text;
}

int fail(std::ostream& err, int code, const std::string& kind, const std::string& message, json extra = {}) {
  json e{{"error", kind}, {"message", message}, {"exit_code", code}};
  if (extra.is_object()) e.update(extra);
  err << e.dump() << "\n";
  return code;
}

void add_common(CLI::App& app, RunConfig& rc) {
  app.add_option("--N", rc.sites, "Number of cavities");
  app.add_option("--omega", rc.omega, "Cavity frequency");
  app.add_option("--delta", rc.delta, "Qubit splitting");
  app.add_option("--hop", rc.hop, "Hopping strength J");
  app.add_option("--theta", rc.theta, "Flux per bond, e.g. 0.49pi");
  app.add_option("--g1", rc.g1, "Scaled coupling g/sqrt(delta omega)");
  app.add_option("--grid-theta", rc.grid_theta, "Theta grid lo:hi:count");
  app.add_option("--grid-g1", rc.grid_g1, "g1 grid lo:hi:count");
  app.add_option("--seed", rc.seed, "Random seed of the multi-start solver");
  app.add_option("--jobs", rc.jobs, "Worker threads (0 = all cores)");
  app.add_option("--starts", rc.starts, "Random starts per solve");
  app.add_option("--format", rc.format, "csv or json");
  app.add_option("--out", rc.out, "Output file (default stdout)");
  app.add_option("--config", rc.config, "key=value file; flags override it");
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string s = trim(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_number(s);
  std::string coef = trim(s.substr(0, at));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  double value = std::numbers::pi;
  if (coef == "-") {
    value = -value;
  } else if (!coef.empty() && coef != "+") {
    value *= parse_number(coef);
  }
  const std::string rest = trim(s.substr(at + 2));
  if (!rest.empty()) {
    if (rest.front() != '/') throw ArgumentError("bad angle '" + text + "'");
    const double den = parse_number(trim(rest.substr(1)));
    if (den == 0.0) throw ArgumentError("bad angle '" + text + "'");
    value /= den;
  }
  return value;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw ArgumentError("grid must look like lo:hi:count, got '" + text + "'");
  const double lo = parse_angle(parts[0]);
  const double hi = parse_angle(parts[1]);
  const double count = parse_number(trim(parts[2]));
  if (count < 1 || count != std::floor(count) || count > 1e7) throw ArgumentError("bad grid count in '" + text + "'");
  const int n = static_cast<int>(count);
  if (n == 1) {
    if (lo != hi) throw ArgumentError("a one-point grid needs lo == hi");
    return {lo};
  }
  if (!(hi > lo)) throw ArgumentError("grid needs lo < hi, got '" + text + "'");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Mean-field phases, currents and critical gaps of the quantum Rabi ring", "rabiring"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  add_common(app, rc);

  auto* pd = app.add_subcommand("phase-diagram", "Rasterise the (theta, g1) plane");
  auto* solve = app.add_subcommand("solve", "Single-point solve with observables and spectrum");
  auto* sweep = app.add_subcommand("current-sweep", "Ring and subring currents along a theta sweep");
  auto* scaling = app.add_subcommand("scaling", "Gap exponent fits on either side of g1c");
  auto* census = app.add_subcommand("census", "Number of distinct superradiant phases for a range of N");
  for (auto* sub : {pd, solve, sweep, scaling, census}) sub->fallthrough();
  scaling->add_option("--side", rc.side, "below, above or both")->check(CLI::IsMember({"below", "above", "both"}));
  scaling->add_option("--delta-min", rc.delta_min, "Smallest reduced coupling |g1/g1c - 1|");
  scaling->add_option("--delta-max", rc.delta_max, "Largest reduced coupling");
  scaling->add_option("--points", rc.points, "Log-spaced points per side");
  scaling->add_flag("--halve", rc.halve, "Refit with delta-max halved");
  census->add_option("--n-min", rc.n_min, "Smallest ring");
  census->add_option("--n-max", rc.n_max, "Largest ring");

  try {
    auto args = with_config(raw_args, app);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        std::ostringstream ignored;
        app.exit(e, out, ignored);
        return Success;
      }
      return fail(err, BadArguments, "bad_arguments", e.what());
    }
    rc.command = app.get_subcommands().front()->get_name();

    std::vector<double> failed;
    std::string text;
    if (rc.command == "phase-diagram") text = cmd_phase_diagram(rc);
    if (rc.command == "solve") text = cmd_solve(rc);
    if (rc.command == "current-sweep") text = cmd_current_sweep(rc, failed);
    if (rc.command == "scaling") text = cmd_scaling(rc);
    if (rc.command == "census") text = cmd_census(rc);
    emit(rc, text, out);
    if (!failed.empty()) {
      return fail(err, SolverFailure, "solver_failure", "mean-field solve failed at some theta",
                  json{{"theta", failed}});
    }
    return Success;
  } catch (const ArgumentError& e) {
    return fail(err, BadArguments, "bad_arguments", e.what());
  } catch (const DomainError& e) {
    return fail(err, BadArguments, "bad_arguments", e.what());
  } catch (const IoError& e) {
    return fail(err, IoFailure, "io_failure", e.what());
  } catch (const ConvergenceError& e) {
    return fail(err, SolverFailure, "solver_failure", e.what(), json{{"last_iterate", config_json(e.last_iterate)}});
  } catch (const std::exception& e) {
    return fail(err, SolverFailure, "solver_failure", e.what());
  }
}

}  // namespace rabiring::cli
