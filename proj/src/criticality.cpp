#include "rabiring/criticality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "rabiring/bogoliubov.hpp"
#include "rabiring/normal_phase.hpp"

namespace rabiring {

std::string to_string(Side side) { return side == Side::Below ? "below" : "above"; }

std::vector<double> ReducedGrid::values() const {
  if (points < 2 || !(delta_min > 0.0) || !(delta_max > delta_min)) throw DomainError("invalid reduced-coupling grid");
  std::vector<double> out;
  const double lo = std::log(delta_min);
  const double hi = std::log(delta_max);
  for (int i = 0; i < points; ++i) out.push_back(std::exp(lo + (hi - lo) * i / (points - 1)));
  return out;
}

namespace {

const SolverReport& closest(const std::vector<SolverReport>& states, const MeanFieldConfiguration& target) {
  const SolverReport* best = &states.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& s : states) {
    const double d = s.config.distance(target);
    if (d < best_d) {
      best_d = d;
      best = &s;
    }
  }
  return *best;
}

MeanFieldConfiguration scaled(const MeanFieldConfiguration& c, double factor) {
  MeanFieldConfiguration out = c;
  for (auto& x : out.a) x *= factor;
  for (auto& x : out.b) x *= factor;
  return out;
}

}  // namespace

GapCurve gap_curve(const RingParameters& params, double theta, Side side, const ReducedGrid& grid,
                   const SolverStrategy& strategy) {
  const RingParameters base = params.with_theta(theta);
  base.validate();
  for (double boundary : momentum_switch_boundaries(base.sites, base.hop_ratio())) {
    if (std::abs(theta - boundary) <= 1e-3 * std::numbers::pi) {
      throw DomainError("theta is within 1e-3 pi of a first-order boundary");
    }
  }
  GapCurve curve;
  curve.side = side;
  curve.theta = theta;
  curve.g1c = lowest_critical_coupling(base);
  auto deltas = grid.values();

  if (side == Side::Below) {
    const auto vacuum = MeanFieldConfiguration::zero(base.sites);
    std::sort(deltas.rbegin(), deltas.rend());
    for (double d : deltas) {
      const auto p = base.with_g1(curve.g1c * (1.0 - d));
      curve.points.push_back({d, p.g1, spectrum_at(p, vacuum).gap(), 1});
    }
    return curve;
  }

  std::sort(deltas.rbegin(), deltas.rend());
  std::optional<MeanFieldConfiguration> previous;
  double previous_delta = 0.0;
  for (double d : deltas) {
    const auto p = base.with_g1(curve.g1c * (1.0 + d));
    SolverStrategy s = strategy;
    std::optional<MeanFieldConfiguration> seed;
    if (previous) {
      seed = scaled(*previous, std::sqrt(d / previous_delta));
      s.seeds.push_back(*seed);
    }
    const auto result = minimize_energy(p, s);
    const auto ground = result.ground_states();
    if (ground.empty() || ground.front().label.kind == PhaseKind::NP) {
      std::ostringstream msg;
      msg << "no superradiant minimum at g1 = " << p.g1 << " (theta = " << theta << ")";
      throw ConvergenceError(msg.str(), previous.value_or(MeanFieldConfiguration::zero(base.sites)));
    }
    const auto& chosen = seed ? closest(ground, *seed) : ground.front();
    curve.points.push_back({d, p.g1, spectrum_at(p, chosen.config).gap(), static_cast<int>(ground.size())});
    previous = chosen.config;
    previous_delta = d;
  }
  std::reverse(curve.points.begin(), curve.points.end());
  return curve;
}

ScalingFit fit_exponent(const GapCurve& curve) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : curve.points) {
    if (p.reduced > 0.0 && p.gap > 0.0 && std::isfinite(p.gap)) {
      xs.push_back(std::log(p.reduced));
      ys.push_back(std::log(p.gap));
    }
  }
  if (xs.size() < 8) {
    throw InsufficientPointsError("exponent fit needs at least 8 valid points, got " + std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  ScalingFit fit;
  fit.gamma = sxy / sxx;
  fit.log_prefactor = my - fit.gamma * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.log_prefactor + fit.gamma * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.delta_min = std::exp(*std::min_element(xs.begin(), xs.end()));
  fit.delta_max = std::exp(*std::max_element(xs.begin(), xs.end()));
  fit.points = static_cast<int>(xs.size());
  return fit;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void fill_column(const RingParameters& params, double theta, std::span<const double> g1s,
                 const SolverStrategy& strategy, std::size_t column, std::span<PhaseCell> out) {
  std::optional<MeanFieldConfiguration> previous;
  for (std::size_t j = 0; j < g1s.size(); ++j) {
    PhaseCell& cell = out[j];
    cell.theta = theta;
    cell.g1 = g1s[j];
    cell.label = PhaseLabel::failed(params.sites);
    cell.a4 = std::numeric_limits<double>::quiet_NaN();
    cell.b2 = std::numeric_limits<double>::quiet_NaN();
    try {
      const auto p = params.with_theta(theta).with_g1(g1s[j]);
      SolverStrategy s = strategy;
      s.seed = splitmix(strategy.seed ^ splitmix(column * g1s.size() + j));
      if (previous) s.seeds.push_back(*previous);
      const auto result = minimize_energy(p, s);
      const auto ground = result.ground_states();
      if (ground.empty()) {
        cell.error = "no converged minimum";
        previous.reset();
        continue;
      }
      const auto& chosen = previous ? closest(ground, *previous) : ground.front();
      cell.label = chosen.label;
      cell.energy = chosen.energy;
      cell.degeneracy = static_cast<int>(ground.size());
      cell.config = chosen.config;
      if (params.sites >= 4) cell.a4 = chosen.config.a[3];
      cell.b2 = chosen.config.b[1];
      cell.currents = currents(chosen.config);
      previous = chosen.config;
    } catch (const std::exception& e) {
      cell.error = e.what();
      previous.reset();
    }
  }
}

}  // namespace

std::vector<PhaseCell> phase_diagram(const RingParameters& params, std::span<const double> thetas,
                                     std::span<const double> g1s, const SolverStrategy& strategy, int jobs) {
  if (thetas.empty() || g1s.empty()) throw DomainError("phase diagram grids must be nonempty");
  params.validate();
  std::vector<PhaseCell> cells(thetas.size() * g1s.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < thetas.size(); i = next++) {
      fill_column(params, thetas[i], g1s, strategy, i, std::span<PhaseCell>(cells).subspan(i * g1s.size(), g1s.size()));
    }
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(thetas.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return cells;
}

}  // namespace rabiring
