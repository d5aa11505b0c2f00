#include "rabiring/normal_phase.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace rabiring {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int scan_points = 2001;
constexpr double tie_tolerance = 1e-12;
constexpr double bisection_width = 1e-12;

RingParameters ring(int sites, double hop_ratio) {
  RingParameters p;
  p.sites = sites;
  p.omega = 1.0;
  p.hop = hop_ratio;
  return p;
}

}  // namespace

double momentum(int m, int sites) {
  double k = 2.0 * pi * m / sites;
  if (k > pi) k -= 2.0 * pi;
  return k;
}

MomentumGrid MomentumGrid::of(int sites) {
  if (sites < 3) throw DomainError("momentum grid needs N >= 3");
  MomentumGrid grid;
  for (int m = 0; m < sites; ++m) grid.ks.push_back(momentum(m, sites));
  return grid;
}

double dispersion(const RingParameters& params, double k) {
  return params.omega * (1.0 - 2.0 * params.g1 * params.g1) + 2.0 * params.hop * std::cos(params.theta - k);
}

std::optional<double> np_excitation(const RingParameters& params, double k) {
  const double wk = dispersion(params, k);
  if (params.g1 == 0.0) return wk;
  const double w = params.omega;
  const double j = params.hop;
  // omega_k + omega_{-k} = base - 4 omega g1^2, so the radicand
  // (omega_k + omega_{-k})^2 - 16 omega^2 g1^4 factors into base * (base - 8 omega g1^2)
  const double base = 2.0 * w + 2.0 * j * (std::cos(params.theta - k) + std::cos(params.theta + k));
  const double radicand = base * std::fma(-8.0 * w * params.g1, params.g1, base);
  double root = 0.0;
  if (radicand >= 0.0) {
    root = std::sqrt(radicand);
  } else if (radicand < -1e-14 * std::max(base * base, w * w)) {
    return std::nullopt;
  }
  return 0.5 * (root + 4.0 * j * std::sin(params.theta) * std::sin(k));
}

double critical_coupling(const RingParameters& params, double k) {
  const double j = params.hop_ratio();
  const double c = std::cos(params.theta);
  const double denominator = 1.0 + 2.0 * j * c * std::cos(k);
  if (std::abs(denominator) < 1e-14) {
    std::ostringstream msg;
    msg << "critical coupling denominator vanishes (J/omega=" << j << ", theta=" << params.theta
        << ", k=" << k << ")";
    throw SingularError(msg.str());
  }
  const double jp = j * std::cos(params.theta + k);
  const double jm = j * std::cos(params.theta - k);
  const double numerator = 1.0 + 4.0 * j * c * std::cos(k) + 4.0 * jp * jm;
  return 0.5 * std::sqrt(numerator / denominator);
}

MomentumSelection classify_theta(const RingParameters& params) {
  if (!(params.hop > 0.0)) throw DomainError("classify_theta requires J > 0");
  const int n = params.sites;
  MomentumSelection sel;
  sel.critical_coupling = std::numeric_limits<double>::infinity();
  std::vector<double> couplings;
  for (int m = 0; m <= n / 2; ++m) {
    couplings.push_back(critical_coupling(params, momentum(m, n)));
    if (couplings.back() < sel.critical_coupling) {
      sel.critical_coupling = couplings.back();
      sel.momentum_index = m;
    }
  }
  for (int m = 0; m <= n / 2; ++m) {
    if (m != sel.momentum_index && couplings[m] - sel.critical_coupling <= tie_tolerance) sel.tied.push_back(m);
  }
  sel.momentum = std::abs(momentum(sel.momentum_index, n));
  if (sel.momentum_index == 0) {
    sel.label = PhaseLabel::ferro(n);
  } else if (2 * sel.momentum_index == n) {
    sel.label = PhaseLabel::antiferro(n);
  } else {
    sel.label = PhaseLabel::chiral(n, sel.momentum_index, Chirality::Either);
  }
  return sel;
}

double lowest_critical_coupling(const RingParameters& params) {
  double best = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= params.sites / 2; ++m) best = std::min(best, critical_coupling(params, momentum(m, params.sites)));
  return best;
}

namespace {

std::vector<double> mirrored(std::vector<double> positive) {
  std::vector<double> out;
  for (double t : positive) {
    out.push_back(t);
    out.push_back(-t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<double> phase_boundaries(int sites, double hop_ratio) {
  if (sites < 3) throw DomainError("phase_boundaries needs N >= 3");
  if (!(hop_ratio > 0.0)) throw DomainError("phase_boundaries needs J/omega > 0");
  if (sites != 6) return momentum_switch_boundaries(sites, hop_ratio);
  const double j = hop_ratio;
  const double root = (1.0 - std::sqrt(1.0 + 8.0 * j * j)) / (4.0 * j);
  return mirrored({std::acos(-root), pi / 2.0, std::acos(root)});
}

std::vector<double> momentum_switch_boundaries(int sites, double hop_ratio) {
  if (sites < 3) throw DomainError("momentum_switch_boundaries needs N >= 3");
  if (!(hop_ratio > 0.0)) throw DomainError("momentum_switch_boundaries needs J/omega > 0");
  const RingParameters base = ring(sites, hop_ratio);
  auto winner = [&](double t) { return classify_theta(base.with_theta(t)).momentum_index; };

  std::vector<double> found;
  std::function<void(double, int, double, int)> refine = [&](double lo, int mlo, double hi, int mhi) {
    if (mlo == mhi) return;
    if (hi - lo < bisection_width) {
      found.push_back(0.5 * (lo + hi));
      return;
    }
    const double mid = 0.5 * (lo + hi);
    const int mmid = winner(mid);
    refine(lo, mlo, mid, mmid);
    refine(mid, mmid, hi, mhi);
  };

  double prev_t = 0.0;
  int prev_m = winner(0.0);
  for (int i = 1; i < scan_points; ++i) {
    const double t = pi * i / scan_points;
    const int m = winner(t);
    refine(prev_t, prev_m, t, m);
    prev_t = t;
    prev_m = m;
  }
  return mirrored(found);
}

PhaseCensus phase_census(int sites, double hop_ratio) {
  if (sites < 3) throw DomainError("phase_census needs N >= 3");
  const RingParameters base = ring(sites, hop_ratio);
  std::set<int> chiral;
  PhaseCensus census;
  for (int i = 0; i < scan_points; ++i) {
    const auto sel = classify_theta(base.with_theta(pi * i / scan_points));
    if (sel.degenerate()) continue;
    switch (sel.label.kind) {
      case PhaseKind::FSR: census.ferro = 1; break;
      case PhaseKind::AFSR: census.antiferro = 1; break;
      case PhaseKind::CSR: chiral.insert(sel.momentum_index); break;
      default: break;
    }
  }
  census.chiral = static_cast<int>(chiral.size());
  return census;
}

}  // namespace rabiring
