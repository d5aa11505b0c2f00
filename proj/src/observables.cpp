#include "rabiring/observables.hpp"

#include <cmath>
#include <numbers>
#include <tuple>

namespace rabiring {

namespace {

// -2 Im(alpha_i^* alpha_j) for the directed link i -> j
double link_current(const MeanFieldConfiguration& c, long i, long j) {
  return -2.0 * (c.re(i) * c.im(j) - c.im(i) * c.re(j));
}

double loop_current(const MeanFieldConfiguration& c, std::initializer_list<long> sites) {
  std::vector<long> s(sites);
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) total += link_current(c, s[i], s[(i + 1) % s.size()]);
  return total;
}

}  // namespace

double ring_current(const MeanFieldConfiguration& config) {
  double total = 0.0;
  for (long n = 0; n < config.sites(); ++n) total += link_current(config, n, n + 1);
  return total;
}

std::pair<double, double> subring_currents(const MeanFieldConfiguration& config) {
  if (config.sites() != 6) throw DomainError("subring currents are defined for N = 6 only");
  return {loop_current(config, {0, 2, 4}), loop_current(config, {1, 3, 5})};
}

CurrentReport currents(const MeanFieldConfiguration& config) {
  CurrentReport r;
  r.ring = ring_current(config);
  if (config.sites() == 6) std::tie(r.odd_subring, r.even_subring) = subring_currents(config);
  return r;
}

SpinField spin_vectors(const MeanFieldConfiguration& config) {
  SpinField field;
  field.vectors.reserve(config.a.size());
  for (std::size_t n = 0; n < config.a.size(); ++n) field.vectors.push_back({config.a[n], -config.b[n]});
  return field;
}

int winding_number(const SpinField& field) {
  constexpr double pi = std::numbers::pi;
  const auto& v = field.vectors;
  if (v.empty()) throw UndefinedWindingError("empty spin field");
  std::vector<double> phi;
  for (const auto& s : v) {
    if (std::hypot(s.x, s.y) <= 1e-9) throw UndefinedWindingError("spin vector of zero length");
    phi.push_back(std::atan2(s.y, s.x));
  }
  double total = 0.0;
  for (std::size_t n = 0; n < phi.size(); ++n) {
    double step = std::remainder(phi[(n + 1) % phi.size()] - phi[n], 2.0 * pi);
    if (std::abs(std::abs(step) - pi) <= 1e-9) throw AmbiguousWindingError("antiparallel neighbouring spins");
    total += step;
  }
  const double turns = total / (2.0 * pi);
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) > 1e-6) throw UndefinedWindingError("winding sum is not an integer");
  return static_cast<int>(nearest);
}

std::string to_string(CouplingRegime regime) {
  switch (regime) {
    case CouplingRegime::XYFerro: return "XY-ferro";
    case CouplingRegime::XYAntiferro: return "XY-antiferro";
    case CouplingRegime::DMDominated: return "DM-dominated";
    case CouplingRegime::Decoupled: return "decoupled";
  }
  return "decoupled";
}

MagneticCouplings magnetic_couplings(const RingParameters& params) {
  MagneticCouplings out;
  const double xy = params.hop * std::cos(params.theta);
  out.dm = params.hop * std::sin(params.theta);
  // sin(pi) is not exactly zero in floating point
  if (std::abs(out.dm) < 1e-15 * std::abs(params.hop)) out.dm = 0.0;
  out.xy_sign = (xy > 0.0) - (xy < 0.0);
  if (params.hop == 0.0) {
    out.regime = CouplingRegime::Decoupled;
  } else if (std::abs(out.dm) > std::abs(xy)) {
    out.regime = CouplingRegime::DMDominated;
  } else {
    out.regime = xy < 0.0 ? CouplingRegime::XYFerro : CouplingRegime::XYAntiferro;
  }
  return out;
}

}  // namespace rabiring
