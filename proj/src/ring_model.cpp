#include "rabiring/ring_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rabiring {

double RingParameters::bare_coupling() const { return g1 * std::sqrt(delta * omega); }

void RingParameters::validate() const {
  if (sites < 3) throw DomainError("ring needs at least 3 sites, got " + std::to_string(sites));
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(g1 >= 0.0)) throw DomainError("g1 must be non-negative");
  if (!std::isfinite(hop)) throw DomainError("hop must be finite");
  if (!(std::abs(theta) <= std::numbers::pi)) throw DomainError("theta must lie in [-pi, pi]");
}

RingParameters RingParameters::with_theta(double t) const {
  RingParameters p = *this;
  p.theta = t;
  return p;
}

RingParameters RingParameters::with_g1(double g) const {
  RingParameters p = *this;
  p.g1 = g;
  return p;
}

double scaled_coupling(double bare_g, double delta, double omega) {
  return bare_g / std::sqrt(delta * omega);
}

RingParameters default_parameters() { return RingParameters{}; }

MeanFieldConfiguration::MeanFieldConfiguration(std::vector<double> re, std::vector<double> im)
    : a(std::move(re)), b(std::move(im)) {
  if (a.size() != b.size()) throw DomainError("real and imaginary parts differ in length");
}

MeanFieldConfiguration MeanFieldConfiguration::zero(int sites) {
  return {std::vector<double>(sites, 0.0), std::vector<double>(sites, 0.0)};
}

bool MeanFieldConfiguration::finite() const {
  auto ok = [](double x) { return std::isfinite(x); };
  return std::all_of(a.begin(), a.end(), ok) && std::all_of(b.begin(), b.end(), ok);
}

namespace {
std::size_t wrap(long n, std::size_t size) {
  const long s = static_cast<long>(size);
  return static_cast<std::size_t>(((n % s) + s) % s);
}
}  // namespace

double MeanFieldConfiguration::re(long n) const { return a[wrap(n, a.size())]; }
double MeanFieldConfiguration::im(long n) const { return b[wrap(n, b.size())]; }

MeanFieldConfiguration MeanFieldConfiguration::negated() const {
  MeanFieldConfiguration out = *this;
  for (auto& x : out.a) x = -x;
  for (auto& x : out.b) x = -x;
  return out;
}

MeanFieldConfiguration MeanFieldConfiguration::shifted(int shift) const {
  MeanFieldConfiguration out = *this;
  const long n = sites();
  for (long i = 0; i < n; ++i) {
    out.a[i] = re(i - shift);
    out.b[i] = im(i - shift);
  }
  return out;
}

double MeanFieldConfiguration::max_abs() const {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  for (double x : b) m = std::max(m, std::abs(x));
  return m;
}

double MeanFieldConfiguration::distance(const MeanFieldConfiguration& other) const {
  if (other.sites() != sites()) throw DomainError("configuration sizes differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - other.a[i]));
    d = std::max(d, std::abs(b[i] - other.b[i]));
  }
  return d;
}

PhaseLabel PhaseLabel::normal(int sites) { return {PhaseKind::NP, std::nullopt, Chirality::None, sites}; }
PhaseLabel PhaseLabel::ferro(int sites) { return {PhaseKind::FSR, 0, Chirality::None, sites}; }
PhaseLabel PhaseLabel::antiferro(int sites) {
  return {PhaseKind::AFSR, sites / 2, Chirality::None, sites};
}
PhaseLabel PhaseLabel::chiral(int sites, int momentum_index, Chirality chirality) {
  return {PhaseKind::CSR, momentum_index, chirality, sites};
}
PhaseLabel PhaseLabel::unknown(int sites) {
  return {PhaseKind::Unknown, std::nullopt, Chirality::None, sites};
}
PhaseLabel PhaseLabel::failed(int sites) {
  return {PhaseKind::Failed, std::nullopt, Chirality::None, sites};
}

std::string PhaseLabel::name() const {
  if (kind != PhaseKind::CSR) return to_string(kind);
  const int m = momentum_index.value_or(-1);
  if (sites == 6 && m == 2) return "CSR-I";
  if (sites == 6 && m == 1) return "CSR-II";
  return "CSR(m=" + std::to_string(m) + ")";
}

int PhaseLabel::chirality_sign() const {
  switch (chirality) {
    case Chirality::Positive: return 1;
    case Chirality::Negative: return -1;
    default: return 0;
  }
}

std::string to_string(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::NP: return "NP";
    case PhaseKind::FSR: return "FSR";
    case PhaseKind::AFSR: return "AFSR";
    case PhaseKind::CSR: return "CSR";
    case PhaseKind::Unknown: return "UNKNOWN";
    case PhaseKind::Failed: return "FAILED";
  }
  return "UNKNOWN";
}

std::string to_string(Chirality chirality) {
  switch (chirality) {
    case Chirality::None: return "0";
    case Chirality::Positive: return "+";
    case Chirality::Negative: return "-";
    case Chirality::Either: return "+-";
  }
  return "0";
}

ConstantEnergy ConstantEnergy::of(const RingParameters& params) {
  const double g = params.bare_coupling();
  const double d = params.delta;
  const double per_site = -d / 2.0 + (params.omega + 3.0 * params.hop) * g * g / (d * d) - g * g / d;
  return {params.sites * per_site};
}

std::vector<MeanFieldConfiguration> symmetry_orbit(const MeanFieldConfiguration& config,
                                                   const RingParameters& params) {
  if (config.sites() != params.sites) throw DomainError("configuration length differs from N");
  constexpr double tol = 1e-9;
  std::vector<MeanFieldConfiguration> orbit;
  for (int s = 0; s < config.sites(); ++s) {
    const auto moved = config.shifted(s);
    for (const auto& candidate : {moved, moved.negated()}) {
      const bool seen = std::any_of(orbit.begin(), orbit.end(), [&](const auto& c) {
        return c.distance(candidate) <= tol;
      });
      if (!seen) orbit.push_back(candidate);
    }
  }
  return orbit;
}

}  // namespace rabiring
