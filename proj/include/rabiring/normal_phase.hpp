// Closed-form normal-phase diagnostics: dispersion, excitation energies,
// momentum-resolved critical couplings and the resulting phase selection.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rabiring/ring_model.hpp"

namespace rabiring {

/// A formula hit a vanishing denominator.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// k_m = 2 pi m / N for m = 0 .. N-1, reduced to (-pi, pi].
struct MomentumGrid {
  std::vector<double> ks;
  static MomentumGrid of(int sites);
};

double momentum(int m, int sites);

/// omega_k = omega (1 - 2 g1^2) + 2 J cos(theta - k).
double dispersion(const RingParameters& params, double k);

/// Normal-phase excitation energy of mode k; nullopt when the radicand is
/// negative, i.e. the vacuum is not a valid ground state.
std::optional<double> np_excitation(const RingParameters& params, double k);

/// Coupling g1 at which the k-mode softens. params.g1 is ignored.
double critical_coupling(const RingParameters& params, double k);

struct MomentumSelection {
  /// |m| of the winning momentum, in [0, N/2].
  int momentum_index = 0;
  double momentum = 0.0;
  double critical_coupling = 0.0;
  PhaseLabel label;
  /// Other |m| whose critical coupling ties the winner within 1e-12.
  std::vector<int> tied;

  bool degenerate() const { return !tied.empty(); }
};

/// Which mode softens first as g1 grows at the flux params.theta.
MomentumSelection classify_theta(const RingParameters& params);

/// Smallest critical coupling over the momentum grid.
double lowest_critical_coupling(const RingParameters& params);

/// Phase boundaries in theta (both signs, sorted). For N = 6 this is the
/// closed form {+-pi/2, +-acos[-+(omega - sqrt(omega^2 + 8 J^2)) / 4J]};
/// otherwise it falls back to momentum_switch_boundaries.
std::vector<double> phase_boundaries(int sites, double hop_ratio);

/// Theta values where the argmin of the critical coupling switches momentum,
/// located by a 2001-point scan of [0, pi) refined by bisection to 1e-12 rad,
/// mirrored to negative theta.
std::vector<double> momentum_switch_boundaries(int sites, double hop_ratio);

struct PhaseCensus {
  int chiral = 0;
  int ferro = 0;
  int antiferro = 0;
  bool operator==(const PhaseCensus&) const = default;
};

/// Distinct phase kinds met while sweeping theta over [0, pi).
PhaseCensus phase_census(int sites, double hop_ratio = 0.05);

}  // namespace rabiring
