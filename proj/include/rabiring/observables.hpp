// Diagnostics of a mean-field configuration: photon currents, the in-plane
// spin picture and its winding, and the magnetic-analogy coupling regime.
//
// Currents are coherent-state expectations of
//   I = i sum_n (a_n^+ a_{n+1} - h.c.)
// and of the next-nearest-neighbour loops on the odd and even triangles.
// Only signs are reported; which sign is drawn as "clockwise" is a plotting
// convention.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rabiring/ring_model.hpp"

namespace rabiring {

struct CurrentReport {
  double ring = 0.0;
  /// Loop 1 -> 3 -> 5 -> 1 (zero-based sites 0, 2, 4).
  double odd_subring = 0.0;
  /// Loop 2 -> 4 -> 6 -> 2.
  double even_subring = 0.0;
};

/// I = -2 sum_n (A_n B_{n+1} - B_n A_{n+1}).
double ring_current(const MeanFieldConfiguration& config);

/// (I135, I246); throws DomainError unless N = 6.
std::pair<double, double> subring_currents(const MeanFieldConfiguration& config);

/// Ring current plus, for N = 6, both subring currents (zero otherwise).
CurrentReport currents(const MeanFieldConfiguration& config);

struct SpinVector {
  double x = 0.0;
  double y = 0.0;
};

struct SpinField {
  std::vector<SpinVector> vectors;
};

/// S_n = (A_n, -B_n).
SpinField spin_vectors(const MeanFieldConfiguration& config);

/// Raised when some spin has (near) zero length.
class UndefinedWindingError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when neighbouring spins are antiparallel, so the angle step is +-pi.
class AmbiguousWindingError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Discrete winding of the in-plane spins around the ring:
/// w = (1/2pi) sum_n wrap(phi_{n+1} - phi_n), wrap into (-pi, pi].
int winding_number(const SpinField& field);

enum class CouplingRegime { XYFerro, XYAntiferro, DMDominated, Decoupled };

std::string to_string(CouplingRegime regime);

struct MagneticCouplings {
  /// sign(J cos theta); negative means ferromagnetic XY exchange.
  int xy_sign = 0;
  /// J sin theta, the Dzyaloshinskii-Moriya scale.
  double dm = 0.0;
  CouplingRegime regime = CouplingRegime::Decoupled;
};

/// DM dominates when |J sin theta| > |J cos theta|.
MagneticCouplings magnetic_couplings(const RingParameters& params);

}  // namespace rabiring
