// Parameter space, configuration types and symmetry actions of the Rabi ring.
//
// Energies are measured in units of the cavity frequency omega. Everything
// here works in the projected (Delta/omega -> infinity) effective model.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rabiring {

/// Thrown when a value violates a documented precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RingParameters {
  int sites = 6;
  double omega = 1.0;
  double delta = 50.0;
  double hop = 0.05;
  double theta = 0.0;
  double g1 = 0.0;

  /// Bare coupling g = g1 * sqrt(delta * omega).
  double bare_coupling() const;
  double hop_ratio() const { return hop / omega; }

  /// Throws DomainError unless sites >= 3, omega > 0, delta > 0, g1 >= 0 and
  /// theta lies in [-pi, pi].
  void validate() const;

  RingParameters with_theta(double t) const;
  RingParameters with_g1(double g) const;
};

/// Inverse of RingParameters::bare_coupling.
double scaled_coupling(double bare_g, double delta, double omega);

/// Reference setting: Delta/omega = 50, J/omega = 0.05, N = 6.
RingParameters default_parameters();

/// Displacement amplitudes alpha_n = a[n] + i b[n], sites are zero-based here
/// (site 1 of the hexagon is index 0).
struct MeanFieldConfiguration {
  std::vector<double> a;
  std::vector<double> b;

  MeanFieldConfiguration() = default;
  MeanFieldConfiguration(std::vector<double> re, std::vector<double> im);
  static MeanFieldConfiguration zero(int sites);

  int sites() const { return static_cast<int>(a.size()); }
  bool finite() const;

  /// Cyclic site access, index taken modulo sites().
  double re(long n) const;
  double im(long n) const;

  /// (A, B) -> (-A, -B).
  MeanFieldConfiguration negated() const;
  /// Site relabelling n -> n + shift: result[n] = this[n - shift].
  MeanFieldConfiguration shifted(int shift) const;

  double max_abs() const;
  /// Componentwise max-norm distance; configurations must have equal size.
  double distance(const MeanFieldConfiguration& other) const;
};

enum class PhaseKind { NP, FSR, AFSR, CSR, Unknown, Failed };

/// +1/-1 is the sign of the ring current. Either marks a CSR selection whose
/// chirality is not fixed at the level of the normal-phase instability.
enum class Chirality { None, Positive, Negative, Either };

struct PhaseLabel {
  PhaseKind kind = PhaseKind::Unknown;
  /// m in k = 2 pi m / N, reported as |m| in [0, N/2]; only meaningful for CSR.
  std::optional<int> momentum_index;
  Chirality chirality = Chirality::None;
  /// Ring size the label refers to; N = 6 gets the CSR-I / CSR-II names.
  int sites = 6;

  static PhaseLabel normal(int sites);
  static PhaseLabel ferro(int sites);
  static PhaseLabel antiferro(int sites);
  static PhaseLabel chiral(int sites, int momentum_index, Chirality chirality);
  static PhaseLabel unknown(int sites);
  static PhaseLabel failed(int sites);

  /// "NP", "FSR", "AFSR", "CSR-I", "CSR-II", "CSR(m=3)", "UNKNOWN", "FAILED".
  std::string name() const;
  int chirality_sign() const;

  bool operator==(const PhaseLabel&) const = default;
};

std::string to_string(PhaseKind kind);
std::string to_string(Chirality chirality);

/// E0 = N [ -Delta/2 + (omega + 3J) g^2 / Delta^2 - g^2 / Delta ].
///
/// Evaluated exactly as printed for the projected Hamiltonian. The middle term
/// is not dimensionally homogeneous with its neighbours; it is kept as is and
/// never enters any minimisation (it is an additive constant).
struct ConstantEnergy {
  double e0 = 0.0;
  static ConstantEnergy of(const RingParameters& params);
};

/// Orbit of a configuration under the global sign flip and all cyclic site
/// shifts. Duplicates (componentwise within 1e-9) are removed; the order is
/// deterministic (shift-major, sign-minor, first occurrence kept).
std::vector<MeanFieldConfiguration> symmetry_orbit(const MeanFieldConfiguration& config,
                                                   const RingParameters& params);

}  // namespace rabiring
