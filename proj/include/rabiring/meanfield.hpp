// Mean-field ground state of the displaced Rabi ring.
//
// The variational energy E_g(A, B) of the coherent displacements
// alpha_n = A_n + i B_n is minimised over all 2N real amplitudes. Besides the
// generic multi-start minimiser this module carries the analytic branches of
// the hexagon (FSR, AFSR and the two chiral patterns) which the minimiser
// uses as starting points and the tests use as oracles.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rabiring/ring_model.hpp"

namespace rabiring {

/// Delta_n = sqrt(Delta^2 + 16 g^2 A_n^2), lambda_n = g Delta / Delta_n and
/// chi_n = lambda_n^2 / Delta_n, the curvature of the projected qubit energy.
struct EffectiveSiteQuantities {
  std::vector<double> delta_n;
  std::vector<double> lambda_n;
  std::vector<double> chi_n;

  static EffectiveSiteQuantities of(const RingParameters& params, std::span<const double> a);
};

double ground_energy(const RingParameters& params, const MeanFieldConfiguration& config);

/// ground_energy + N Delta / 2, i.e. the energy gain over the vacuum, evaluated
/// without cancellation against the large -Delta_n / 2 terms.
double condensation_energy(const RingParameters& params, const MeanFieldConfiguration& config);

/// Half-gradient of ground_energy: a_block[n] = dE/dA_n / 2, b_block[n] = dE/dB_n / 2.
struct StationarityResiduals {
  std::vector<double> a_block;
  std::vector<double> b_block;

  double max_abs() const;
  /// [a_block; b_block]
  Eigen::VectorXd stacked() const;
};

StationarityResiduals stationarity_residuals(const RingParameters& params, const MeanFieldConfiguration& config);

/// Jacobian of the stacked residuals with respect to (A, B); half the Hessian
/// of ground_energy, hence symmetric.
Eigen::MatrixXd residual_jacobian(const RingParameters& params, const MeanFieldConfiguration& config);

/// True when the Hessian is positive semidefinite up to 1e-13 of its spectral scale.
/// The soft mode near threshold has curvature ~1e-11, so a looser cut admits saddles.
bool is_local_minimum(const RingParameters& params, const MeanFieldConfiguration& config);

/// Imaginary parts that solve the B equations for given real parts (N = 6 only).
std::vector<double> b_from_a(const RingParameters& params, std::span<const double> a);

/// The A equations after eliminating B through b_from_a (N = 6 only).
std::vector<double> reduced_residual(const RingParameters& params, std::span<const double> a);

/// Uniform real branch, positive sign. nullopt below its critical coupling.
std::optional<MeanFieldConfiguration> closed_form_fsr(const RingParameters& params);

/// Staggered real branch A_n = (-1)^n a with a > 0, sites counted from 1.
/// nullopt for g1 <= g1c; throws DomainError for odd N.
std::optional<MeanFieldConfiguration> closed_form_afsr(const RingParameters& params);

enum class ChiralVariant { I, II };

/// Chiral branch of the hexagon.
///   I : A1 = A4, A2 = A3 = A5 = A6;  B1 = B4 = 0, B2 = -B3 = B5 = -B6
///   II: A1 = -A4, A2 = -A3 = -A5 = A6; B1 = B4 = 0, B2 = B3 = -B5 = -B6
/// Requires N = 6 and theta inside the variant's window (the normal-phase
/// instability selects |k| = 2pi/3 for I and pi/3 for II); nullopt when the
/// pattern equations only have the trivial solution.
std::optional<MeanFieldConfiguration> closed_form_csr(const RingParameters& params, ChiralVariant variant);

/// Same as closed_form_csr without the window check; used to seed the minimiser.
std::optional<MeanFieldConfiguration> csr_pattern_branch(const RingParameters& params, ChiralVariant variant);

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, MeanFieldConfiguration last)
      : std::runtime_error(what), last_iterate(std::move(last)) {}
  MeanFieldConfiguration last_iterate;
};

struct SolverStrategy {
  int random_starts = 64;
  std::uint64_t seed = 0;
  /// Extra starting points, e.g. a converged neighbour on a parameter grid.
  std::vector<MeanFieldConfiguration> seeds;
  bool closed_form_starts = true;
  double tolerance = 1e-12;
  int max_iterations = 200;
};

struct SolverReport {
  MeanFieldConfiguration config;
  double energy = 0.0;
  double condensation = 0.0;
  double residual_norm = 0.0;
  PhaseLabel label;
  int iterations = 0;
  /// Which start produced this minimum ("zero", "closed-form:FSR/3", "random:17", ...).
  std::string seed;
};

struct MinimizationResult {
  /// Distinct local minima, ascending energy; degenerate minima ordered
  /// lexicographically by configuration.
  std::vector<SolverReport> minima;
  int starts = 0;
  int dropped = 0;

  /// Minima whose condensation energy lies within rel_tol (relative) of the lowest.
  std::vector<SolverReport> ground_states(double rel_tol = 1e-10) const;
};

/// Outcome of one local refinement.
struct RefinedPoint {
  MeanFieldConfiguration config;
  int iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
};

/// Damped Newton iteration on the stationarity residuals. Where the Hessian
/// is indefinite the step uses |eigenvalues| so it descends in energy, which
/// keeps the iteration away from saddles.
RefinedPoint refine_minimum(const RingParameters& params, const MeanFieldConfiguration& start,
                            double tolerance = 1e-12, int max_iterations = 200);

MinimizationResult minimize_energy(const RingParameters& params, const SolverStrategy& strategy = {});

/// Pattern-based phase label of a stationary configuration, chirality from
/// the sign of the ring current. Unknown when no pattern matches.
PhaseLabel classify_solution(const RingParameters& params, const MeanFieldConfiguration& config);

/// Amplitude scale of the uniform branch, sqrt(Delta/omega) when it is absent.
double amplitude_scale(const RingParameters& params);

}  // namespace rabiring
