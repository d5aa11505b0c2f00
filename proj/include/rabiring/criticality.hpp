// Gap scans across the normal/superradiant boundary, power-law exponent fits
// and rasterised phase diagrams.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rabiring/meanfield.hpp"
#include "rabiring/observables.hpp"
#include "rabiring/ring_model.hpp"

namespace rabiring {

enum class Side { Below, Above };

std::string to_string(Side side);

/// Log-spaced reduced couplings delta = |g1/g1c - 1|.
struct ReducedGrid {
  double delta_min = 1e-4;
  double delta_max = 1e-2;
  int points = 16;

  std::vector<double> values() const;
};

struct GapPoint {
  double reduced = 0.0;
  double g1 = 0.0;
  double gap = 0.0;
  /// Number of degenerate mean-field ground states (1 on the normal side).
  int degeneracy = 1;
};

struct GapCurve {
  /// Ascending in g1.
  std::vector<GapPoint> points;
  Side side = Side::Below;
  double g1c = 0.0;
  double theta = 0.0;
};

/// Lowest excitation energy along a reduced-coupling grid on one side of the
/// normal-phase instability at flux theta. Below: spectrum of the vacuum.
/// Above: global mean-field minimum, continued from the previous (larger)
/// delta, then its Bogoliubov spectrum.
GapCurve gap_curve(const RingParameters& params, double theta, Side side, const ReducedGrid& grid = {},
                   const SolverStrategy& strategy = {});

class InsufficientPointsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScalingFit {
  double gamma = 0.0;
  double log_prefactor = 0.0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

/// Least-squares line through (log delta, log gap); gamma is the slope.
ScalingFit fit_exponent(const GapCurve& curve);

struct PhaseCell {
  double theta = 0.0;
  double g1 = 0.0;
  PhaseLabel label;
  double energy = 0.0;
  int degeneracy = 0;
  /// Order parameters of the representative ground state (A4 is NaN for N < 4).
  double a4 = 0.0;
  double b2 = 0.0;
  CurrentReport currents;
  MeanFieldConfiguration config;
  std::string error;
};

/// Cells ordered theta-major, g1-minor. Every theta column runs sequentially
/// in ascending g1 with continuation seeding; columns are spread over `jobs`
/// threads. Random starts are seeded per cell, so the output does not depend
/// on the number of threads.
std::vector<PhaseCell> phase_diagram(const RingParameters& params, std::span<const double> thetas,
                                     std::span<const double> g1s, const SolverStrategy& strategy = {}, int jobs = 1);

}  // namespace rabiring
