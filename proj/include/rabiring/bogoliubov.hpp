// Quadratic fluctuation Hamiltonian around a mean-field configuration and its
// bosonic (para-unitary) excitation spectrum.

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "rabiring/ring_model.hpp"

namespace rabiring {

/// H = 1/2 Psi^+ M Psi + const with Psi = (a_1 .. a_N, a_1^+ .. a_N^+) and
/// M = [[h, d], [d^*, h^*]]. h carries omega - 2 chi_n on the diagonal and the
/// hopping J e^{+-i theta}; the anomalous block d is diagonal with -2 chi_n,
/// i.e. the term -chi_n (a^+ a^+ + a a).
struct QuadraticForm {
  int sites = 0;
  Eigen::MatrixXcd matrix;

  Eigen::MatrixXcd normal_block() const;
  Eigen::MatrixXcd anomalous_block() const;
};

QuadraticForm bilinear_matrix(const RingParameters& params, const MeanFieldConfiguration& config);

class PairingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExcitationSpectrum {
  /// Non-negative members of the +-epsilon pairs, ascending.
  std::vector<double> energies;
  /// All eigenvalues of eta M are real within 1e-8 of the spectral scale.
  bool stable = false;
  /// M itself is positive definite, i.e. the configuration is an energy minimum.
  bool positive_definite = false;
  int zero_modes = 0;
  std::vector<std::complex<double>> eigenvalues;

  double gap() const { return energies.empty() ? 0.0 : energies.front(); }
};

/// Diagonalises the dynamical matrix eta M (eta = diag(1, .., -1, ..)) with a
/// dense non-hermitian eigensolver; this also works at the gapless point where
/// a Cholesky factorisation of M breaks down.
ExcitationSpectrum excitation_spectrum(const QuadraticForm& form, double zero_tolerance = 1e-7);

/// bilinear_matrix + excitation_spectrum with the zero-mode tolerance in units of omega.
ExcitationSpectrum spectrum_at(const RingParameters& params, const MeanFieldConfiguration& config);

}  // namespace rabiring
