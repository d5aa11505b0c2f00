#include "rabiring/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rabiring/meanfield.hpp"

namespace rabiring {

using cd = std::complex<double>;

Eigen::MatrixXcd QuadraticForm::normal_block() const { return matrix.topLeftCorner(sites, sites); }
Eigen::MatrixXcd QuadraticForm::anomalous_block() const { return matrix.topRightCorner(sites, sites); }

QuadraticForm bilinear_matrix(const RingParameters& params, const MeanFieldConfiguration& config) {
  if (config.sites() != params.sites) throw DomainError("configuration length differs from N");
  const int n = params.sites;
  const auto q = EffectiveSiteQuantities::of(params, config.a);
  const cd hop = params.hop * std::polar(1.0, params.theta);

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int up = (i + 1) % n;
    h(i, i) = params.omega - 2.0 * q.chi_n[i];
    h(i, up) += hop;
    h(up, i) += std::conj(hop);
    d(i, i) = -2.0 * q.chi_n[i];
  }
  QuadraticForm form;
  form.sites = n;
  form.matrix.resize(2 * n, 2 * n);
  form.matrix << h, d, d.conjugate(), h.conjugate();
  return form;
}

ExcitationSpectrum excitation_spectrum(const QuadraticForm& form, double zero_tolerance) {
  const auto& m = form.matrix;
  const int n = form.sites;
  if (m.rows() != 2 * n || m.cols() != 2 * n) throw DomainError("quadratic form has the wrong shape");
  const double norm = std::max(m.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * norm) throw DomainError("quadratic form is not hermitian");

  Eigen::MatrixXcd dyn = m;
  dyn.bottomRows(n) *= -1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dyn, false);
  if (solver.info() != Eigen::Success) throw PairingError("eigenvalue iteration failed");

  ExcitationSpectrum out;
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  double scale = 0.0;
  for (const auto& z : out.eigenvalues) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) scale = 1.0;

  out.stable = std::all_of(out.eigenvalues.begin(), out.eigenvalues.end(),
                           [&](const cd& z) { return std::abs(z.imag()) <= 1e-8 * scale; });

  std::vector<cd> sorted = out.eigenvalues;
  std::sort(sorted.begin(), sorted.end(), [](const cd& a, const cd& b) { return a.real() < b.real(); });
  std::vector<bool> used(sorted.size(), false);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t best = sorted.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      if (used[j]) continue;
      const double gap = std::abs(sorted[i] + sorted[j]);
      if (gap < best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    if (best == sorted.size() || best_gap > 1e-6 * scale) {
      throw PairingError("eigenvalues of the dynamical matrix do not form +-epsilon pairs");
    }
    used[best] = true;
    out.energies.push_back(0.5 * (std::abs(sorted[i].real()) + std::abs(sorted[best].real())));
  }
  std::sort(out.energies.begin(), out.energies.end());
  out.zero_modes = static_cast<int>(
      std::count_if(out.energies.begin(), out.energies.end(), [&](double e) { return e < zero_tolerance; }));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hermitian(m, Eigen::EigenvaluesOnly);
  out.positive_definite = hermitian.eigenvalues().minCoeff() > -1e-10 * norm;
  return out;
}

ExcitationSpectrum spectrum_at(const RingParameters& params, const MeanFieldConfiguration& config) {
  return excitation_spectrum(bilinear_matrix(params, config), 1e-7 * params.omega);
}

}  // namespace rabiring
