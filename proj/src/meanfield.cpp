#include "rabiring/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "rabiring/normal_phase.hpp"
#include "rabiring/observables.hpp"

namespace rabiring {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void require_size(const RingParameters& params, const MeanFieldConfiguration& config) {
  if (config.sites() != params.sites) {
    throw DomainError("configuration has " + std::to_string(config.sites()) + " sites, expected " +
                      std::to_string(params.sites));
  }
}

void require_hexagon(const RingParameters& params, std::size_t length, const char* what) {
  if (params.sites != 6) throw DomainError(std::string(what) + " is specific to N = 6");
  if (length != 6) throw DomainError(std::string(what) + " expects 6 amplitudes");
}

MeanFieldConfiguration from_stacked(const VectorXd& x) {
  const auto n = x.size() / 2;
  MeanFieldConfiguration c = MeanFieldConfiguration::zero(static_cast<int>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    c.a[i] = x[i];
    c.b[i] = x[n + i];
  }
  return c;
}

VectorXd to_stacked(const MeanFieldConfiguration& c) {
  const auto n = static_cast<Eigen::Index>(c.sites());
  VectorXd x(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x[i] = c.a[i];
    x[n + i] = c.b[i];
  }
  return x;
}

double cyclic(std::span<const double> v, long n) {
  const long s = static_cast<long>(v.size());
  return v[static_cast<std::size_t>(((n % s) + s) % s)];
}

}  // namespace

EffectiveSiteQuantities EffectiveSiteQuantities::of(const RingParameters& params, std::span<const double> a) {
  const double g = params.bare_coupling();
  EffectiveSiteQuantities q;
  for (double an : a) {
    const double dn = std::sqrt(params.delta * params.delta + 16.0 * g * g * an * an);
    const double ln = g * params.delta / dn;
    q.delta_n.push_back(dn);
    q.lambda_n.push_back(ln);
    q.chi_n.push_back(ln * ln / dn);
  }
  return q;
}

double ground_energy(const RingParameters& params, const MeanFieldConfiguration& config) {
  require_size(params, config);
  using cd = std::complex<double>;
  const auto sites = EffectiveSiteQuantities::of(params, config.a);
  const cd forward = std::polar(1.0, params.theta);
  double onsite = 0.0;
  cd hopping = 0.0;
  for (long n = 0; n < config.sites(); ++n) {
    const cd alpha(config.re(n), config.im(n));
    const cd next(config.re(n + 1), config.im(n + 1));
    const cd prev(config.re(n - 1), config.im(n - 1));
    onsite += params.omega * std::norm(alpha) - 0.5 * sites.delta_n[n];
    hopping += params.hop * std::conj(alpha) * (forward * next + std::conj(forward) * prev);
  }
  const double energy = onsite + hopping.real();
  if (std::abs(hopping.imag()) > 1e-10 * (1.0 + std::abs(energy))) {
    throw std::logic_error("hopping energy acquired an imaginary part");
  }
  return energy;
}

double condensation_energy(const RingParameters& params, const MeanFieldConfiguration& config) {
  require_size(params, config);
  // Delta_n - Delta = 16 g^2 A^2 / (Delta_n + Delta); extended precision keeps
  // the small difference of O(A^2) terms resolvable close to threshold
  using real = long double;
  const real g = params.bare_coupling();
  const real delta = params.delta;
  const real c = std::cos(static_cast<real>(params.theta));
  const real s = std::sin(static_cast<real>(params.theta));
  real sum = 0.0L;
  for (long n = 0; n < config.sites(); ++n) {
    const real a = config.re(n);
    const real b = config.im(n);
    const real an = config.re(n + 1);
    const real bn = config.im(n + 1);
    const real dn = std::sqrt(delta * delta + 16.0L * g * g * a * a);
    sum += params.omega * (a * a + b * b) - 8.0L * g * g * a * a / (dn + delta);
    // alpha_n^* e^{i theta} alpha_{n+1} + c.c.
    sum += 2.0L * params.hop * (c * (a * an + b * bn) - s * (a * bn - b * an));
  }
  return static_cast<double>(sum);
}

double StationarityResiduals::max_abs() const {
  double m = 0.0;
  for (double x : a_block) m = std::max(m, std::abs(x));
  for (double x : b_block) m = std::max(m, std::abs(x));
  return m;
}

Eigen::VectorXd StationarityResiduals::stacked() const {
  const auto n = static_cast<Eigen::Index>(a_block.size());
  VectorXd r(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r[i] = a_block[i];
    r[n + i] = b_block[i];
  }
  return r;
}

StationarityResiduals stationarity_residuals(const RingParameters& params, const MeanFieldConfiguration& c) {
  require_size(params, c);
  const double g2 = params.bare_coupling() * params.bare_coupling();
  const double jc = params.hop * std::cos(params.theta);
  const double js = params.hop * std::sin(params.theta);
  const double w = params.omega;
  const double d2 = params.delta * params.delta;
  StationarityResiduals r;
  for (long n = 0; n < c.sites(); ++n) {
    const double an = c.re(n);
    r.a_block.push_back(w * an - 4.0 * g2 * an / std::sqrt(16.0 * g2 * an * an + d2) +
                        jc * (c.re(n + 1) + c.re(n - 1)) + js * (c.im(n - 1) - c.im(n + 1)));
    r.b_block.push_back(w * c.im(n) + js * (c.re(n + 1) - c.re(n - 1)) + jc * (c.im(n + 1) + c.im(n - 1)));
  }
  return r;
}

Eigen::MatrixXd residual_jacobian(const RingParameters& params, const MeanFieldConfiguration& c) {
  require_size(params, c);
  const int n = c.sites();
  const auto q = EffectiveSiteQuantities::of(params, c.a);
  const double jc = params.hop * std::cos(params.theta);
  const double js = params.hop * std::sin(params.theta);
  MatrixXd h = MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const int up = (i + 1) % n;
    const int down = (i + n - 1) % n;
    h(i, i) += params.omega - 4.0 * q.chi_n[i];
    h(i, up) += jc;
    h(i, down) += jc;
    h(i, n + down) += js;
    h(i, n + up) -= js;
    h(n + i, n + i) += params.omega;
    h(n + i, n + up) += jc;
    h(n + i, n + down) += jc;
    h(n + i, up) += js;
    h(n + i, down) -= js;
  }
  return h;
}

bool is_local_minimum(const RingParameters& params, const MeanFieldConfiguration& config) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(residual_jacobian(params, config), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return ev.minCoeff() >= -1e-13 * std::max(params.omega, ev.cwiseAbs().maxCoeff());
}

std::vector<double> b_from_a(const RingParameters& params, std::span<const double> a) {
  require_hexagon(params, a.size(), "b_from_a");
  const double w = params.omega;
  const double jc = params.hop * std::cos(params.theta);
  const double js = params.hop * std::sin(params.theta);
  const double den = w * w - jc * jc;
  if (std::abs(den) <= 1e-12) throw SingularError("omega^2 - J^2 cos^2(theta) vanishes");
  std::vector<double> b;
  for (long n = 0; n < 6; ++n) {
    b.push_back(-js * (w * (cyclic(a, n + 1) - cyclic(a, n - 1)) + jc * (cyclic(a, n - 2) - cyclic(a, n + 2))) / den);
  }
  return b;
}

namespace {

// Linear part of the reduced A equations, including the omega A_n term.
std::vector<double> reduced_linear(const RingParameters& params, std::span<const double> a) {
  const double w = params.omega;
  const double jc = params.hop * std::cos(params.theta);
  const double js = params.hop * std::sin(params.theta);
  const double den = w * w - jc * jc;
  if (std::abs(den) <= 1e-12) throw SingularError("omega^2 - J^2 cos^2(theta) vanishes");
  const double k = js * js / den;
  std::vector<double> r;
  for (long n = 0; n < 6; ++n) {
    const double an = cyclic(a, n);
    r.push_back(w * an + jc * (cyclic(a, n + 1) + cyclic(a, n - 1)) -
                k * (w * (2.0 * an - cyclic(a, n - 2) - cyclic(a, n + 2)) +
                     jc * (2.0 * cyclic(a, n + 3) - cyclic(a, n + 1) - cyclic(a, n - 1))));
  }
  return r;
}

}  // namespace

std::vector<double> reduced_residual(const RingParameters& params, std::span<const double> a) {
  require_hexagon(params, a.size(), "reduced_residual");
  const double g2 = params.bare_coupling() * params.bare_coupling();
  const double d2 = params.delta * params.delta;
  auto r = reduced_linear(params, a);
  for (std::size_t n = 0; n < 6; ++n) r[n] -= 4.0 * g2 * a[n] / std::sqrt(16.0 * g2 * a[n] * a[n] + d2);
  return r;
}

namespace {

// (1/4g1) sqrt(Delta/omega) sqrt(16 g1^4 / s^2 - 1); nullopt when the radicand is negative
std::optional<double> uniform_amplitude(const RingParameters& params, double s) {
  if (params.g1 <= 0.0) return std::nullopt;
  const double g1 = params.g1;
  double radicand = 16.0 * g1 * g1 * g1 * g1 / (s * s) - 1.0;
  if (radicand < 0.0) {
    if (radicand < -1e-12) return std::nullopt;
    radicand = 0.0;
  }
  return std::sqrt(params.delta / params.omega) * std::sqrt(radicand) / (4.0 * g1);
}

}  // namespace

std::optional<MeanFieldConfiguration> closed_form_fsr(const RingParameters& params) {
  params.validate();
  const auto a = uniform_amplitude(params, 1.0 + 2.0 * params.hop_ratio() * std::cos(params.theta));
  if (!a) return std::nullopt;
  return MeanFieldConfiguration(std::vector<double>(params.sites, *a), std::vector<double>(params.sites, 0.0));
}

std::optional<MeanFieldConfiguration> closed_form_afsr(const RingParameters& params) {
  params.validate();
  if (params.sites % 2 != 0) throw DomainError("the staggered branch needs an even number of sites");
  const double s = 1.0 - 2.0 * params.hop_ratio() * std::cos(params.theta);
  if (s <= 0.0 || params.g1 <= std::sqrt(s) / 2.0) return std::nullopt;
  const auto a = uniform_amplitude(params, s);
  if (!a) return std::nullopt;
  auto c = MeanFieldConfiguration::zero(params.sites);
  for (int i = 0; i < params.sites; ++i) c.a[i] = (i % 2 == 0) ? -*a : *a;  // site n = i + 1
  return c;
}

double amplitude_scale(const RingParameters& params) {
  const auto fsr = uniform_amplitude(params, 1.0 + 2.0 * params.hop_ratio() * std::cos(params.theta));
  if (fsr && *fsr > 0.0) return *fsr;
  return std::sqrt(params.delta / params.omega);
}

std::optional<MeanFieldConfiguration> csr_pattern_branch(const RingParameters& params, ChiralVariant variant) {
  params.validate();
  if (params.sites != 6) throw DomainError("chiral pattern branches are specific to N = 6");

  // A = x * px + y * py
  const bool first = variant == ChiralVariant::I;
  const std::vector<double> px = first ? std::vector<double>{1, 0, 0, 1, 0, 0} : std::vector<double>{1, 0, 0, -1, 0, 0};
  const std::vector<double> py = first ? std::vector<double>{0, 1, 1, 0, 1, 1} : std::vector<double>{0, 1, -1, 0, -1, 1};
  auto expand = [&](const Eigen::Vector2d& u) {
    std::vector<double> a(6);
    for (int i = 0; i < 6; ++i) a[i] = u[0] * px[i] + u[1] * py[i];
    return a;
  };
  auto pattern_residual = [&](const Eigen::Vector2d& u) {
    const auto r = reduced_residual(params, expand(u));
    return Eigen::Vector2d(r[0], r[1]);
  };
  const auto lin_x = reduced_linear(params, px);
  const auto lin_y = reduced_linear(params, py);
  auto pattern_jacobian = [&](const Eigen::Vector2d& u) {
    const auto q = EffectiveSiteQuantities::of(params, expand(u));
    Eigen::Matrix2d jm;
    for (int row = 0; row < 2; ++row) {
      jm(row, 0) = lin_x[row] - 4.0 * q.chi_n[row] * px[row];
      jm(row, 1) = lin_y[row] - 4.0 * q.chi_n[row] * py[row];
    }
    return jm;
  };

  // seed amplitude from the lowest normal-phase instability
  const double g1c = lowest_critical_coupling(params);
  const double ratio = params.g1 / g1c;
  const double scale = std::sqrt(params.delta / params.omega) * std::sqrt(std::max(ratio * ratio * ratio * ratio - 1.0, 1e-8)) /
                       (4.0 * std::max(params.g1, 1e-12));
  Eigen::Vector2d u(scale, first ? -scale : scale);

  constexpr int max_iterations = 200;
  constexpr double tolerance = 1e-12;
  Eigen::Vector2d f = pattern_residual(u);
  bool converged = false;
  for (int it = 0; it < max_iterations; ++it) {
    if (f.cwiseAbs().maxCoeff() < tolerance) {
      converged = true;
      break;
    }
    const Eigen::Vector2d step = -pattern_jacobian(u).fullPivLu().solve(f);
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, t *= 0.5) {
      const Eigen::Vector2d trial = u + t * step;
      const Eigen::Vector2d ft = pattern_residual(trial);
      if (ft.allFinite() && ft.squaredNorm() < f.squaredNorm()) {
        u = trial;
        f = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (!converged) converged = f.cwiseAbs().maxCoeff() < tolerance;

  const auto a = expand(u);
  if (!converged) {
    std::ostringstream msg;
    msg << "chiral pattern Newton did not converge (last A1=" << u[0] << ", A2=" << u[1]
        << ", residual=" << f.cwiseAbs().maxCoeff() << ")";
    throw ConvergenceError(msg.str(), MeanFieldConfiguration(a, b_from_a(params, a)));
  }
  if (u.cwiseAbs().maxCoeff() < 1e-9) return std::nullopt;

  const double w = params.omega;
  const double jc = params.hop * std::cos(params.theta);
  const double js = params.hop * std::sin(params.theta);
  std::vector<double> b(6, 0.0);
  if (first) {
    const double b2 = -js * (u[1] - u[0]) / (w - jc);
    b = {0.0, b2, -b2, 0.0, b2, -b2};
  } else {
    const double b2 = js * (u[1] + u[0]) / (w + jc);
    b = {0.0, b2, b2, 0.0, -b2, -b2};
  }
  return MeanFieldConfiguration(a, b);
}

std::optional<MeanFieldConfiguration> closed_form_csr(const RingParameters& params, ChiralVariant variant) {
  if (params.sites != 6) throw DomainError("closed_form_csr is specific to N = 6");
  const auto sel = classify_theta(params);
  const int wanted = variant == ChiralVariant::I ? 2 : 1;
  const bool inside = sel.momentum_index == wanted ||
                      std::find(sel.tied.begin(), sel.tied.end(), wanted) != sel.tied.end();
  if (!inside) {
    std::ostringstream msg;
    msg << "theta = " << params.theta << " lies outside the CSR-" << (variant == ChiralVariant::I ? "I" : "II")
        << " window (normal-phase instability at |m| = " << sel.momentum_index << ")";
    throw DomainError(msg.str());
  }
  return csr_pattern_branch(params, variant);
}

RefinedPoint refine_minimum(const RingParameters& params, const MeanFieldConfiguration& start, double tolerance,
                            int max_iterations) {
  require_size(params, start);
  VectorXd x = to_stacked(start);
  // the condensation energy resolves descent even when it is tiny next to N Delta / 2
  auto energy_at = [&](const VectorXd& v) { return condensation_energy(params, from_stacked(v)); };
  auto residual_at = [&](const VectorXd& v) { return stationarity_residuals(params, from_stacked(v)).stacked(); };

  RefinedPoint out;
  VectorXd r = residual_at(x);
  double energy = energy_at(x);
  const double floor = 1e-8 * params.omega;

  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it;
    if (r.cwiseAbs().maxCoeff() < tolerance) {
      out.converged = true;
      break;
    }
    const MatrixXd h = residual_jacobian(params, from_stacked(x));
    VectorXd step;
    Eigen::LLT<MatrixXd> llt(h);
    const bool convex = llt.info() == Eigen::Success;
    if (convex) {
      step = -llt.solve(r);
    } else {
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
      const VectorXd proj = es.eigenvectors().transpose() * r;
      VectorXd scaled(proj.size());
      for (Eigen::Index i = 0; i < proj.size(); ++i) scaled[i] = proj[i] / std::max(std::abs(es.eigenvalues()[i]), floor);
      step = -es.eigenvectors() * scaled;
    }
    const double cap = 0.5 * (1.0 + x.cwiseAbs().maxCoeff());
    const double len = step.cwiseAbs().maxCoeff();
    if (len > cap) step *= cap / len;

    const double slope = 2.0 * r.dot(step);  // dE along step
    const double merit = r.squaredNorm();
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, t *= 0.5) {
      const VectorXd trial = x + t * step;
      const double e = energy_at(trial);
      if (!std::isfinite(e)) continue;
      const VectorXd rt = residual_at(trial);
      const bool armijo = e <= energy + 1e-4 * t * slope && e < energy;
      const bool newton = convex && rt.squaredNorm() < merit && e <= energy + 1e-11 * (1.0 + std::abs(energy));
      if (armijo || newton) {
        x = trial;
        r = rt;
        energy = e;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    out.iterations = it + 1;
  }
  if (!out.converged) out.converged = r.cwiseAbs().maxCoeff() < tolerance;

  if (out.converged) {
    // Polish with plain Newton steps: near threshold the softest curvature can be
    // far below the residual tolerance, leaving the point loose along that mode.
    for (int it = 0; it < 50; ++it) {
      Eigen::LLT<MatrixXd> llt(residual_jacobian(params, from_stacked(x)));
      if (llt.info() != Eigen::Success) break;
      const VectorXd step = -llt.solve(r);
      if (!step.allFinite() || step.cwiseAbs().maxCoeff() <= 1e-12 * x.cwiseAbs().maxCoeff()) break;
      double t = 1.0;
      bool accepted = false;
      for (int k = 0; k < 30; ++k, t *= 0.5) {
        const VectorXd trial = x + t * step;
        const VectorXd rt = residual_at(trial);
        const double e = energy_at(trial);
        if (rt.allFinite() && e <= energy) {
          x = trial;
          r = rt;
          energy = e;
          accepted = true;
          break;
        }
      }
      if (!accepted || t < 1.0) break;
    }
    out.converged = r.cwiseAbs().maxCoeff() < tolerance;
  }
  out.config = from_stacked(x);
  out.residual_norm = r.cwiseAbs().maxCoeff();
  return out;
}

namespace {

// lexicographic order on (A, B) with a tolerance on each comparison
bool config_less(const MeanFieldConfiguration& lhs, const MeanFieldConfiguration& rhs) {
  constexpr double tol = 1e-9;
  const auto l = to_stacked(lhs);
  const auto r = to_stacked(rhs);
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (std::abs(l[i] - r[i]) <= tol) continue;
    return l[i] < r[i];
  }
  return false;
}

bool same_energy(double e1, double e2, double rel_tol) {
  return std::abs(e1 - e2) <= rel_tol * std::max(std::abs(e1), std::abs(e2));
}

}  // namespace

std::vector<SolverReport> MinimizationResult::ground_states(double rel_tol) const {
  std::vector<SolverReport> out;
  if (minima.empty()) return out;
  const double e0 = minima.front().condensation;
  for (const auto& m : minima) {
    if (same_energy(m.condensation, e0, rel_tol)) out.push_back(m);
  }
  return out;
}

MinimizationResult minimize_energy(const RingParameters& params, const SolverStrategy& strategy) {
  params.validate();
  const int n = params.sites;
  struct Start {
    MeanFieldConfiguration config;
    std::string tag;
  };
  std::vector<Start> starts;
  starts.push_back({MeanFieldConfiguration::zero(n), "zero"});

  auto add_branch = [&](const std::optional<MeanFieldConfiguration>& branch, const std::string& name) {
    if (!branch) return;
    const auto orbit = symmetry_orbit(*branch, params);
    for (std::size_t i = 0; i < orbit.size(); ++i) starts.push_back({orbit[i], "closed-form:" + name + "/" + std::to_string(i)});
  };
  if (strategy.closed_form_starts) {
    add_branch(closed_form_fsr(params), "FSR");
    if (n % 2 == 0) add_branch(closed_form_afsr(params), "AFSR");
    if (n == 6 && params.g1 > 0.0) {
      for (auto [variant, name] : {std::pair{ChiralVariant::I, "CSR-I"}, std::pair{ChiralVariant::II, "CSR-II"}}) {
        try {
          add_branch(csr_pattern_branch(params, variant), name);
        } catch (const ConvergenceError&) {
          // the random starts still cover this region
        } catch (const SingularError&) {
        }
      }
    }
  }
  for (std::size_t i = 0; i < strategy.seeds.size(); ++i) {
    if (strategy.seeds[i].sites() == n) starts.push_back({strategy.seeds[i], "seed:" + std::to_string(i)});
  }
  std::mt19937_64 engine(strategy.seed);
  const double span = 1.2 * amplitude_scale(params);
  std::uniform_real_distribution<double> draw(-span, span);
  for (int r = 0; r < strategy.random_starts; ++r) {
    auto c = MeanFieldConfiguration::zero(n);
    for (auto& v : c.a) v = draw(engine);
    for (auto& v : c.b) v = draw(engine);
    starts.push_back({std::move(c), "random:" + std::to_string(r)});
  }

  MinimizationResult result;
  result.starts = static_cast<int>(starts.size());
  for (const auto& start : starts) {
    const auto point = refine_minimum(params, start.config, strategy.tolerance, strategy.max_iterations);
    if (!point.converged || !point.config.finite()) {
      ++result.dropped;
      continue;
    }
    if (!is_local_minimum(params, point.config)) continue;
    const double dedup = 1e-6 * std::max(1.0, point.config.max_abs());
    const bool seen = std::any_of(result.minima.begin(), result.minima.end(), [&](const SolverReport& m) {
      return m.config.distance(point.config) <= dedup;
    });
    if (seen) continue;
    SolverReport report;
    report.config = point.config;
    report.energy = ground_energy(params, point.config);
    report.condensation = condensation_energy(params, point.config);
    report.residual_norm = point.residual_norm;
    report.iterations = point.iterations;
    report.seed = start.tag;
    report.label = classify_solution(params, point.config);
    result.minima.push_back(std::move(report));
  }

  auto& m = result.minima;
  std::sort(m.begin(), m.end(),
            [](const SolverReport& l, const SolverReport& r) { return l.condensation < r.condensation; });
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i + 1;
    while (j < m.size() && same_energy(m[j].condensation, m[i].condensation, 1e-10)) ++j;
    std::sort(m.begin() + static_cast<long>(i), m.begin() + static_cast<long>(j),
              [](const SolverReport& l, const SolverReport& r) { return config_less(l.config, r.config); });
    i = j;
  }
  return result;
}

namespace {

Chirality chirality_of(const MeanFieldConfiguration& config) {
  const double current = ring_current(config);
  if (std::abs(current) < 1e-12) return Chirality::Either;
  return current > 0.0 ? Chirality::Positive : Chirality::Negative;
}

}  // namespace

PhaseLabel classify_solution(const RingParameters& params, const MeanFieldConfiguration& config) {
  require_size(params, config);
  const int n = config.sites();
  const double tol = 1e-6 * std::max(1.0, config.max_abs());
  auto eq = [&](double x, double y) { return std::abs(x - y) <= tol; };

  if (config.max_abs() <= tol) return PhaseLabel::normal(n);
  const bool real = std::all_of(config.b.begin(), config.b.end(), [&](double v) { return eq(v, 0.0); });
  if (real) {
    const bool uniform = std::all_of(config.a.begin(), config.a.end(), [&](double v) { return eq(v, config.a[0]); });
    if (uniform) return PhaseLabel::ferro(n);
    bool staggered = n % 2 == 0;
    for (long i = 0; staggered && i < n; ++i) staggered = eq(config.re(i), -config.re(i + 1));
    if (staggered) return PhaseLabel::antiferro(n);
  }

  if (n == 6) {
    for (int s = 0; s < 6; ++s) {
      const auto c = config.shifted(s);
      const auto& a = c.a;
      const auto& b = c.b;
      const bool b_ends = eq(b[0], 0.0) && eq(b[3], 0.0);
      const bool first = eq(a[0], a[3]) && eq(a[1], a[2]) && eq(a[1], a[4]) && eq(a[1], a[5]) && b_ends &&
                         eq(b[1], -b[2]) && eq(b[1], b[4]) && eq(b[1], -b[5]);
      if (first) return PhaseLabel::chiral(6, 2, chirality_of(config));
      const bool second = eq(a[0], -a[3]) && eq(a[1], -a[2]) && eq(a[1], -a[4]) && eq(a[1], a[5]) && b_ends &&
                          eq(b[1], b[2]) && eq(b[1], -b[4]) && eq(b[1], -b[5]);
      if (second) return PhaseLabel::chiral(6, 1, chirality_of(config));
    }
    return PhaseLabel::unknown(n);
  }

  if (real) return PhaseLabel::unknown(n);
  // general N: the dominant Fourier component of alpha fixes |m|
  int best = 0;
  double best_weight = -1.0;
  for (int m = 0; m < n; ++m) {
    std::complex<double> amp = 0.0;
    for (int i = 0; i < n; ++i) amp += std::complex<double>(config.a[i], config.b[i]) * std::polar(1.0, -momentum(m, n) * i);
    if (std::norm(amp) > best_weight + 1e-12) {
      best_weight = std::norm(amp);
      best = m;
    }
  }
  const int folded = std::min(best, n - best);
  if (folded == 0 || 2 * folded == n) return PhaseLabel::unknown(n);
  return PhaseLabel::chiral(n, folded, chirality_of(config));
}

}  // namespace rabiring
