#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>

#include "rabiring/meanfield.hpp"
#include "rabiring/observables.hpp"

using namespace rabiring;
using std::numbers::pi;

namespace {

RingParameters at(double theta, double g1) { return default_parameters().with_theta(theta).with_g1(g1); }

// Cyclic shift of a converged chiral config that puts it in the printed site
// labelling (A1 = +-A4, B1 = B4 = 0).
std::optional<MeanFieldConfiguration> aligned(const MeanFieldConfiguration& c, bool first) {
  for (int s = 0; s < 6; ++s) {
    const auto m = c.shifted(s);
    const double tol = 1e-6 * m.max_abs();
    const bool ends = std::abs(m.b[0]) < tol && std::abs(m.b[3]) < tol;
    const bool pattern = first ? std::abs(m.a[0] - m.a[3]) < tol && std::abs(m.a[1] - m.a[2]) < tol
                               : std::abs(m.a[0] + m.a[3]) < tol && std::abs(m.a[1] + m.a[2]) < tol;
    if (ends && pattern) return m;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("ring current closed forms on the printed patterns") {
  const double a1 = 1.7;
  const double a2 = -0.6;
  const double b2 = 0.35;
  const MeanFieldConfiguration first({a1, a2, a2, a1, a2, a2}, {0, b2, -b2, 0, b2, -b2});
  CHECK(ring_current(first) == doctest::Approx(8 * (a2 - a1) * b2).epsilon(1e-14));
  const auto [odd1, even1] = subring_currents(first);
  CHECK(odd1 == doctest::Approx(-ring_current(first) / 2));
  CHECK(even1 == doctest::Approx(-ring_current(first) / 2));

  const MeanFieldConfiguration second({a1, a2, -a2, -a1, -a2, a2}, {0, b2, b2, 0, -b2, -b2});
  CHECK(ring_current(second) == doctest::Approx(-8 * (a2 + a1) * b2).epsilon(1e-14));
  const auto [odd2, even2] = subring_currents(second);
  CHECK(odd2 == doctest::Approx(ring_current(second) / 2));
  CHECK(even2 == doctest::Approx(ring_current(second) / 2));
}

TEST_CASE("currents vanish without imaginary parts") {
  const MeanFieldConfiguration c({1, -2, 3, 0.5, 4, -1}, std::vector<double>(6, 0.0));
  CHECK(ring_current(c) == 0.0);
  const auto r = currents(c);
  CHECK(r.odd_subring == 0.0);
  CHECK(r.even_subring == 0.0);
  CHECK_THROWS_AS(subring_currents(MeanFieldConfiguration::zero(5)), DomainError);
  // other ring sizes still report the ring current
  const auto five = currents(MeanFieldConfiguration({1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}));
  CHECK(five.ring == doctest::Approx(-2.0));
}

TEST_CASE("current is odd under B -> -B") {
  const MeanFieldConfiguration c({1, -2, 3, 0.5, 4, -1}, {0.3, 0.1, -0.7, 2, 0.4, -1.1});
  MeanFieldConfiguration conj = c;
  for (auto& v : conj.b) v = -v;
  CHECK(ring_current(conj) == doctest::Approx(-ring_current(c)));
  CHECK(subring_currents(conj).first == doctest::Approx(-subring_currents(c).first));
}

TEST_CASE("currents of converged chiral ground states") {
  SUBCASE("CSR I") {
    const auto p = at(0.49 * pi, 0.7);
    const auto g = minimize_energy(p).ground_states();
    REQUIRE(g.size() == 6);
    for (const auto& s : g) {
      const auto m = aligned(s.config, true);
      REQUIRE(m);
      const auto r = currents(s.config);
      CHECK(std::abs(r.ring - 8 * (m->a[1] - m->a[0]) * m->b[1]) < 1e-8);
      CHECK(std::abs(r.odd_subring + r.ring / 2) < 1e-8);
      CHECK(std::abs(r.even_subring + r.ring / 2) < 1e-8);
    }
  }
  SUBCASE("CSR II") {
    const auto p = at(0.51 * pi, 0.7);
    const auto g = minimize_energy(p).ground_states();
    REQUIRE(g.size() == 6);
    for (const auto& s : g) {
      const auto m = aligned(s.config, false);
      REQUIRE(m);
      const auto r = currents(s.config);
      CHECK(std::abs(r.ring + 8 * (m->a[1] + m->a[0]) * m->b[1]) < 1e-8);
      CHECK(std::abs(r.odd_subring - r.ring / 2) < 1e-8);
      CHECK(std::abs(r.even_subring - r.ring / 2) < 1e-8);
    }
  }
  SUBCASE("collinear phases carry no current") {
    for (double t : {0.1 * pi, 0.9 * pi}) {
      for (const auto& s : minimize_energy(at(t, 0.7)).ground_states()) {
        const auto r = currents(s.config);
        CHECK(std::abs(r.ring) < 1e-8);
        CHECK(std::abs(r.odd_subring) < 1e-8);
        CHECK(std::abs(r.even_subring) < 1e-8);
      }
    }
  }
}

TEST_CASE("currents along the theta branch") {
  auto ground_current = [](double t) { return currents(minimize_energy(at(t, 0.7)).ground_states().front().config); };
  SUBCASE("odd under theta -> -theta") {
    for (double t : {0.48 * pi, 0.49 * pi, 0.51 * pi}) {
      const auto plus = ground_current(t);
      const auto minus = ground_current(-t);
      CHECK(minus.ring == doctest::Approx(-plus.ring).epsilon(1e-9));
      CHECK(minus.odd_subring == doctest::Approx(-plus.odd_subring).epsilon(1e-9));
    }
  }
  SUBCASE("at pi/2 the subring currents jump while the ring current stays continuous") {
    const double h = 1e-3 * pi;
    const auto l2 = ground_current(0.5 * pi - 2 * h);
    const auto l1 = ground_current(0.5 * pi - h);
    const auto r1 = ground_current(0.5 * pi + h);
    const auto r2 = ground_current(0.5 * pi + 2 * h);
    const double neighbour = std::max(std::abs(l1.odd_subring - l2.odd_subring), std::abs(r2.odd_subring - r1.odd_subring));
    CHECK(std::abs(r1.odd_subring - l1.odd_subring) > 10 * neighbour);
    CHECK(l1.odd_subring * r1.odd_subring < 0.0);
    // the staggering map theta -> pi - theta leaves the ring current unchanged
    CHECK(r1.ring == doctest::Approx(l1.ring).epsilon(1e-9));
  }
}

TEST_CASE("spin vectors") {
  const auto fsr = spin_vectors(MeanFieldConfiguration(std::vector<double>(6, -2.0), std::vector<double>(6, 0.0)));
  REQUIRE(fsr.vectors.size() == 6);
  for (const auto& v : fsr.vectors) {
    CHECK(v.x == -2.0);
    CHECK(v.y == 0.0);
  }
  const auto p = at(0.1 * pi, 0.7);
  const auto afsr = spin_vectors(*closed_form_afsr(p));
  const double a = afsr.vectors[1].x;
  for (int i = 0; i < 6; ++i) CHECK(afsr.vectors[i].x == doctest::Approx((i % 2 == 0 ? -1 : 1) * a));
  const auto c = spin_vectors(MeanFieldConfiguration({1, 2}, {3, -4}));
  CHECK(c.vectors[0].y == -3.0);
  CHECK(c.vectors[1].y == 4.0);
  for (const auto& v : spin_vectors(MeanFieldConfiguration::zero(6)).vectors) CHECK((v.x == 0.0 && v.y == 0.0));
}

TEST_CASE("winding numbers") {
  SUBCASE("converged chiral configurations") {
    for (const auto& s : minimize_energy(at(0.49 * pi, 0.7)).ground_states()) {
      CHECK(std::abs(winding_number(spin_vectors(s.config))) == 2);
    }
    for (const auto& s : minimize_energy(at(0.51 * pi, 0.7)).ground_states()) {
      CHECK(std::abs(winding_number(spin_vectors(s.config))) == 1);
    }
  }
  SUBCASE("FSR is unwound") {
    for (const auto& s : minimize_energy(at(0.9 * pi, 0.7)).ground_states()) {
      CHECK(winding_number(spin_vectors(s.config)) == 0);
    }
  }
  SUBCASE("AFSR neighbours are antipodal") {
    CHECK_THROWS_AS(winding_number(spin_vectors(*closed_form_afsr(at(0.1 * pi, 0.7)))), AmbiguousWindingError);
  }
  SUBCASE("vanishing vectors") {
    CHECK_THROWS_AS(winding_number(spin_vectors(MeanFieldConfiguration::zero(6))), UndefinedWindingError);
  }
  SUBCASE("hand-built vortices") {
    for (int q : {-2, -1, 1, 2}) {
      SpinField f;
      for (int n = 0; n < 6; ++n) f.vectors.push_back({std::cos(2 * pi * q * n / 6), std::sin(2 * pi * q * n / 6)});
      CHECK(winding_number(f) == q);
    }
  }
  SUBCASE("invariant under global rotation and scaling") {
    const auto base = spin_vectors(minimize_energy(at(0.49 * pi, 0.7)).ground_states().front().config);
    const int w = winding_number(base);
    for (double phi : {0.3, 1.9, -2.5}) {
      for (double scale : {0.01, 1.0, 70.0}) {
        SpinField f;
        for (const auto& v : base.vectors) {
          f.vectors.push_back({scale * (std::cos(phi) * v.x - std::sin(phi) * v.y),
                               scale * (std::sin(phi) * v.x + std::cos(phi) * v.y)});
        }
        CHECK(winding_number(f) == w);
      }
    }
  }
}

TEST_CASE("magnetic coupling regimes") {
  const auto ferro = magnetic_couplings(at(pi, 0.0));
  CHECK(ferro.dm == 0.0);
  CHECK(ferro.regime == CouplingRegime::XYFerro);
  CHECK(ferro.xy_sign == -1);
  const auto anti = magnetic_couplings(at(0.0, 0.0));
  CHECK(anti.dm == 0.0);
  CHECK(anti.regime == CouplingRegime::XYAntiferro);
  CHECK(anti.xy_sign == 1);
  const auto dm = magnetic_couplings(at(pi / 2, 0.0));
  CHECK(std::abs(dm.dm) == doctest::Approx(0.05));
  CHECK(dm.regime == CouplingRegime::DMDominated);
  CHECK(magnetic_couplings(at(0.49 * pi, 0.0)).regime == CouplingRegime::DMDominated);
  auto none = at(0.3, 0.0);
  none.hop = 0.0;
  CHECK(magnetic_couplings(none).regime == CouplingRegime::Decoupled);
  CHECK(to_string(CouplingRegime::XYFerro) == "XY-ferro");
}
