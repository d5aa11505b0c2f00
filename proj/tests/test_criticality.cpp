#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rabiring/criticality.hpp"
#include "rabiring/normal_phase.hpp"

using namespace rabiring;
using std::numbers::pi;

namespace {

ScalingFit fit(double theta, Side side, double lo = 1e-4, double hi = 1e-2) {
  return fit_exponent(gap_curve(default_parameters(), theta, side, ReducedGrid{lo, hi, 16}));
}

}  // namespace

TEST_CASE("reduced grid") {
  const auto v = ReducedGrid{}.values();
  REQUIRE(v.size() == 16);
  CHECK(v.front() == doctest::Approx(1e-4));
  CHECK(v.back() == doctest::Approx(1e-2));
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] / v[i - 1] == doctest::Approx(std::pow(100.0, 1.0 / 15)));
  CHECK_THROWS_AS((ReducedGrid{1e-2, 1e-4, 16}.values()), DomainError);
  CHECK_THROWS_AS((ReducedGrid{0.0, 1e-2, 16}.values()), DomainError);
  CHECK_THROWS_AS((ReducedGrid{1e-4, 1e-2, 1}.values()), DomainError);
}

TEST_CASE("gap curves") {
  SUBCASE("normal side closes toward g1c") {
    const auto c = gap_curve(default_parameters(), 0.9 * pi, Side::Below);
    REQUIRE(c.points.size() == 16);
    CHECK(c.g1c == doctest::Approx(lowest_critical_coupling(default_parameters().with_theta(0.9 * pi))));
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      CHECK(c.points[i].g1 > c.points[i - 1].g1);
      CHECK(c.points[i].gap < c.points[i - 1].gap);
    }
    for (const auto& p : c.points) {
      CHECK(p.gap >= 0.0);
      CHECK(p.g1 < c.g1c);
    }
    CHECK(c.points.front().reduced == doctest::Approx(1e-2));
    CHECK(c.points.front().gap > 0.0);
  }
  SUBCASE("chiral side keeps the six-fold ground state at every point") {
    const auto c = gap_curve(default_parameters(), 0.49 * pi, Side::Above);
    REQUIRE(c.points.size() == 16);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      CHECK(c.points[i].g1 > c.points[i - 1].g1);
      CHECK(c.points[i].gap > c.points[i - 1].gap);
    }
    for (const auto& p : c.points) {
      CHECK(p.degeneracy == 6);
      CHECK(p.g1 > c.g1c);
    }
    CHECK(c.points.back().reduced == doctest::Approx(1e-2));
    CHECK(c.points.back().gap > 0.0);
  }
  SUBCASE("first-order boundaries are rejected") {
    CHECK_THROWS_AS(gap_curve(default_parameters(), pi / 2, Side::Below), DomainError);
    const double edge = momentum_switch_boundaries(6, 0.05)[3];
    CHECK_THROWS_AS(gap_curve(default_parameters(), edge + 1e-4, Side::Above), DomainError);
    CHECK_NOTHROW(gap_curve(default_parameters(), edge + 0.01, Side::Below));
  }
}

TEST_CASE("exponent fit") {
  GapCurve synthetic;
  for (int i = 0; i < 10; ++i) {
    const double d = std::pow(10.0, -4 + 0.2 * i);
    synthetic.points.push_back({d, 0.5 * (1 + d), 3.0 * std::pow(d, 0.7), 1});
  }
  const auto f = fit_exponent(synthetic);
  CHECK(f.gamma == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(f.log_prefactor == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.points == 10);
  CHECK(f.delta_min == doctest::Approx(1e-4));
  CHECK(f.delta_max == doctest::Approx(std::pow(10.0, -2.2)));

  synthetic.points[0].gap = 0.0;
  synthetic.points[1].gap = 0.0;
  synthetic.points[2].gap = 0.0;
  CHECK_THROWS_AS(fit_exponent(synthetic), InsufficientPointsError);
}

TEST_CASE("square-root exponents at the collinear transitions") {
  for (double theta : {0.1 * pi, 0.9 * pi}) {
    for (Side side : {Side::Below, Side::Above}) {
      const auto f = fit(theta, side);
      CHECK(f.gamma == doctest::Approx(0.5).epsilon(0.1));
      CHECK(std::abs(f.gamma - 0.5) < 0.05);
      CHECK(f.r_squared >= 0.999);
      CHECK(f.points == 16);
    }
    CHECK(std::abs(fit(theta, Side::Below).gamma - fit(theta, Side::Above).gamma) < 0.05);
  }
}

TEST_CASE("chiral exponents in the asymptotic window") {
  for (double theta : {0.49 * pi, 0.51 * pi}) {
    const auto below = fit(theta, Side::Below, 1e-6, 1e-4);
    const auto above = fit(theta, Side::Above, 1e-6, 1e-4);
    CHECK(std::abs(below.gamma - 1.0) < 0.05);
    CHECK(std::abs(above.gamma - 1.5) < 0.05);
    CHECK(below.r_squared >= 0.999);
    CHECK(above.r_squared >= 0.999);
    CHECK(std::abs(above.gamma - below.gamma - 0.5) < 0.1);
  }
}

TEST_CASE("chiral fits drift toward the asymptotic values as the window shrinks") {
  // the chiral gap has a large next-order correction, so [1e-4, 1e-2] is pre-asymptotic
  const double his[] = {1e-2, 1e-3, 1e-4, 1e-5};
  double prev_below = 0.0;
  double prev_above = 0.0;
  for (double hi : his) {
    const auto below = fit(0.49 * pi, Side::Below, hi / 100, hi);
    const auto above = fit(0.49 * pi, Side::Above, hi / 100, hi);
    CHECK(below.gamma > prev_below);
    CHECK(above.gamma > prev_above);
    CHECK(below.gamma < 1.0);
    CHECK(above.gamma < 1.5);
    prev_below = below.gamma;
    prev_above = above.gamma;
  }
  CHECK(std::abs(fit(0.49 * pi, Side::Above).gamma - fit(0.49 * pi, Side::Below).gamma - 0.5) < 0.1);
}

TEST_CASE("halving the fit window barely moves the exponents") {
  for (double theta : {0.1 * pi, 0.9 * pi}) {
    for (Side side : {Side::Below, Side::Above}) {
      CHECK(std::abs(fit(theta, side, 1e-4, 1e-2).gamma - fit(theta, side, 1e-4, 5e-3).gamma) < 0.03);
    }
  }
  for (double theta : {0.49 * pi, 0.51 * pi}) {
    for (Side side : {Side::Below, Side::Above}) {
      CHECK(std::abs(fit(theta, side, 1e-6, 1e-4).gamma - fit(theta, side, 1e-6, 5e-5).gamma) < 0.03);
    }
  }
}

TEST_CASE("the triangle has the same chiral exponents") {
  auto p = default_parameters();
  p.sites = 3;
  REQUIRE(classify_theta(p.with_theta(0.3 * pi)).label.kind == PhaseKind::CSR);
  const auto below = fit_exponent(gap_curve(p, 0.3 * pi, Side::Below, ReducedGrid{1e-6, 1e-4, 16}));
  const auto above = fit_exponent(gap_curve(p, 0.3 * pi, Side::Above, ReducedGrid{1e-6, 1e-4, 16}));
  CHECK(std::abs(below.gamma - fit(0.49 * pi, Side::Below, 1e-6, 1e-4).gamma) < 0.05);
  CHECK(std::abs(above.gamma - fit(0.49 * pi, Side::Above, 1e-6, 1e-4).gamma) < 0.05);
}

TEST_CASE("phase diagram cells") {
  const std::vector<double> thetas{0.9 * pi};
  const std::vector<double> g1s{0.4};
  const auto cells = phase_diagram(default_parameters(), thetas, g1s);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].label.kind == PhaseKind::NP);
  CHECK(cells[0].a4 == 0.0);
  CHECK(cells[0].error.empty());
  CHECK_THROWS_AS(phase_diagram(default_parameters(), std::vector<double>{}, g1s), DomainError);
}

TEST_CASE("the g1 = 0.7 row crosses the four superradiant phases in order") {
  std::vector<double> thetas;
  for (int i = 0; i < 40; ++i) thetas.push_back((0.4025 + 0.005 * i) * pi);
  const std::vector<double> g1s{0.7};
  const auto cells = phase_diagram(default_parameters(), thetas, g1s, {}, 4);
  std::vector<std::string> order;
  for (const auto& c : cells) {
    if (order.empty() || order.back() != c.label.name()) order.push_back(c.label.name());
    const bool chiral = c.label.kind == PhaseKind::CSR;
    CHECK((std::abs(c.b2) > 1e-3) == chiral);
    CHECK((std::abs(c.currents.ring) > 1e-3) == chiral);
  }
  CHECK(order == std::vector<std::string>{"AFSR", "CSR-I", "CSR-II", "FSR"});
  // the first-order switch out of the collinear phases at this coupling
  auto label_at = [&](double t) {
    return phase_diagram(default_parameters(), std::vector<double>{t * pi}, g1s).front().label.name();
  };
  CHECK(label_at(0.46) == "AFSR");
  CHECK(label_at(0.47) == "CSR-I");
  CHECK(label_at(0.53) == "CSR-II");
  CHECK(label_at(0.54) == "FSR");
  // exactly at pi/2 both chiral families and their mixtures are degenerate
  const auto mid = phase_diagram(default_parameters(), std::vector<double>{pi / 2}, g1s).front();
  CHECK(mid.degeneracy > 6);
  CHECK(mid.error.empty());
}

TEST_CASE("labels along a g1 column change at the normal-phase critical coupling") {
  std::vector<double> g1s;
  const double step = 0.005;
  for (int j = 0; j <= 100; ++j) g1s.push_back(0.3 + step * j);
  for (double theta : {0.1 * pi, 0.49 * pi, 0.51 * pi, 0.9 * pi, -0.7 * pi}) {
    const auto cells = phase_diagram(default_parameters(), std::vector<double>{theta}, g1s);
    const double g1c = lowest_critical_coupling(default_parameters().with_theta(theta));
    auto first = std::find_if(cells.begin(), cells.end(), [](const PhaseCell& c) { return c.label.kind != PhaseKind::NP; });
    REQUIRE(first != cells.end());
    CHECK(std::abs(first->g1 - g1c) <= step);
    for (auto it = first; it != cells.end(); ++it) CHECK(it->label.kind != PhaseKind::NP);
  }
}

TEST_CASE("phase diagram output does not depend on the worker count") {
  std::vector<double> thetas;
  std::vector<double> g1s;
  for (int i = 0; i < 9; ++i) thetas.push_back(-pi + 2 * pi * i / 8);
  for (int j = 0; j < 6; ++j) g1s.push_back(0.4 + 0.08 * j);
  SolverStrategy s;
  s.seed = 42;
  const auto serial = phase_diagram(default_parameters(), thetas, g1s, s, 1);
  const auto parallel = phase_diagram(default_parameters(), thetas, g1s, s, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].theta == parallel[i].theta);
    CHECK(serial[i].g1 == parallel[i].g1);
    CHECK(serial[i].label == parallel[i].label);
    CHECK(serial[i].config.a == parallel[i].config.a);
    CHECK(serial[i].config.b == parallel[i].config.b);
  }
  CHECK(serial[1].g1 == g1s[1]);
  CHECK(serial[g1s.size()].theta == thetas[1]);
}
