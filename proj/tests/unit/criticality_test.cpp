#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "hofloq/analytic_modes.hpp"
#include "hofloq/criticality.hpp"
#include "hofloq/invariants.hpp"
#include "test_support.hpp"

using namespace hofloq;

namespace {

double nearest(double x, std::initializer_list<double> marks) {
  double best = INFINITY;
  for (double m : marks) best = std::min(best, std::abs(x - m));
  return best;
}

ScanSpec theta_phi_spec(int n) {
  ScanSpec s;
  s.axes = ScanAxes::theta_phi;
  s.first = {0.0, kTwoPi, n};
  s.second = {0.0, kTwoPi, n};
  s.with_gaps = false;
  return s;
}

}  // namespace

TEST_CASE("axes and parameter mapping") {
  const Axis a{0.0, 1.0, 5};
  CHECK(a.value(0) == 0.0);
  CHECK(a.value(4) == 1.0);
  CHECK(a.value(2) == doctest::Approx(0.5));
  CHECK(axis_names(ScanAxes::jx1_phi)[0] == "jx1");
  ScanSpec s;
  s.axes = ScanAxes::jx1_phi;
  s.base = {kPi / 2, 0, 0, 0, kPi / 2, Protocol::kicked_v2};
  const auto p = s.params_at(2.0, kPi);
  CHECK(p.jx1 == 2.0);
  CHECK(p.jx0 == kPi / 2);
  CHECK(p.jx1p == kPi / 2);
  CHECK(p.jy1 == doctest::Approx(0.75 * kPi));
  s.axes = ScanAxes::jx0_jx1;
  CHECK(s.params_at(0.3, 0.4).jx0 == 0.3);
}

TEST_CASE("first-protocol phase diagram: four regions, boundaries on the analytic loci") {
  const int n = 61;
  const auto grid = scan_phase_diagram(theta_phi_spec(n));
  const std::vector<std::array<int, 2>> expect{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(grid.labels() == expect);
  const double h = kTwoPi / (n - 1);
  for (const auto& [i, j] : grid.boundaries()) {
    const auto& a = grid.points[i];
    const auto& b = grid.points[j];
    if (a.a != b.a) {
      CHECK(nearest(0.5 * (a.a + b.a), {kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4}) <= h);
    } else {
      CHECK(nearest(0.5 * (a.b + b.b), {kPi / 2, 3 * kPi / 2}) <= h);
    }
  }
  // reproducible point by point
  const auto again = scan_phase_diagram(theta_phi_spec(n));
  for (std::size_t k = 0; k < grid.points.size(); ++k) CHECK(grid.points[k].omega == again.points[k].omega);
  const auto regions = grid.regions();
  CHECK(*std::max_element(regions.begin(), regions.end()) >= 3);
}

TEST_CASE("second-protocol phase diagram") {
  ScanSpec s;
  s.axes = ScanAxes::jx1_phi;
  s.first = {0.05, 3 * kPi - 0.05, 60};
  s.second = {0.0, kTwoPi, 9};
  s.base = {kPi / 2, 0, 0, 0, kPi / 2, Protocol::kicked_v2};
  s.with_gaps = false;
  const auto grid = scan_phase_diagram(s);
  const std::vector<std::array<int, 2>> expect{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  CHECK(grid.labels() == expect);
}

TEST_CASE("static phase diagram") {
  ScanSpec s;
  s.axes = ScanAxes::jx0_jx1;
  s.first = {0.05, 2.0, 30};
  s.second = {0.07, 2.0, 30};
  s.base = {0, 0, 0.5, 1.0, 0, Protocol::static_model};
  s.with_gaps = true;
  const auto grid = scan_phase_diagram(s);
  const std::vector<std::array<int, 2>> expect{{0, 0}, {1, 0}};
  CHECK(grid.labels() == expect);
  for (const auto& [i, j] : grid.boundaries()) {
    const auto& a = grid.points[i];
    const auto& b = grid.points[j];
    CHECK((a.a - a.b) * (b.a - b.b) <= 0.0);  // the pair straddles |J_x1| = |J_x0|
    REQUIRE(a.gaps.has_value());
  }
  s.base.jy0 = 1.0;
  s.base.jy1 = 0.5;
  CHECK(scan_phase_diagram(s).labels() == std::vector<std::array<int, 2>>{{0, 0}});
}

TEST_CASE("sandwich rule for critical invariants") {
  // x-sector critical lines J_x0 +/- J_x1 = nu pi, probed 1e-3 off-line on both sides
  int checked = 0;
  for (int nu = 0; nu <= 2; ++nu)
    for (int sign : {+1, -1})
      for (int s = 1; s < 24; ++s) {
        const double jx0 = kTwoPi * s / 24 + 0.021;
        const double jx1 = sign * (nu * kPi - jx0);
        if (jx1 <= 0.01 || jx1 >= kTwoPi - 0.01) continue;
        const ModelParams p{jx0, jx1, 0.25 * kPi, 0.75 * kPi, 0, Protocol::kicked_v1};
        if (gap_closing_locus(p).size() != 1) continue;
        auto shifted = [&](double d) {
          ModelParams q = p;
          q.jx1 += d;
          return kicked_invariants(q).omega_pair;
        };
        const auto lo = shifted(-1e-3), hi = shifted(1e-3);
        const auto crit = kicked_invariants(p).omega_pair;
        const std::array<int, 2> trivial{0, 0};
        if (crit != trivial) {
          CHECK(lo != trivial);
          CHECK(hi != trivial);
          CHECK(lo != hi);
        }
        if (lo == trivial || hi == trivial) CHECK(crit == trivial);
        ++checked;
      }
  CHECK(checked > 50);
}

TEST_CASE("trajectory along the critical lines") {
  const auto t = TrajectorySpec::default_path(4);
  REQUIRE(t.waypoints.size() == 6);
  CHECK(t.waypoints[0] == std::array<double, 2>{kPi / 2, kPi / 2});
  CHECK(t.waypoints[2] == std::array<double, 2>{3 * kPi / 4, 3 * kPi / 2});
  CHECK(t.waypoints[5] == std::array<double, 2>{3 * kPi / 2, kPi / 2});
  const auto pts = t.points();
  CHECK(pts.size() == 21);

  const std::vector<BoundaryCombo> combos{{Boundary::periodic, Boundary::periodic},
                                          {Boundary::periodic, Boundary::open},
                                          {Boundary::open, Boundary::periodic},
                                          {Boundary::open, Boundary::open}};
  const auto res = trajectory_spectra(t, combos, 40, 40);
  REQUIRE(res.size() == pts.size() * combos.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double theta = pts[i][0], phi = pts[i][1];
    const bool on_zero_segment = std::abs(theta - 0.75 * kPi) < 1e-12 && std::abs(std::cos(phi)) > 0.1;
    const bool on_pi_segment = std::abs(theta - 1.25 * kPi) < 1e-12 && std::abs(std::cos(phi)) > 0.1 &&
                               std::cos(phi) < 0;
    const bool on_zero_localized = on_zero_segment && std::cos(phi) < 0;
    for (std::size_t c = 0; c < combos.size(); ++c) {
      const auto& r = res[i * combos.size() + c];
      CHECK(r.theta == pts[i][0]);
      if (c == 0) CHECK(std::min(r.gaps.gap0, r.gaps.gap_pi) < 0.05);
      if (c == 1 || c == 2) {
        CHECK(r.max_ipr < 2.0 / 40);
        CHECK(r.n0 == 0);
        CHECK(r.npi == 0);
      }
      if (c == 3) {
        CHECK(r.n0 == (on_zero_localized ? 4 : 0));
        CHECK(r.npi == (on_pi_segment ? 4 : 0));
      }
    }
  }
}

TEST_CASE("bulk-corner verdicts on the sample points") {
  const auto points = table_sample_points();
  REQUIRE(points.size() == 9);
  std::set<std::array<int, 2>> rows;
  const auto verdicts = verify_bcc(points, 40, 40);
  for (const auto& v : verdicts) {
    CHECK(v.pass);
    CHECK(v.predicted == v.observed);
    rows.insert(v.omega);
    REQUIRE(v.edge_tail.has_value());
  }
  CHECK(rows.size() == 4);
  CHECK(verdicts[4].predicted == std::array{4, 0});
  CHECK(verdicts[4].observed == std::array{4, 0});
  CHECK(verdicts[5].observed == std::array{0, 4});
}

TEST_CASE("second-protocol multi-mode criticality") {
  const auto crit = v2_critical_jx1(kPi / 2, kPi / 2, 3 * kPi);
  REQUIRE(crit.size() == 3);
  auto at = [&](int i) {
    return ModelParams{kPi / 2, crit[i].jx1, 0.25 * kPi, 0.75 * kPi, kPi / 2, Protocol::kicked_v2};
  };
  const auto v60 = verify_bcc({at(1), at(2)}, 60, 60);
  CHECK(v60[0].predicted == std::array{4, 4});
  CHECK(v60[0].observed == std::array{4, 4});
  CHECK(v60[0].pass);
  REQUIRE(v60[0].edge_tail.has_value());
  CHECK(*v60[0].edge_tail < 1e-8);
  // The 8 + 8 point has an end-mode decay factor near 0.8: at 60 cells the
  // ends still hybridize above the 1e-8 counting tolerance.
  CHECK(v60[1].predicted == std::array{8, 8});
  REQUIRE(v60[1].edge_tail.has_value());
  CHECK(*v60[1].edge_tail > 1e-8);
  CHECK_FALSE(v60[1].pass);

  const auto v80 = verify_bcc({at(2)}, 80, 80);
  CHECK(v80[0].observed == std::array{8, 8});
  CHECK(v80[0].pass);
  CHECK(*v80[0].edge_tail < 1e-8);
}

TEST_CASE("corner support of clean corner modes") {
  for (double theta : {0.75 * kPi, 1.25 * kPi}) {
    const auto spec = eig_unitary(kicked_2d({40, 40, Boundary::open, Boundary::open},
                                            ModelParams::from_angles(theta, kPi)));
    const Basis b = Basis::product(Basis::chain(Chain::creutz, 40), Basis::chain(Chain::ssh, 40));
    const double target = theta < kPi ? 0.0 : kPi;
    const auto states = select_modes(spec, target, 1e-8, default_ipr_min(spec));
    REQUIRE(states.size() == 4);
    for (std::size_t s : states) CHECK(corner_fraction(spec.vector(s), b) >= 0.9);
  }
  const Basis b = Basis::product(Basis::chain(Chain::creutz, 8), Basis::chain(Chain::ssh, 8));
  Vec corner = Vec::Zero(b.size());
  corner(0) = 1.0;
  CHECK(corner_fraction(corner, b) == 1.0);
  const Vec flat = Vec::Constant(b.size(), 1.0 / std::sqrt(double(b.size())));
  CHECK(corner_fraction(flat, b) == doctest::Approx(16.0 / 64.0));
  CHECK_THROWS_AS(corner_fraction(corner, Basis::chain(Chain::ssh, 8)), std::invalid_argument);
}

TEST_CASE("robustness at reduced size") {
  RobustnessSpec spec;
  spec.base = ModelParams::from_angles(0.75 * kPi, kPi);
  spec.lattice = {16, 16, Boundary::open, Boundary::open};

  SUBCASE("no disorder reproduces the clean counts") {
    spec.lambda = 0.0;
    const auto st = robustness_experiment(spec);
    const auto clean = eig_unitary(kicked_2d(spec.lattice, spec.base));
    REQUIRE(st.realizations.size() == 1);
    CHECK(st.realizations[0].n0 == count_modes(clean, 0.0, 1e-2, default_ipr_min(clean)));
    CHECK(st.realizations[0].npi == count_modes(clean, kPi, 1e-2, default_ipr_min(clean)));
    CHECK(st.expected == std::array{4, 0});
    CHECK(st.retained_fraction == 1.0);
  }
  SUBCASE("deterministic perturbation") {
    spec.deltas = Perturbation{0.1, 0.1, 0.2, 0.2};
    const auto st = robustness_experiment(spec);
    CHECK(st.retained_fraction == 1.0);
    CHECK(st.realizations[0].min_corner_fraction > 0.5);
  }
  SUBCASE("seeded disorder") {
    spec.lambda = 0.2;
    spec.realizations = 3;
    spec.seed = 40;
    const auto st = robustness_experiment(spec);
    REQUIRE(st.realizations.size() == 3);
    int kept = 0;
    for (const auto& r : st.realizations) kept += r.n0 == 4;
    CHECK(st.retained_fraction == doctest::Approx(kept / 3.0));
    CHECK(st.realizations[0].seed == 40);
    CHECK(st.realizations[2].seed == 42);
    CHECK(st.realizations[0].mode_phases != st.realizations[1].mode_phases);
    const auto again = robustness_experiment(spec);
    CHECK(again.realizations[1].mode_phases == st.realizations[1].mode_phases);
  }
}
