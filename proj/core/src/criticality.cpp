#include "hofloq/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

#include "hofloq/parallel.hpp"

namespace hofloq {

std::string_view to_string(ScanAxes a) {
  switch (a) {
    case ScanAxes::theta_phi: return "theta_phi";
    case ScanAxes::jx1_phi: return "jx1_phi";
    case ScanAxes::jx0_jx1: return "jx0_jx1";
  }
  return "?";
}

std::array<std::string, 2> axis_names(ScanAxes a) {
  switch (a) {
    case ScanAxes::theta_phi: return {"theta", "phi"};
    case ScanAxes::jx1_phi: return {"jx1", "phi"};
    case ScanAxes::jx0_jx1: return {"jx0", "jx1"};
  }
  return {"a", "b"};
}

double Axis::value(int i) const {
  if (points < 1) throw std::invalid_argument("axis needs at least one point");
  if (points == 1) return min;
  return min + (max - min) * i / (points - 1);
}

ModelParams ScanSpec::params_at(double a, double b) const {
  ModelParams p = base;
  switch (axes) {
    case ScanAxes::theta_phi: {
      const ModelParams q = ModelParams::from_angles(a, b, base.protocol);
      p.jx0 = q.jx0;
      p.jx1 = q.jx1;
      p.jy0 = q.jy0;
      p.jy1 = q.jy1;
      break;
    }
    case ScanAxes::jx1_phi: {
      const ModelParams q = ModelParams::from_angles(0.0, b, base.protocol);
      p.jx1 = a;
      p.jy0 = q.jy0;
      p.jy1 = q.jy1;
      break;
    }
    case ScanAxes::jx0_jx1:
      p.jx0 = a;
      p.jx1 = b;
      break;
  }
  return p;
}

std::vector<std::array<int, 2>> ScanGrid::labels() const {
  std::set<std::array<int, 2>> s;
  for (const auto& pt : points) s.insert(pt.omega);
  return {s.begin(), s.end()};
}

std::vector<int> ScanGrid::regions() const {
  const int na = spec.first.points, nb = spec.second.points;
  std::vector<int> region(points.size(), -1);
  int next = 0;
  for (std::size_t seed = 0; seed < points.size(); ++seed) {
    if (region[seed] >= 0) continue;
    std::queue<std::size_t> q;
    q.push(seed);
    region[seed] = next;
    while (!q.empty()) {
      const std::size_t cur = q.front();
      q.pop();
      const int i = static_cast<int>(cur) / nb, j = static_cast<int>(cur) % nb;
      const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ni = i + di[d], nj = j + dj[d];
        if (ni < 0 || nj < 0 || ni >= na || nj >= nb) continue;
        const std::size_t nidx = static_cast<std::size_t>(ni) * nb + nj;
        if (region[nidx] >= 0 || points[nidx].omega != points[cur].omega) continue;
        region[nidx] = next;
        q.push(nidx);
      }
    }
    ++next;
  }
  return region;
}

std::vector<std::pair<std::size_t, std::size_t>> ScanGrid::boundaries() const {
  const int na = spec.first.points, nb = spec.second.points;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * nb + j;
      if (i + 1 < na && points[idx + nb].omega != points[idx].omega) out.emplace_back(idx, idx + nb);
      if (j + 1 < nb && points[idx + 1].omega != points[idx].omega) out.emplace_back(idx, idx + 1);
    }
  return out;
}

ScanGrid scan_phase_diagram(const ScanSpec& spec) {
  if (spec.first.points < 1 || spec.second.points < 1)
    throw std::invalid_argument("scan axes need at least one point");
  ScanGrid grid;
  grid.spec = spec;
  const int nb = spec.second.points;
  grid.points.resize(static_cast<std::size_t>(spec.first.points) * nb);
  parallel_for(grid.points.size(), [&](std::size_t idx) {
    ScanPoint& pt = grid.points[idx];
    pt.a = spec.first.value(static_cast<int>(idx) / nb);
    pt.b = spec.second.value(static_cast<int>(idx) % nb);
    const ModelParams p = spec.params_at(pt.a, pt.b);
    const InvariantReport r = composite_invariants(p);
    pt.omega = r.omega_pair;
    pt.closing = r.closing_flag;
    if (spec.with_gaps) pt.gaps = r.gap_report;
  });
  return grid;
}

// --- Trajectories ----------------------------------------------------------------

TrajectorySpec TrajectorySpec::default_path(int samples_per_segment) {
  TrajectorySpec t;
  t.waypoints = {{kPi / 2, kPi / 2},         {3 * kPi / 4, kPi / 2},
                 {3 * kPi / 4, 3 * kPi / 2}, {5 * kPi / 4, 3 * kPi / 2},
                 {5 * kPi / 4, kPi / 2},     {3 * kPi / 2, kPi / 2}};
  t.samples_per_segment = samples_per_segment;
  return t;
}

std::vector<std::array<double, 2>> TrajectorySpec::points() const {
  if (waypoints.empty()) throw std::invalid_argument("trajectory needs waypoints");
  if (samples_per_segment < 1) throw std::invalid_argument("samples_per_segment must be >= 1");
  std::vector<std::array<double, 2>> out;
  for (std::size_t s = 0; s + 1 < waypoints.size(); ++s)
    for (int i = 0; i < samples_per_segment; ++i) {
      const double f = static_cast<double>(i) / samples_per_segment;
      out.push_back({waypoints[s][0] + f * (waypoints[s + 1][0] - waypoints[s][0]),
                     waypoints[s][1] + f * (waypoints[s + 1][1] - waypoints[s][1])});
    }
  out.push_back(waypoints.back());
  return out;
}

QuasienergySpectrum clean_spectrum(const ModelParams& p, const Lattice2D& lattice) {
  if (lattice.bc_x != lattice.bc_y) return mixed_bc_spectrum(p, lattice);
  if (p.protocol == Protocol::static_model) return eig_hermitian(static_2d(lattice, p));
  return eig_unitary(kicked_2d(lattice, p));
}

std::vector<TrajectoryPoint> trajectory_spectra(const TrajectorySpec& t,
                                                const std::vector<BoundaryCombo>& combos,
                                                int lx, int ly, Protocol protocol) {
  const auto pts = t.points();
  std::vector<TrajectoryPoint> out(pts.size() * combos.size());
  parallel_for(out.size(), [&](std::size_t idx) {
    const auto& pt = pts[idx / combos.size()];
    const BoundaryCombo bc = combos[idx % combos.size()];
    TrajectoryPoint& r = out[idx];
    r.theta = pt[0];
    r.phi = pt[1];
    r.bc = bc;
    const ModelParams p = ModelParams::from_angles(pt[0], pt[1], protocol);
    r.spectrum = clean_spectrum(p, {lx, ly, bc.x, bc.y});
    r.max_ipr = *std::max_element(r.spectrum.iprs.begin(), r.spectrum.iprs.end());
    // States extended along one direction have IPR <= 1/L; only corner-localized ones count.
    const double ipr_min = std::max(default_ipr_min(r.spectrum), 2.0 / std::min(lx, ly));
    r.n0 = count_modes(r.spectrum, 0.0, 1e-6, ipr_min);
    r.npi = count_modes(r.spectrum, kPi, 1e-6, ipr_min);
    r.gaps = gaps(r.spectrum);
  });
  return out;
}

// --- Bulk-corner correspondence ------------------------------------------------------

double edge_tail_bound(const ModelParams& p, int length, double target, double eps_tol) {
  const QuasienergySpectrum s = eig_unitary(floquet_x_realspace(length, Boundary::open, p));
  double worst = 0.0;
  for (std::size_t i : select_modes(s, target, eps_tol, -1.0)) {
    const Vec v = s.vector(i);
    double peak = 0.0;
    for (int m = 0; m < length; ++m)
      peak = std::max(peak, std::norm(v(2 * m)) + std::norm(v(2 * m + 1)));
    const int c = length / 2;
    const double centre = std::norm(v(2 * c)) + std::norm(v(2 * c + 1));
    worst = std::max(worst, centre / peak);
  }
  return worst;
}

double corner_fraction(const Vec& v, const Basis& basis) {
  if (!basis.is_product()) throw std::invalid_argument("corner_fraction needs a 2D basis");
  const int bx = (basis.cells_x() + 3) / 4, by = (basis.cells_y() + 3) / 4;
  double in = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const BasisLabel l = basis.label(i);
    const bool near_x = l.x.cell <= bx || l.x.cell > basis.cells_x() - bx;
    const bool near_y = l.y->cell <= by || l.y->cell > basis.cells_y() - by;
    if (near_x && near_y) in += std::norm(v(static_cast<Eigen::Index>(i)));
  }
  return in / v.squaredNorm();
}

std::vector<ModelParams> table_sample_points() {
  const std::array<std::array<double, 2>, 9> angles{{{kPi / 2, kPi},
                                                     {kPi, kPi},
                                                     {3 * kPi / 2, kPi},
                                                     {0.0, kPi},
                                                     {3 * kPi / 4, kPi},
                                                     {5 * kPi / 4, kPi},
                                                     {kPi, kPi / 4},
                                                     {kPi / 2, 0.9 * kPi},
                                                     {7 * kPi / 8, 1.2 * kPi}}};
  std::vector<ModelParams> out;
  for (const auto& a : angles) out.push_back(ModelParams::from_angles(a[0], a[1]));
  return out;
}

std::vector<BccVerdict> verify_bcc(const std::vector<ModelParams>& points, int lx, int ly,
                                   const CountTolerances& tol) {
  std::vector<BccVerdict> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const ModelParams& p = points[i];
    BccVerdict& v = out[i];
    v.params = p;
    const InvariantReport r = composite_invariants(p);
    v.omega = r.omega_pair;
    v.predicted = r.predicted_n;
    v.closing = r.closing_flag;
    const QuasienergySpectrum s = clean_spectrum(p, {lx, ly, Boundary::open, Boundary::open});
    const double ipr_min = tol.ipr_min.value_or(default_ipr_min(s));
    v.observed = {count_modes(s, 0.0, tol.eps_tol, ipr_min),
                  s.kind == OperatorKind::floquet ? count_modes(s, kPi, tol.eps_tol, ipr_min) : 0};
    if (p.protocol != Protocol::static_model) {
      double tail = 0.0;
      if (v.predicted[0] > 0) tail = std::max(tail, edge_tail_bound(p, lx, 0.0));
      if (v.predicted[1] > 0) tail = std::max(tail, edge_tail_bound(p, lx, kPi));
      v.edge_tail = tail;
    }
    v.pass = v.predicted == v.observed;
  });
  return out;
}

// --- Robustness ----------------------------------------------------------------------

RobustnessStats robustness_experiment(const RobustnessSpec& spec) {
  if (spec.realizations < 1) throw std::invalid_argument("need at least one realization");
  if (spec.deltas && spec.lambda != 0.0)
    throw std::invalid_argument("choose either a deterministic perturbation or disorder");
  RobustnessStats stats;
  stats.expected = composite_invariants(spec.base).predicted_n;
  stats.realizations.resize(spec.realizations);
  parallel_for(stats.realizations.size(), [&](std::size_t r) {
    RealizationResult& out = stats.realizations[r];
    out.seed = spec.seed + r;
    const LatticeOperator u =
        spec.deltas ? perturbed_floquet_2d(spec.base, *spec.deltas, spec.lattice)
                    : disordered_floquet_2d(spec.base, spec.lambda, out.seed, spec.lattice);
    const QuasienergySpectrum s = eig_unitary(u);
    out.ipr_min = default_ipr_min(s);
    out.median_ipr = out.ipr_min / 10.0;
    const auto zero = select_modes(s, 0.0, spec.eps_tol, out.ipr_min);
    const auto pi = select_modes(s, kPi, spec.eps_tol, out.ipr_min);
    out.n0 = static_cast<int>(zero.size());
    out.npi = static_cast<int>(pi.size());
    std::vector<std::size_t> modes = zero;
    modes.insert(modes.end(), pi.begin(), pi.end());
    for (std::size_t i : modes) {
      const Vec v = s.vector(i);
      out.mode_phases.push_back(s.phases[i]);
      out.max_mode_ipr = std::max(out.max_mode_ipr, s.iprs[i]);
      out.min_corner_fraction = std::min(out.min_corner_fraction, corner_fraction(v, u.basis()));
    }
    if (!modes.empty()) {
      Eigen::Index peak;
      s.vector(modes.front()).cwiseAbs2().maxCoeff(&peak);
      out.peak_site = u.basis().label(static_cast<std::size_t>(peak));
    }
  });
  // Retention is judged at the quasienergies that carry predicted corner modes;
  // with none predicted, both counts must vanish.
  const bool none = stats.expected[0] == 0 && stats.expected[1] == 0;
  int kept = 0;
  for (const auto& r : stats.realizations) {
    const bool zero_ok = r.n0 == stats.expected[0] || (!none && stats.expected[0] == 0);
    const bool pi_ok = r.npi == stats.expected[1] || (!none && stats.expected[1] == 0);
    if (zero_ok && pi_ok) ++kept;
  }
  stats.retained_fraction = static_cast<double>(kept) / spec.realizations;
  return stats;
}

}  // namespace hofloq
