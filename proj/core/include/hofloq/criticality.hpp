#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hofloq/invariants.hpp"
#include "hofloq/model.hpp"
#include "hofloq/spectral.hpp"

namespace hofloq {

// --- Phase-diagram scans ----------------------------------------------------------

/// theta_phi: (theta, phi) angles; jx1_phi: J_x1 with (J_y0, J_y1) from phi;
/// jx0_jx1: (J_x0, J_x1) with the SSH couplings of the base point.
enum class ScanAxes { theta_phi, jx1_phi, jx0_jx1 };

std::string_view to_string(ScanAxes a);
std::array<std::string, 2> axis_names(ScanAxes a);

struct Axis {
  double min = 0.0;
  double max = 0.0;
  int points = 2;  // endpoints included
  double value(int i) const;
};

struct ScanSpec {
  ScanAxes axes = ScanAxes::theta_phi;
  Axis first;
  Axis second;
  ModelParams base;  // protocol and couplings not set by the axes
  bool with_gaps = true;

  ModelParams params_at(double a, double b) const;
};

struct ScanPoint {
  double a = 0.0;
  double b = 0.0;
  std::array<int, 2> omega{0, 0};
  ClosingFlag closing = ClosingFlag::gapped;
  std::optional<GapReport> gaps;
};

struct ScanGrid {
  ScanSpec spec;
  std::vector<ScanPoint> points;  // first axis outer

  const ScanPoint& at(int i, int j) const { return points[i * spec.second.points + j]; }
  /// Distinct omega tuples, sorted.
  std::vector<std::array<int, 2>> labels() const;
  /// Connected components (4-neighbourhood) of equal omega tuples, per point.
  std::vector<int> regions() const;
  /// Adjacent point pairs (flattened indices) whose labels differ.
  std::vector<std::pair<std::size_t, std::size_t>> boundaries() const;
};

/// Composite invariants on every grid point (parallel, deterministic order).
ScanGrid scan_phase_diagram(const ScanSpec& spec);

// --- Trajectories ----------------------------------------------------------------------

struct TrajectorySpec {
  std::vector<std::array<double, 2>> waypoints;  // (theta, phi)
  int samples_per_segment = 10;

  /// (pi/2, pi/2) -> (3pi/4, pi/2) -> (3pi/4, 3pi/2) -> (5pi/4, 3pi/2) -> (5pi/4, pi/2) -> (3pi/2, pi/2).
  static TrajectorySpec default_path(int samples_per_segment = 10);
  /// Sample points: each segment start plus interior samples, and the final waypoint.
  std::vector<std::array<double, 2>> points() const;
};

struct BoundaryCombo {
  Boundary x = Boundary::open;
  Boundary y = Boundary::open;
};

struct TrajectoryPoint {
  double theta = 0.0;
  double phi = 0.0;
  BoundaryCombo bc;
  QuasienergySpectrum spectrum;  // vectors kept only for open/open
  double max_ipr = 0.0;
  int n0 = 0;
  int npi = 0;
  GapReport gaps;
};

/// Spectrum of the kicked model (protocol 1) at every trajectory sample for
/// each boundary combination; counts use eps_tol 1e-6 and an IPR threshold of
/// max(default_ipr_min, 2 / min(lx, ly)), which excludes states extended along
/// one direction.
std::vector<TrajectoryPoint> trajectory_spectra(const TrajectorySpec& t,
                                                const std::vector<BoundaryCombo>& combos,
                                                int lx, int ly,
                                                Protocol protocol = Protocol::kicked_v1);

/// Spectrum of the clean 2D model for the given boundaries: factorized for
/// open/open and periodic/periodic, block-diagonal for mixed boundaries.
QuasienergySpectrum clean_spectrum(const ModelParams& p, const Lattice2D& lattice);

// --- Bulk-corner correspondence ------------------------------------------------------

struct CountTolerances {
  double eps_tol = 1e-8;
  std::optional<double> ipr_min;  // default: 10x the median IPR
};

struct BccVerdict {
  ModelParams params;
  std::array<int, 2> omega{0, 0};
  std::array<int, 2> predicted{0, 0};
  std::array<int, 2> observed{0, 0};
  ClosingFlag closing = ClosingFlag::gapped;
  std::optional<double> edge_tail;  // |decay|^L bound measured on the ladder end modes
  bool pass = false;
};

/// Nine (theta, phi) points of the first protocol covering every row of the
/// invariant table, gapped points and both critical lines included.
std::vector<ModelParams> table_sample_points();

/// 4 (omega_0, omega_pi) against counted corner modes on the clean open lattice.
std::vector<BccVerdict> verify_bcc(const std::vector<ModelParams>& points, int lx, int ly,
                                   const CountTolerances& tol = {});

/// Largest |decay|^L estimate over the ladder end modes at `target`:
/// (probability at the central cell / peak cell probability) of each mode.
double edge_tail_bound(const ModelParams& p, int length, double target, double eps_tol = 1e-6);

/// Fraction of probability in the union of the four corner boxes of
/// ceil(L/4) x ceil(L/4) cells.
double corner_fraction(const Vec& v, const Basis& basis);

// --- Robustness --------------------------------------------------------------------

struct RobustnessSpec {
  ModelParams base;
  std::optional<Perturbation> deltas;  // deterministic perturbation, or
  double lambda = 0.0;                 // hopping disorder strength
  int realizations = 1;
  std::uint64_t seed = 1;
  Lattice2D lattice{20, 20, Boundary::open, Boundary::open};
  double eps_tol = 1e-2;
};

struct RealizationResult {
  std::uint64_t seed = 0;
  int n0 = 0;
  int npi = 0;
  double ipr_min = 0.0;
  double median_ipr = 0.0;
  double max_mode_ipr = 0.0;
  double min_corner_fraction = 1.0;  // over the counted modes
  BasisLabel peak_site;              // most probable site of the first counted mode
  std::vector<double> mode_phases;
};

struct RobustnessStats {
  std::vector<RealizationResult> realizations;
  std::array<int, 2> expected{0, 0};
  double retained_fraction = 0.0;  // realizations whose counts equal `expected` at the predicted targets
};

/// Dense two-step operator per realization (seed + r for realization r).
RobustnessStats robustness_experiment(const RobustnessSpec& spec);

}  // namespace hofloq
