#pragma once

#include <memory>
#include <vector>

#include "hofloq/model.hpp"

namespace hofloq {

/// Eigenphases (Floquet, folded to [-pi, pi)) or energies (Hamiltonian) with
/// IPRs. Eigenvectors are stored densely, kept as factor pairs for
/// Kronecker-structured operators, or absent for mixed-boundary spectra.
class QuasienergySpectrum {
 public:
  std::vector<double> phases;
  std::vector<double> iprs;
  OperatorKind kind = OperatorKind::floquet;

  std::size_t size() const { return phases.size(); }
  bool has_vectors() const;
  /// Normalized eigenvector of state i in the operator's basis.
  Vec vector(std::size_t i) const;
  /// Columns for the given states.
  Mat vectors(const std::vector<std::size_t>& states) const;

  static QuasienergySpectrum dense(std::vector<double> phases, Mat vectors, OperatorKind kind);
  static QuasienergySpectrum product(const QuasienergySpectrum& x, const QuasienergySpectrum& y);
  static QuasienergySpectrum values_only(std::vector<double> phases, std::vector<double> iprs,
                                         OperatorKind kind);

 private:
  struct Factors;
  std::shared_ptr<const Mat> dense_;
  std::shared_ptr<const Factors> factors_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

struct GapReport {
  double gap0 = 0.0;
  double gap_pi = 0.0;
};

/// Full decomposition U v = e^{-i eps} v. Hermitian part first, then each
/// cluster of nearly equal cos(eps) is split with the anti-Hermitian part.
/// Factorized operators are decomposed factor by factor.
QuasienergySpectrum eig_unitary(const LatticeOperator& u);
QuasienergySpectrum eig_unitary(const Mat& u);

/// Energies and eigenvectors of a Hermitian lattice operator (factorized
/// Hamiltonians combine factor energies by addition).
QuasienergySpectrum eig_hermitian(const LatticeOperator& h);

/// sum |psi_s|^4; throws if the vector is not normalized to 1e-8.
double ipr(const Vec& v);

/// max over states of |U v - e^{-i eps} v|_2 (or |H v - E v|_2).
double eigen_residual(const Mat& op, const QuasienergySpectrum& spec);

/// Circle-metric distances to 0 and pi (plain distances for energies, where
/// gap_pi is not meaningful and reported as +inf).
GapReport gaps(const QuasienergySpectrum& spec);

/// Default IPR threshold: 10x the median IPR of the spectrum.
double default_ipr_min(const QuasienergySpectrum& spec);

/// States with distance(eps, target) < eps_tol and ipr > ipr_min.
std::vector<std::size_t> select_modes(const QuasienergySpectrum& spec, double target,
                                      double eps_tol, double ipr_min);
int count_modes(const QuasienergySpectrum& spec, double target, double eps_tol, double ipr_min);

/// One direction periodic, one open: block-diagonalizes over the periodic
/// k-grid 2 pi j / L. IPRs are those of the full lattice state (1/L_periodic
/// times the IPR of the Bloch spinor (x) open-direction eigenvector).
QuasienergySpectrum mixed_bc_spectrum(const ModelParams& p, const Lattice2D& lattice,
                                      Frame frame = Frame::raw);

}  // namespace hofloq
