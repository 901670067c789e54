#pragma once

#include <array>
#include <vector>

#include "hofloq/model.hpp"
#include "hofloq/spectral.hpp"

namespace hofloq {

/// L/R: left/right end of the ladder (x); B/T: bottom/top end of the SSH
/// chain (y); two letters: corners.
enum class Side { L, R, B, T, LB, LT, RB, RT };

std::string_view to_string(Side s);

struct AnalyticMode {
  Side side = Side::L;
  double target = 0.0;  // quasienergy (or energy) 0 or pi
  double decay_x = 0.0;  // amplitude ratio per unit cell, 0 where not applicable
  double decay_y = 0.0;
  std::array<cplx, 2> amplitudes_x{};  // sublattice spinor of the x factor
  std::array<cplx, 2> amplitudes_y{};
  bool normalizable = false;
  Vec vector;  // unit norm, in the chain or product basis
  Basis basis = Basis::chain(Chain::creutz, 1);
};

/// Zero-energy end modes of the static chains:
/// ladder L: (-J_x0/J_x1)^(m-1) (u - i v)/sqrt2, R: (-J_x0/J_x1)^(M-m) (u + i v)/sqrt2;
/// SSH B: (-J_y0/J_y1)^(n-1) on a, T: (-J_y0/J_y1)^(N-n) on b.
AnalyticMode static_edge_mode(Chain chain, Side side, const ModelParams& p, int length);

/// Zero / pi end modes of the first kicked ladder, with
/// rho = (cos(J_x0/2) - sin(J_x0/2))/sqrt2, lambda = (cos(J_x0/2) + sin(J_x0/2))/sqrt2,
/// zero-mode ratio -tan(J_x0/2)/tan(J_x1/2), pi-mode ratio 1/(tan(J_x0/2) tan(J_x1/2)).
AnalyticMode kicked_edge_mode(Side side, double target, const ModelParams& p, int length);

/// Product of the ladder end mode (static, or kicked at `target`) with the SSH
/// zero mode.
AnalyticMode corner_mode(Side corner, double target, const ModelParams& p, int lx, int ly);

/// The four corner modes in the order LB, LT, RB, RT, Gram-Schmidt
/// orthonormalized in that order.
std::vector<AnalyticMode> corner_modes(double target, const ModelParams& p, int lx, int ly);

/// Minimum singular value of A^+ N, with A the orthonormalized analytic set
/// and N the numeric eigenvectors within eps_tol of target.
double subspace_overlap(const std::vector<Vec>& analytic, const QuasienergySpectrum& numeric,
                        double target, double eps_tol);

}  // namespace hofloq
