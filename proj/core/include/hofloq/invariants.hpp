#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hofloq/model.hpp"
#include "hofloq/spectral.hpp"

namespace hofloq {

enum class Provenance { cl_static, ssh_static, kicked_f1x, kicked_f2x, numeric_fft };
enum class ClosingFlag { gapped, zero_closing, pi_closing, both_closing };

std::string_view to_string(Provenance p);
std::string_view to_string(ClosingFlag c);

/// f(z) = P(z) / z^pole_order with ascending numerator coefficients.
struct MappingFunction {
  std::vector<cplx> numerator;
  int pole_order = 0;
  Provenance provenance = Provenance::cl_static;

  cplx operator()(cplx z) const;
};

struct Winding {
  double value = 0.0;
  bool resolved = true;  // false if a single phase increment exceeded pi/2
};

/// (1/2pi) times the sum of principal-branch phase increments of g sampled on
/// a uniform grid around the Brillouin zone (wrapping from the last sample back
/// to the first). Needs at least 64 samples.
Winding winding_integral(std::span<const cplx> samples);

/// Winding of d_x + i d_z (ladder) or d_x + i d_y (SSH) of the Bloch
/// Hamiltonian or of the given Floquet frame, on `grid` points.
Winding sector_winding(Chain chain, const ModelParams& p, Frame frame, int grid = 4096);

/// Ladder sector: J_x0 + J_x1 z (static), the closed forms f_1x (sym1) and
/// f_2x (sym2, cubic over z^2) for the first kicked protocol, or numeric
/// Laurent coefficients for the second. SSH sector: J_y0 + J_y1 z.
MappingFunction build_mapping(Chain chain, const ModelParams& p, Frame frame = Frame::sym1);

/// Laurent coefficients of d_x + i d_z of the given frame by FFT on 2^m
/// points (m from 10 upwards), truncated below 1e-12.
MappingFunction numeric_mapping(const ModelParams& p, Frame frame);

/// N_z - N_p, or N_z - N_p / 2 at pi (or both) closings. Zeros count if
/// |z| < 1 - 1e-7; roots in the annulus ||z| - 1| < 1e-7 are on-circle.
int zero_pole_invariant(const MappingFunction& f, ClosingFlag closing);

struct GapClosing {
  int mu = 0;    // J_x0 +/- J_x1 = mu pi (first protocol); ellipse centre index (second)
  int nu = 0;    // sign (+1 / -1) for the first protocol; second ellipse index
  ClosingFlag gap = ClosingFlag::zero_closing;
};

/// Gap-closing conditions satisfied by p (analytic, tolerance 1e-9 in units
/// of pi). Second protocol: integer (mu, nu) in [-window, window]^2 on the
/// ellipse (mu pi - J_x0)^2 / J_x1^2 + nu^2 pi^2 / J'_x1^2 = 1.
std::vector<GapClosing> gap_closing_locus(const ModelParams& p, int window = 8);

/// Critical J_x1 > 0 (up to jx1_max) of the second protocol at fixed J_x0 and
/// J'_x1, with the gaps closing there.
struct CriticalValue {
  double jx1 = 0.0;
  ClosingFlag gap = ClosingFlag::zero_closing;
};
std::vector<CriticalValue> v2_critical_jx1(double jx0, double jx1p, double jx1_max, int window = 8);

ClosingFlag combine(ClosingFlag a, ClosingFlag b);

/// Closing flag of the 1D sector: analytic for static models and the first
/// protocol, numeric minimum gap below 1e-6 on 4096 k-points for the second.
ClosingFlag sector_closing(Chain chain, const ModelParams& p);

/// Numeric band gaps of the ladder sector over a k grid.
GapReport bloch_gaps(const ModelParams& p, int grid = 4096);

/// Appendix-style table in the half-angle polynomial form (no tan poles).
std::array<int, 2> closed_form_kicked_table(const ModelParams& p);

struct InvariantReport {
  ModelParams params;
  std::array<double, 2> w_pair{0.0, 0.0};  // NaN where undefined (critical)
  std::array<int, 2> omega_pair{0, 0};
  std::array<int, 2> frame_omegas{0, 0};   // (omega_1x, omega_2x) or (omega_x, omega_y)
  std::optional<int> omega_y;
  GapReport gap_report;
  ClosingFlag closing_flag = ClosingFlag::gapped;
  std::string method;  // "zero_pole", "limiting_rule"
  std::array<int, 2> predicted_n{0, 0};
  std::vector<std::string> notes;
};

/// Ladder-sector (omega_0x, omega_pix) = ((w1 + w2) / 2, (w1 - w2) / 2). For
/// the first protocol the closed-form table is checked against zero/pole
/// counting (ConsistencyError on mismatch, compared in magnitude). For the
/// second protocol critical points use the limiting rule.
InvariantReport kicked_invariants(const ModelParams& p);

/// Critical invariants from gapped neighbours at jx1 +/- offset: the closing
/// gap takes the smaller magnitude, the other gap the shared value.
std::array<int, 2> limiting_rule(const ModelParams& p, double offset = 1e-3);

/// 2D invariants: omega_x omega_y (static) or (|omega_0x omega_y|, |omega_pix omega_y|).
InvariantReport composite_invariants(const ModelParams& p);

}  // namespace hofloq
