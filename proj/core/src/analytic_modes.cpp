#include "hofloq/analytic_modes.hpp"

#include <cmath>
#include <stdexcept>

namespace hofloq {

std::string_view to_string(Side s) {
  switch (s) {
    case Side::L: return "L";
    case Side::R: return "R";
    case Side::B: return "B";
    case Side::T: return "T";
    case Side::LB: return "LB";
    case Side::LT: return "LT";
    case Side::RB: return "RB";
    case Side::RT: return "RT";
  }
  return "?";
}

namespace {

constexpr double kNormalizableTol = 1e-12;

/// amplitude(cell) = decay^(cell - 1) from the start or decay^(M - cell) from the end.
Vec chain_vector(int cells, double decay, bool from_start, const std::array<cplx, 2>& spinor) {
  Vec v = Vec::Zero(2 * cells);
  double amp = 1.0;
  for (int i = 0; i < cells; ++i) {
    const int cell = from_start ? i : cells - 1 - i;
    v(2 * cell) = amp * spinor[0];
    v(2 * cell + 1) = amp * spinor[1];
    amp *= decay;
  }
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("end mode cannot be normalized");
  return v / n;
}

bool decays(double r) { return std::abs(r) < 1.0 - kNormalizableTol; }

bool is_corner(Side s) {
  return s == Side::LB || s == Side::LT || s == Side::RB || s == Side::RT;
}

}  // namespace

AnalyticMode static_edge_mode(Chain chain, Side side, const ModelParams& p, int length) {
  if (length < 2) throw std::invalid_argument("length must be >= 2");
  AnalyticMode m;
  m.side = side;
  m.basis = Basis::chain(chain, length);
  const double s = 1.0 / std::sqrt(2.0);
  double r;
  bool from_start;
  if (chain == Chain::creutz) {
    if (side != Side::L && side != Side::R) throw std::invalid_argument("ladder ends are L and R");
    if (p.jx1 == 0.0) throw std::invalid_argument("ladder end mode needs J_x1 != 0");
    r = -p.jx0 / p.jx1;
    from_start = side == Side::L;
    m.amplitudes_x = from_start ? std::array<cplx, 2>{s, -kI * s} : std::array<cplx, 2>{s, kI * s};
    m.decay_x = r;
    m.vector = chain_vector(length, r, from_start, m.amplitudes_x);
  } else {
    if (side != Side::B && side != Side::T) throw std::invalid_argument("SSH ends are B and T");
    if (p.jy1 == 0.0) throw std::invalid_argument("SSH end mode needs J_y1 != 0");
    r = -p.jy0 / p.jy1;
    from_start = side == Side::B;
    m.amplitudes_y = from_start ? std::array<cplx, 2>{1.0, 0.0} : std::array<cplx, 2>{0.0, 1.0};
    m.decay_y = r;
    m.vector = chain_vector(length, r, from_start, m.amplitudes_y);
  }
  m.normalizable = decays(r);
  return m;
}

AnalyticMode kicked_edge_mode(Side side, double target, const ModelParams& p, int length) {
  if (p.protocol != Protocol::kicked_v1)
    throw std::invalid_argument("kicked end modes are known for the first protocol");
  if (side != Side::L && side != Side::R) throw std::invalid_argument("ladder ends are L and R");
  if (length < 2) throw std::invalid_argument("length must be >= 2");
  const bool zero = circle_distance(target, 0.0) < 1e-12;
  if (!zero && circle_distance(target, kPi) >= 1e-12)
    throw std::invalid_argument("kicked end modes exist at quasienergy 0 or pi");
  const double a = p.jx0 / 2, b = p.jx1 / 2;
  const double rho = (std::cos(a) - std::sin(a)) / std::sqrt(2.0);
  const double lam = (std::cos(a) + std::sin(a)) / std::sqrt(2.0);
  // Half-angle forms of -tan a / tan b and 1 / (tan a tan b).
  const double num = zero ? -std::sin(a) * std::cos(b) : std::cos(a) * std::cos(b);
  const double den = zero ? std::cos(a) * std::sin(b) : std::sin(a) * std::sin(b);
  if (std::abs(den) < 1e-300) throw std::invalid_argument("end-mode decay ratio diverges");
  const double r = num / den;
  const std::array<cplx, 2> first{rho, -kI * lam};  // rho u - i lambda v
  const std::array<cplx, 2> second{lam, kI * rho};  // lambda u + i rho v
  AnalyticMode m;
  m.side = side;
  m.target = zero ? 0.0 : kPi;
  m.decay_x = r;
  m.basis = Basis::chain(Chain::creutz, length);
  const bool left = side == Side::L;
  m.amplitudes_x = (left == zero) ? first : second;
  m.vector = chain_vector(length, r, left, m.amplitudes_x);
  m.normalizable = decays(r);
  return m;
}

AnalyticMode corner_mode(Side corner, double target, const ModelParams& p, int lx, int ly) {
  if (!is_corner(corner)) throw std::invalid_argument("corner must be LB, LT, RB or RT");
  const Side xs = (corner == Side::LB || corner == Side::LT) ? Side::L : Side::R;
  const Side ys = (corner == Side::LB || corner == Side::RB) ? Side::B : Side::T;
  AnalyticMode x;
  if (p.protocol == Protocol::static_model) {
    if (circle_distance(target, 0.0) > 1e-12)
      throw std::invalid_argument("static corner modes sit at zero energy");
    x = static_edge_mode(Chain::creutz, xs, p, lx);
  } else {
    x = kicked_edge_mode(xs, target, p, lx);
  }
  const AnalyticMode y = static_edge_mode(Chain::ssh, ys, p, ly);
  AnalyticMode m;
  m.side = corner;
  m.target = x.target;
  m.decay_x = x.decay_x;
  m.decay_y = y.decay_y;
  m.amplitudes_x = x.amplitudes_x;
  m.amplitudes_y = y.amplitudes_y;
  m.normalizable = x.normalizable && y.normalizable;
  m.basis = Basis::product(x.basis, y.basis);
  m.vector = kron(x.vector, y.vector);
  return m;
}

std::vector<AnalyticMode> corner_modes(double target, const ModelParams& p, int lx, int ly) {
  std::vector<AnalyticMode> out;
  for (Side c : {Side::LB, Side::LT, Side::RB, Side::RT}) {
    AnalyticMode m = corner_mode(c, target, p, lx, ly);
    for (const auto& prev : out) m.vector -= prev.vector.dot(m.vector) * prev.vector;
    const double n = m.vector.norm();
    if (n < 1e-12) throw std::invalid_argument("corner modes are linearly dependent");
    m.vector /= n;
    out.push_back(std::move(m));
  }
  return out;
}

double subspace_overlap(const std::vector<Vec>& analytic, const QuasienergySpectrum& numeric,
                        double target, double eps_tol) {
  if (analytic.empty()) throw std::invalid_argument("empty analytic set");
  const auto states = select_modes(numeric, target, eps_tol, -1.0);
  if (states.size() < analytic.size())
    throw std::invalid_argument("numeric subspace (" + std::to_string(states.size()) +
                                ") smaller than the analytic set (" +
                                std::to_string(analytic.size()) + ")");
  Mat a(analytic.front().size(), static_cast<Eigen::Index>(analytic.size()));
  for (std::size_t j = 0; j < analytic.size(); ++j) a.col(j) = analytic[j];
  const Eigen::HouseholderQR<Mat> qr(a);
  const Mat q = qr.householderQ() * Mat::Identity(a.rows(), a.cols());
  const Mat overlap = q.adjoint() * numeric.vectors(states);
  const Eigen::JacobiSVD<Mat> svd(overlap);
  return svd.singularValues().minCoeff();
}

}  // namespace hofloq
