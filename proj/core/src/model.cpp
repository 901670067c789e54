#include "hofloq/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace hofloq {

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::static_model: return "static";
    case Protocol::kicked_v1: return "kicked_v1";
    case Protocol::kicked_v2: return "kicked_v2";
  }
  return "?";
}

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::periodic: return "periodic";
    case Boundary::open: return "open";
    case Boundary::not_applicable: return "not_applicable";
  }
  return "?";
}

std::string_view to_string(Chain c) {
  return c == Chain::creutz ? "cl" : "ssh";
}

std::string_view to_string(Frame f) {
  switch (f) {
    case Frame::raw: return "raw";
    case Frame::sym1: return "sym1";
    case Frame::sym2: return "sym2";
  }
  return "?";
}

std::string_view to_string(Sublattice s) {
  switch (s) {
    case Sublattice::u: return "u";
    case Sublattice::v: return "v";
    case Sublattice::a: return "a";
    case Sublattice::b: return "b";
  }
  return "?";
}

ModelParams ModelParams::from_angles(double theta, double phi, Protocol protocol) {
  ModelParams p;
  p.jx0 = kPi / 2 - kPi / 4 * std::sin(theta);
  p.jx1 = kPi / 2 - kPi / 4 * std::cos(theta);
  p.jy0 = kPi / 2 + kPi / 4 * std::cos(phi);
  p.jy1 = kPi / 2 - kPi / 4 * std::cos(phi);
  p.protocol = protocol;
  return p;
}

void ModelParams::validate() const {
  for (double v : {jx0, jx1, jy0, jy1, jx1p})
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite coupling amplitude");
}

// --- Basis ----------------------------------------------------------------

namespace {

int sub_index(Sublattice s) {
  return (s == Sublattice::u || s == Sublattice::a) ? 0 : 1;
}

Sublattice sub_of(Chain c, int i) {
  if (c == Chain::creutz) return i == 0 ? Sublattice::u : Sublattice::v;
  return i == 0 ? Sublattice::a : Sublattice::b;
}

bool sub_belongs(Chain c, Sublattice s) {
  return c == Chain::creutz ? (s == Sublattice::u || s == Sublattice::v)
                            : (s == Sublattice::a || s == Sublattice::b);
}

}  // namespace

Basis Basis::chain(Chain chain, int cells) {
  if (cells < 1) throw std::invalid_argument("chain needs at least one cell");
  return Basis(chain, cells, std::nullopt, 0);
}

Basis Basis::product(const Basis& x, const Basis& y) {
  if (x.is_product() || y.is_product())
    throw std::invalid_argument("product basis needs two chain bases");
  return Basis(x.chain_x_, x.cells_x_, y.chain_x_, y.cells_x_);
}

std::size_t Basis::size() const {
  return is_product() ? dim_x() * dim_y() : dim_x();
}

BasisLabel Basis::label(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("basis index out of range");
  BasisLabel out;
  std::size_t ix = is_product() ? index / dim_y() : index;
  out.x = {static_cast<int>(ix / 2) + 1, sub_of(chain_x_, static_cast<int>(ix % 2))};
  if (is_product()) {
    std::size_t iy = index % dim_y();
    out.y = SiteLabel{static_cast<int>(iy / 2) + 1, sub_of(*chain_y_, static_cast<int>(iy % 2))};
  }
  return out;
}

std::size_t Basis::index(const BasisLabel& label) const {
  auto site = [](const SiteLabel& s, Chain c, int cells) {
    if (s.cell < 1 || s.cell > cells || !sub_belongs(c, s.sub))
      throw std::out_of_range("label outside basis");
    return 2 * static_cast<std::size_t>(s.cell - 1) + sub_index(s.sub);
  };
  std::size_t ix = site(label.x, chain_x_, cells_x_);
  if (!is_product()) {
    if (label.y) throw std::out_of_range("2D label on a chain basis");
    return ix;
  }
  if (!label.y) throw std::out_of_range("chain label on a product basis");
  return ix * dim_y() + site(*label.y, *chain_y_, cells_y_);
}

// --- LatticeOperator ------------------------------------------------------

struct LatticeOperator::Factors {
  LatticeOperator x;
  LatticeOperator y;
};

LatticeOperator::LatticeOperator(Mat matrix, Basis basis, Boundary bc_x,
                                 Boundary bc_y, OperatorKind kind)
    : matrix_(std::move(matrix)), basis_(std::move(basis)), bc_x_(bc_x),
      bc_y_(bc_y), kind_(kind) {
  if (matrix_.rows() != matrix_.cols() ||
      static_cast<std::size_t>(matrix_.rows()) != basis_.size())
    throw std::invalid_argument("matrix dimension does not match basis");
}

LatticeOperator::LatticeOperator(Basis basis, Boundary bc_x, Boundary bc_y,
                                 OperatorKind kind,
                                 std::shared_ptr<const Factors> factors)
    : basis_(std::move(basis)), bc_x_(bc_x), bc_y_(bc_y), kind_(kind),
      factors_(std::move(factors)) {}

LatticeOperator LatticeOperator::tensor(const LatticeOperator& x,
                                        const LatticeOperator& y) {
  if (x.basis().is_product() || y.basis().is_product())
    throw std::invalid_argument("tensor factors must be 1D operators");
  if (x.kind() != y.kind())
    throw std::invalid_argument("tensor factors must be of the same kind");
  Basis basis = Basis::product(x.basis(), y.basis());
  return LatticeOperator(basis, x.bc_x(), y.bc_x(), x.kind(),
                         std::make_shared<const Factors>(Factors{x, y}));
}

const LatticeOperator& LatticeOperator::factor_x() const {
  if (!factors_) throw std::logic_error("operator is not factorized");
  return factors_->x;
}

const LatticeOperator& LatticeOperator::factor_y() const {
  if (!factors_) throw std::logic_error("operator is not factorized");
  return factors_->y;
}

const Mat& LatticeOperator::matrix() const {
  if (factors_) throw std::logic_error("factorized operator has no stored matrix");
  return matrix_;
}

Mat LatticeOperator::dense() const {
  if (!factors_) return matrix_;
  const Mat& mx = factors_->x.matrix();
  const Mat& my = factors_->y.matrix();
  if (kind_ == OperatorKind::floquet) return kron(mx, my);
  return kron(mx, Mat::Identity(my.rows(), my.cols())) +
         kron(Mat::Identity(mx.rows(), mx.cols()), my);
}

// --- Nearest-neighbour blocks ----------------------------------------------
// H(k) = M0 + M1 e^{ik} + M1^+ e^{-ik}  <->  sum_m c_m^+ M0 c_m + c_m^+ M1 c_{m+1} + h.c.

namespace {

struct Blocks {
  Mat2 onsite = Mat2::Zero();
  Mat2 hop = Mat2::Zero();
};

Blocks operator+(const Blocks& a, const Blocks& b) {
  return {a.onsite + b.onsite, a.hop + b.hop};
}

// Rung (kick) part of the Creutz ladder, J_x0 sigma_x.
Blocks creutz_rung(double j0) { return {j0 * pauli::x(), Mat2::Zero()}; }

// J_x1 (cos k sigma_x + sin k sigma_z).
Blocks creutz_legs(double j1) {
  return {Mat2::Zero(), (j1 / 2) * (pauli::x() - kI * pauli::z())};
}

Blocks ssh_blocks(double j0, double j1) {
  Mat2 hop = Mat2::Zero();
  hop(1, 0) = j1;  // b_n^+ a_{n+1}
  return {j0 * pauli::x(), hop};
}

// Free part of the second protocol, (J_x0 + J_x1 cos k) sigma_x.
Blocks v2_free(double j0, double j1) {
  return {j0 * pauli::x(), (j1 / 2) * pauli::x()};
}

// Kick of the second protocol, J'_x1 sin k sigma_z.
Blocks v2_kick(double jp) { return {Mat2::Zero(), (-kI * (jp / 2)) * pauli::z()}; }

Mat2 bloch_of(const Blocks& b, double k) {
  const cplx e = std::exp(kI * k);
  return b.onsite + b.hop * e + b.hop.adjoint() * std::conj(e);
}

Mat chain_matrix(const Blocks& b, int cells, Boundary bc) {
  const int n = 2 * cells;
  Mat h = Mat::Zero(n, n);
  for (int m = 0; m < cells; ++m) h.block<2, 2>(2 * m, 2 * m) += b.onsite;
  const int bonds = bc == Boundary::periodic ? cells : cells - 1;
  for (int m = 0; m < bonds; ++m) {
    const int next = (m + 1) % cells;
    h.block<2, 2>(2 * m, 2 * next) += b.hop;
    h.block<2, 2>(2 * next, 2 * m) += b.hop.adjoint();
  }
  return h;
}

Mat2 expm2(const Mat2& h, double t) {
  // H = h0 + n.sigma  ->  e^{-itH} = e^{-ith0} (cos(t|n|) - i sin(t|n|) n^.sigma)
  const cplx h0 = 0.5 * (h(0, 0) + h(1, 1));
  const Mat2 traceless = h - h0 * Mat2::Identity();
  const double n = std::sqrt(std::norm(traceless(0, 0)) + std::norm(traceless(0, 1)));
  const double sinc = n > 1e-300 ? std::sin(t * n) / n : t;
  return std::exp(-kI * t * h0) *
         (std::cos(t * n) * Mat2::Identity() - kI * sinc * traceless);
}

template <class M, class Exp>
M frame_product(const M& left, const M& right, Frame frame, Exp&& expm) {
  // left / right: step Hamiltonians of e^{-i left} e^{-i right}.
  switch (frame) {
    case Frame::raw: return expm(left, 1.0) * expm(right, 1.0);
    case Frame::sym1: {
      M half = expm(right, 0.5);
      return half * expm(left, 1.0) * half;
    }
    case Frame::sym2: {
      M half = expm(left, 0.5);
      return half * expm(right, 1.0) * half;
    }
  }
  throw std::invalid_argument("unknown frame");
}

std::pair<Blocks, Blocks> kicked_steps(const ModelParams& p) {
  switch (p.protocol) {
    case Protocol::kicked_v1: return {creutz_rung(p.jx0), creutz_legs(p.jx1)};
    case Protocol::kicked_v2: return {v2_free(p.jx0, p.jx1), v2_kick(p.jx1p)};
    case Protocol::static_model: break;
  }
  throw std::invalid_argument("Floquet operator requested for the static protocol");
}

void require_length(int length) {
  if (length < 2) throw std::invalid_argument("lattice length must be >= 2 cells, got " + std::to_string(length));
}

void require_bc(Boundary bc) {
  if (bc == Boundary::not_applicable)
    throw std::invalid_argument("real-space operator needs periodic or open boundary");
}

}  // namespace

// --- Bloch space ----------------------------------------------------------

BlochMatrix bloch_hx(double kx, const ModelParams& p) {
  return {kx, std::nullopt, bloch_of(creutz_rung(p.jx0) + creutz_legs(p.jx1), kx)};
}

BlochMatrix bloch_hy(double ky, const ModelParams& p) {
  return {ky, std::nullopt, bloch_of(ssh_blocks(p.jy0, p.jy1), ky)};
}

BlochMatrix floquet_x_bloch(double kx, const ModelParams& p, Frame frame) {
  auto [left, right] = kicked_steps(p);
  Mat2 u = frame_product<Mat2>(bloch_of(left, kx), bloch_of(right, kx), frame, expm2);
  return {kx, std::nullopt, u};
}

BlochMatrix floquet_y_bloch(double ky, const ModelParams& p) {
  return {ky, std::nullopt, expm2(bloch_hy(ky, p).matrix, 1.0)};
}

BlochMatrix floquet_2d(const BlochMatrix& ux, const BlochMatrix& uy) {
  if (ux.ky || uy.ky) throw std::invalid_argument("floquet_2d expects 1D Bloch factors");
  return {ux.k, uy.k, kron(ux.matrix, uy.matrix)};
}

// --- Real space -------------------------------------------------------------

LatticeOperator realspace_h(Chain model, int length, Boundary bc, const ModelParams& p) {
  require_length(length);
  require_bc(bc);
  const Blocks b = model == Chain::creutz ? creutz_rung(p.jx0) + creutz_legs(p.jx1)
                                          : ssh_blocks(p.jy0, p.jy1);
  return LatticeOperator(chain_matrix(b, length, bc), Basis::chain(model, length), bc,
                         Boundary::not_applicable, OperatorKind::hamiltonian);
}

LatticeOperator floquet_x_realspace(int length, Boundary bc, const ModelParams& p, Frame frame) {
  require_length(length);
  require_bc(bc);
  auto [left, right] = kicked_steps(p);
  Mat u = frame_product<Mat>(chain_matrix(left, length, bc), chain_matrix(right, length, bc),
                             frame, [](const Mat& h, double t) { return expm_i_hermitian(h, t); });
  return LatticeOperator(std::move(u), Basis::chain(Chain::creutz, length), bc,
                         Boundary::not_applicable, OperatorKind::floquet);
}

LatticeOperator floquet_y_realspace(int length, Boundary bc, const ModelParams& p) {
  require_length(length);
  require_bc(bc);
  Mat u = expm_i_hermitian(chain_matrix(ssh_blocks(p.jy0, p.jy1), length, bc));
  return LatticeOperator(std::move(u), Basis::chain(Chain::ssh, length), bc,
                         Boundary::not_applicable, OperatorKind::floquet);
}

LatticeOperator floquet_2d(const LatticeOperator& ux, const LatticeOperator& uy) {
  if (ux.kind() != OperatorKind::floquet || uy.kind() != OperatorKind::floquet)
    throw std::invalid_argument("floquet_2d expects Floquet operators");
  if (ux.is_factorized() || uy.is_factorized())
    throw std::invalid_argument("floquet_2d expects 1D factors");
  if (ux.basis().chain_x() != Chain::creutz || uy.basis().chain_x() != Chain::ssh)
    throw std::invalid_argument("floquet_2d expects a ladder x factor and an SSH y factor");
  return LatticeOperator::tensor(ux, uy);
}

LatticeOperator static_2d(const Lattice2D& lattice, const ModelParams& p) {
  return LatticeOperator::tensor(realspace_h(Chain::creutz, lattice.lx, lattice.bc_x, p),
                                 realspace_h(Chain::ssh, lattice.ly, lattice.bc_y, p));
}

LatticeOperator kicked_2d(const Lattice2D& lattice, const ModelParams& p, Frame frame) {
  return floquet_2d(floquet_x_realspace(lattice.lx, lattice.bc_x, p, frame),
                    floquet_y_realspace(lattice.ly, lattice.bc_y, p));
}

// --- Two-step 2D operators ----------------------------------------------------

namespace {

/// Sparse assembly on the x-outer / y-inner product lattice.
class Builder2D {
 public:
  explicit Builder2D(const Lattice2D& l) : l_(l), dy_(2 * l.ly) {}

  /// sum over x cells m and y sites j of coef(m, j) c^+_{m,j} A c_{m+dx,j} (+ h.c. for dx = 1).
  template <class Coef>
  void x_term(const Mat2& a, int dx, Coef&& coef) {
    const int bonds = dx == 0 ? l_.lx : (l_.bc_x == Boundary::periodic ? l_.lx : l_.lx - 1);
    for (int m = 0; m < bonds; ++m) {
      const int m2 = (m + dx) % l_.lx;
      for (int j = 0; j < dy_; ++j) {
        const double c = coef(m, j);
        for (int s = 0; s < 2; ++s)
          for (int t = 0; t < 2; ++t) {
            const cplx v = c * a(s, t);
            if (v == cplx(0.0)) continue;
            add(idx(2 * m + s, j), idx(2 * m2 + t, j), v, dx != 0);
          }
      }
    }
  }

  /// sum over x sites i and y cells n of coef(i, n) c^+_{i,n} A c_{i,n+dy} (+ h.c. for dy = 1).
  template <class Coef>
  void y_term(const Mat2& a, int dy, Coef&& coef) {
    const int bonds = dy == 0 ? l_.ly : (l_.bc_y == Boundary::periodic ? l_.ly : l_.ly - 1);
    for (int i = 0; i < 2 * l_.lx; ++i)
      for (int n = 0; n < bonds; ++n) {
        const int n2 = (n + dy) % l_.ly;
        const double c = coef(i, n);
        for (int s = 0; s < 2; ++s)
          for (int t = 0; t < 2; ++t) {
            const cplx v = c * a(s, t);
            if (v == cplx(0.0)) continue;
            add(idx(i, 2 * n + s), idx(i, 2 * n2 + t), v, dy != 0);
          }
      }
  }

  SparseMat build() const {
    const int n = 2 * l_.lx * dy_;
    SparseMat h(n, n);
    h.setFromTriplets(triplets_.begin(), triplets_.end());
    h.makeCompressed();
    return h;
  }

 private:
  int idx(int ix, int iy) const { return ix * dy_ + iy; }

  void add(int r, int c, cplx v, bool hermitian_partner) {
    triplets_.emplace_back(r, c, v);
    if (hermitian_partner) triplets_.emplace_back(c, r, std::conj(v));
  }

  Lattice2D l_;
  int dy_;
  std::vector<Eigen::Triplet<cplx>> triplets_;
};

/// Random shifts per geometric bond; all zero when lambda == 0.
struct BondShifts {
  std::vector<double> rung;      // [m][y site]
  std::vector<double> x_link;    // [m][y site], bond m -> m+1
  std::vector<double> y_intra;   // [m][n], shared by both ladder legs
  std::vector<double> y_inter;   // [m][n], bond n -> n+1

  BondShifts(const Lattice2D& l, double lambda, std::uint64_t seed) {
    const std::size_t nx = l.lx, ny = 2 * static_cast<std::size_t>(l.ly);
    rung.assign(nx * ny, 0.0);
    x_link.assign(nx * ny, 0.0);
    y_intra.assign(nx * l.ly, 0.0);
    y_inter.assign(nx * l.ly, 0.0);
    if (lambda == 0.0) return;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> eps(-1.0, 1.0);
    for (auto* v : {&rung, &x_link, &y_intra, &y_inter})
      for (double& x : *v) x = lambda * eps(rng);
  }
};

struct StepHamiltonians {
  SparseMat left;   // e^{-i left} acts second
  SparseMat right;  // e^{-i right} acts first
};

StepHamiltonians two_step_hamiltonians(const ModelParams& p, const Perturbation& d,
                                       const BondShifts& shifts, bool ssh_in_both,
                                       const Lattice2D& l) {
  const int ly2 = 2 * l.ly;
  auto tau_z = [](int j) { return j % 2 == 0 ? 1.0 : -1.0; };
  const Mat2 legs = 0.5 * (pauli::x() - kI * pauli::z());
  Mat2 ssh_hop = Mat2::Zero();
  ssh_hop(1, 0) = 1.0;

  auto add_ssh = [&](Builder2D& b) {
    b.y_term(pauli::x(), 0, [&](int i, int n) { return p.jy0 + shifts.y_intra[(i / 2) * l.ly + n]; });
    b.y_term(ssh_hop, 1, [&](int i, int n) { return p.jy1 + shifts.y_inter[(i / 2) * l.ly + n]; });
    // dy cos k_y tau_y
    if (d.dy != 0.0) b.y_term(0.5 * pauli::y(), 1, [&](int, int) { return d.dy; });
  };

  Builder2D first(l), second(l);
  first.x_term(pauli::x(), 0, [&](int m, int j) { return p.jx0 + shifts.rung[m * ly2 + j]; });
  // -dx cos k_x sigma_z (x) tau_0 and d1 cos k_x sigma_x (x) tau_z
  if (d.dx != 0.0) first.x_term(0.5 * pauli::z(), 1, [&](int, int) { return -d.dx; });
  if (d.d1 != 0.0) first.x_term(0.5 * pauli::x(), 1, [&](int, int j) { return d.d1 * tau_z(j); });
  if (ssh_in_both) add_ssh(first);

  second.x_term(legs, 1, [&](int m, int j) { return p.jx1 + shifts.x_link[m * ly2 + j]; });
  // d2 sin k_x sigma_z (x) tau_z
  if (d.d2 != 0.0)
    second.x_term(-0.5 * kI * pauli::z(), 1, [&](int, int j) { return d.d2 * tau_z(j); });
  add_ssh(second);

  return {first.build(), second.build()};
}

Mat dense_two_step(const StepHamiltonians& s, Frame frame) {
  auto e = [](const SparseMat& h, double t) { return expm_i_hermitian_sparse(h, t); };
  switch (frame) {
    case Frame::raw: return e(s.left, 1.0) * e(s.right, 1.0);
    case Frame::sym1: {
      Mat half = e(s.right, 0.5);
      return half * e(s.left, 1.0) * half;
    }
    case Frame::sym2: {
      Mat half = e(s.left, 0.5);
      return half * e(s.right, 1.0) * half;
    }
  }
  throw std::invalid_argument("unknown frame");
}

void require_2d(const Lattice2D& l) {
  require_length(l.lx);
  require_length(l.ly);
  require_bc(l.bc_x);
  require_bc(l.bc_y);
}

}  // namespace

LatticeOperator perturbed_floquet_2d(const ModelParams& p, const Perturbation& deltas,
                                     const Lattice2D& lattice, Frame frame) {
  if (p.protocol != Protocol::kicked_v1)
    throw std::invalid_argument("perturbed operator is defined for the first kicked protocol");
  require_2d(lattice);
  const BondShifts clean(lattice, 0.0, 0);
  Mat u = dense_two_step(two_step_hamiltonians(p, deltas, clean, true, lattice), frame);
  return LatticeOperator(std::move(u),
                         Basis::product(Basis::chain(Chain::creutz, lattice.lx),
                                        Basis::chain(Chain::ssh, lattice.ly)),
                         lattice.bc_x, lattice.bc_y, OperatorKind::floquet);
}

LatticeOperator disordered_floquet_2d(const ModelParams& p, double lambda, std::uint64_t seed,
                                      const Lattice2D& lattice, Frame frame) {
  if (p.protocol != Protocol::kicked_v1)
    throw std::invalid_argument("disordered operator is defined for the first kicked protocol");
  if (!(lambda >= 0.0)) throw std::invalid_argument("disorder strength must be >= 0");
  require_2d(lattice);
  if (lambda == 0.0) {
    // no draws at all: the clean operator itself
    return LatticeOperator(kicked_2d(lattice, p, frame).dense(),
                           Basis::product(Basis::chain(Chain::creutz, lattice.lx),
                                          Basis::chain(Chain::ssh, lattice.ly)),
                           lattice.bc_x, lattice.bc_y, OperatorKind::floquet);
  }
  const BondShifts shifts(lattice, lambda, seed);
  Mat u = dense_two_step(two_step_hamiltonians(p, Perturbation{}, shifts, false, lattice), frame);
  return LatticeOperator(std::move(u),
                         Basis::product(Basis::chain(Chain::creutz, lattice.lx),
                                        Basis::chain(Chain::ssh, lattice.ly)),
                         lattice.bc_x, lattice.bc_y, OperatorKind::floquet);
}

// --- Symmetries -----------------------------------------------------------------

Mat symmetry_matrix(Symmetry which, Sector sector) {
  auto pick = [&](const Mat2& cl, const Mat2& ssh) -> Mat {
    switch (sector) {
      case Sector::creutz: return cl;
      case Sector::ssh: return ssh;
      case Sector::composite: return kron(cl, ssh);
    }
    throw std::invalid_argument("unknown sector");
  };
  switch (which) {
    case Symmetry::chiral: return pick(pauli::y(), pauli::z());
    case Symmetry::time_reversal: return pick(pauli::x(), pauli::identity());
    case Symmetry::particle_hole: return pick(pauli::z(), pauli::z());
  }
  throw std::invalid_argument("unknown symmetry");
}

namespace {

double relation_residual(const Mat& o, const Mat& o_minus, const Mat& s, Symmetry which,
                         OperatorKind kind) {
  const bool floquet = kind == OperatorKind::floquet;
  switch (which) {
    case Symmetry::chiral:
      return floquet ? max_abs(s * o * s.adjoint() - o.adjoint())
                     : max_abs(s * o * s.adjoint() + o);
    case Symmetry::time_reversal:
      return floquet ? max_abs(s * o.conjugate() * s.adjoint() - o_minus.adjoint())
                     : max_abs(s * o.conjugate() * s.adjoint() - o_minus);
    case Symmetry::particle_hole:
      return floquet ? max_abs(s * o.conjugate() * s.adjoint() - o_minus)
                     : max_abs(s * o.conjugate() * s.adjoint() + o_minus);
  }
  throw std::invalid_argument("unknown symmetry");
}

}  // namespace

double check_symmetry(const BlochMatrix& at_k, const BlochMatrix& at_minus_k, Symmetry which,
                      Sector sector, OperatorKind kind) {
  const Mat s = symmetry_matrix(which, sector);
  if (s.rows() != at_k.matrix.rows() || at_k.matrix.rows() != at_minus_k.matrix.rows())
    throw std::invalid_argument("symmetry representation does not fit the Bloch matrix");
  return relation_residual(at_k.matrix, at_minus_k.matrix, s, which, kind);
}

double check_symmetry(const LatticeOperator& op, Symmetry which) {
  const Basis& b = op.basis();
  auto cells = [](Chain c, int n, Symmetry w) {
    return kron(Mat::Identity(n, n),
                symmetry_matrix(w, c == Chain::creutz ? Sector::creutz : Sector::ssh));
  };
  Mat s = cells(b.chain_x(), b.cells_x(), which);
  if (b.is_product()) s = kron(s, cells(*b.chain_y(), b.cells_y(), which));
  // In real space the k -> -k partner of an operator is the operator itself.
  const Mat o = op.dense();
  return relation_residual(o, o, s, which, op.kind());
}

}  // namespace hofloq
