#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "hofloq/linalg.hpp"

namespace hofloq {

enum class Protocol { static_model, kicked_v1, kicked_v2 };
enum class Boundary { periodic, open, not_applicable };
/// 1D building blocks: the Creutz ladder (x direction) and the SSH chain (y).
enum class Chain { creutz, ssh };
enum class Frame { raw, sym1, sym2 };
enum class Sublattice { u, v, a, b };
enum class OperatorKind { hamiltonian, floquet };
enum class Symmetry { chiral, time_reversal, particle_hole };
/// Which internal space a symmetry representation acts on.
enum class Sector { creutz, ssh, composite };

std::string_view to_string(Protocol p);
std::string_view to_string(Boundary b);
std::string_view to_string(Chain c);
std::string_view to_string(Frame f);
std::string_view to_string(Sublattice s);

/// Coupling constants in units of hbar/T = 1.
struct ModelParams {
  double jx0 = 0.0;
  double jx1 = 0.0;
  double jy0 = 0.0;
  double jy1 = 0.0;
  double jx1p = 0.0;  // kick strength of the second protocol, ignored otherwise
  Protocol protocol = Protocol::kicked_v1;

  /// jx0 = pi/2 - (pi/4) sin(theta), jx1 = pi/2 - (pi/4) cos(theta),
  /// jy0 = pi/2 + (pi/4) cos(phi),   jy1 = pi/2 - (pi/4) cos(phi).
  static ModelParams from_angles(double theta, double phi,
                                 Protocol protocol = Protocol::kicked_v1);

  /// Throws std::invalid_argument on non-finite amplitudes.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

struct SiteLabel {
  int cell = 1;  // 1-based unit-cell index
  Sublattice sub = Sublattice::u;
  bool operator==(const SiteLabel&) const = default;
};

struct BasisLabel {
  SiteLabel x;
  std::optional<SiteLabel> y;  // present for 2D bases
  bool operator==(const BasisLabel&) const = default;
};

/// Row ordering of lattice operators. A chain of L cells has index
/// 2 (cell - 1) + sublattice; a product basis is x-outer / y-inner, i.e.
/// index = ix * dim_y + iy, the ordering of kron(U_x, U_y).
class Basis {
 public:
  static Basis chain(Chain chain, int cells);
  static Basis product(const Basis& x, const Basis& y);

  std::size_t size() const;
  bool is_product() const { return chain_y_.has_value(); }
  Chain chain_x() const { return chain_x_; }
  std::optional<Chain> chain_y() const { return chain_y_; }
  int cells_x() const { return cells_x_; }
  int cells_y() const { return cells_y_; }
  std::size_t dim_x() const { return 2 * static_cast<std::size_t>(cells_x_); }
  std::size_t dim_y() const { return 2 * static_cast<std::size_t>(cells_y_); }

  BasisLabel label(std::size_t index) const;
  std::size_t index(const BasisLabel& label) const;

  bool operator==(const Basis&) const = default;

 private:
  Basis(Chain cx, int lx, std::optional<Chain> cy, int ly)
      : chain_x_(cx), cells_x_(lx), chain_y_(cy), cells_y_(ly) {}

  Chain chain_x_;
  int cells_x_;
  std::optional<Chain> chain_y_;
  int cells_y_ = 0;
};

/// Dense lattice operator with a labelled basis. A 2D operator built from two
/// 1D factors keeps them instead of a dense matrix: Floquet operators compose
/// as kron(U_x, U_y), Hamiltonians as the Kronecker sum H_x (+) H_y.
class LatticeOperator {
 public:
  LatticeOperator(Mat matrix, Basis basis, Boundary bc_x, Boundary bc_y,
                  OperatorKind kind);

  static LatticeOperator tensor(const LatticeOperator& x,
                                const LatticeOperator& y);

  const Basis& basis() const { return basis_; }
  Boundary bc_x() const { return bc_x_; }
  Boundary bc_y() const { return bc_y_; }
  OperatorKind kind() const { return kind_; }
  std::size_t dim() const { return basis_.size(); }

  bool is_factorized() const { return factors_ != nullptr; }
  const LatticeOperator& factor_x() const;
  const LatticeOperator& factor_y() const;

  /// Dense matrix; throws std::logic_error on factorized operators.
  const Mat& matrix() const;
  /// Dense matrix, materializing factorized operators.
  Mat dense() const;

 private:
  struct Factors;

  LatticeOperator(Basis basis, Boundary bc_x, Boundary bc_y, OperatorKind kind,
                  std::shared_ptr<const Factors> factors);

  Mat matrix_;
  Basis basis_;
  Boundary bc_x_;
  Boundary bc_y_;
  OperatorKind kind_;
  std::shared_ptr<const Factors> factors_;
};

struct BlochMatrix {
  double k = 0.0;
  std::optional<double> ky;  // set on 4x4 composite matrices
  Mat matrix;
};

// --- Bloch space ---------------------------------------------------------

BlochMatrix bloch_hx(double kx, const ModelParams& p);
BlochMatrix bloch_hy(double ky, const ModelParams& p);
/// One-period Floquet operator of the x sector for the kicked protocols.
BlochMatrix floquet_x_bloch(double kx, const ModelParams& p,
                            Frame frame = Frame::raw);
/// exp(-i H_y(ky)).
BlochMatrix floquet_y_bloch(double ky, const ModelParams& p);
BlochMatrix floquet_2d(const BlochMatrix& ux, const BlochMatrix& uy);

// --- Real space -----------------------------------------------------------

LatticeOperator realspace_h(Chain model, int length, Boundary bc,
                            const ModelParams& p);
LatticeOperator floquet_x_realspace(int length, Boundary bc,
                                    const ModelParams& p,
                                    Frame frame = Frame::raw);
LatticeOperator floquet_y_realspace(int length, Boundary bc,
                                    const ModelParams& p);
/// kron(U_x, U_y) kept in factorized form.
LatticeOperator floquet_2d(const LatticeOperator& ux, const LatticeOperator& uy);

struct Lattice2D {
  int lx = 0;
  int ly = 0;
  Boundary bc_x = Boundary::open;
  Boundary bc_y = Boundary::open;
};

/// Static coupled ladder H_x (+) H_y in factorized form.
LatticeOperator static_2d(const Lattice2D& lattice, const ModelParams& p);
/// Clean kicked model (either protocol) in factorized form.
LatticeOperator kicked_2d(const Lattice2D& lattice, const ModelParams& p,
                          Frame frame = Frame::raw);

struct Perturbation {
  double dx = 0.0;
  double dy = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// exp(-i H_1) exp(-i H_2) with the symmetry- and product-breaking terms.
/// Both steps carry the SSH Hamiltonian (plus the dy term), so the
/// unperturbed limit is kron(U_x, U_y^2).
LatticeOperator perturbed_floquet_2d(const ModelParams& p,
                                     const Perturbation& deltas,
                                     const Lattice2D& lattice,
                                     Frame frame = Frame::raw);

/// Kicked (protocol 1) model as a dense two-step product with every
/// nearest-neighbour amplitude J shifted to J + lambda * eps_bond,
/// eps_bond ~ U[-1, 1] from a generator seeded with `seed`.
LatticeOperator disordered_floquet_2d(const ModelParams& p, double lambda,
                                      std::uint64_t seed,
                                      const Lattice2D& lattice,
                                      Frame frame = Frame::raw);

// --- Symmetry checks ----------------------------------------------------

/// Representation matrices: chiral S, and the unitary parts of T and C.
Mat symmetry_matrix(Symmetry which, Sector sector);

/// Residual of the defining relation for a Bloch family, given the matrix at
/// k and at -k. Hamiltonians: S H S + H, T H* T^+ - H(-k), C H* C^+ + H(-k).
/// Floquet: S U S - U^+, T U* T^+ - U^+(-k), C U* C^+ - U(-k).
double check_symmetry(const BlochMatrix& at_k, const BlochMatrix& at_minus_k,
                      Symmetry which, Sector sector, OperatorKind kind);

/// Real-space version; the sector follows from the basis and the symmetry
/// acts cell by cell.
double check_symmetry(const LatticeOperator& op, Symmetry which);

}  // namespace hofloq
