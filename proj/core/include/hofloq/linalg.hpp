#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace hofloq {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2cd;
using SparseMat = Eigen::SparseMatrix<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

namespace pauli {
Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
}  // namespace pauli

Mat kron(const Mat& a, const Mat& b);

struct HermitianEigen {
  RVec values;  // ascending
  Mat vectors;  // columns
};

/// Full eigendecomposition of a Hermitian matrix (LAPACK zheevd).
/// Only the upper triangle is read.
HermitianEigen eigh(const Mat& h);

/// exp(-i t H) for Hermitian H via its eigendecomposition.
Mat expm_i_hermitian(const Mat& h, double t = 1.0);

/// exp(-i t H) for a sparse Hermitian H by a Chebyshev-Bessel expansion,
/// applied to the dense identity. Truncated once the Bessel weights fall
/// below `tol`.
Mat expm_i_hermitian_sparse(const SparseMat& h, double t = 1.0,
                            double tol = 1e-16);

double max_abs(const Mat& m);
/// max |H - H^dagger|
double hermiticity_residual(const Mat& h);
/// max |U^dagger U - I|
double unitarity_residual(const Mat& u);

/// Roots of sum_k c_k z^k (ascending coefficients) from the eigenvalues of the
/// companion matrix. Leading coefficients with |c| <= trim * max|c| are
/// dropped (roots at infinity).
std::vector<cplx> polynomial_roots(std::span<const cplx> ascending,
                                   double trim = 1e-13);

/// Fold a phase into [-pi, pi).
double fold_phase(double phase);

/// Distance on the quasienergy circle.
double circle_distance(double a, double b);

}  // namespace hofloq
