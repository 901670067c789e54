#include "hofloq/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hofloq {

namespace pauli {
Mat2 identity() { return Mat2::Identity(); }
Mat2 x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Mat2 y() {
  Mat2 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}
Mat2 z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianEigen eigh(const Mat& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("eigh: matrix is not square");
  }
  const auto n = static_cast<lapack_int>(h.rows());
  HermitianEigen out;
  out.vectors = h;
  out.values.resize(n);
  if (n == 0) {
    return out;
  }
  const lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'V', 'U', n,
      reinterpret_cast<lapack_complex_double*>(out.vectors.data()), n,
      out.values.data());
  if (info != 0) {
    throw std::runtime_error("zheevd failed with info=" + std::to_string(info));
  }
  return out;
}

Mat expm_i_hermitian(const Mat& h, double t) {
  const HermitianEigen es = eigh(h);
  Vec phases(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    phases(i) = std::exp(-kI * (t * es.values(i)));
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

namespace {

// Gershgorin bounds on the real spectrum of a Hermitian sparse matrix.
std::pair<double, double> spectral_bounds(const SparseMat& h) {
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (Eigen::Index col = 0; col < h.outerSize(); ++col) {
    double centre = 0.0;
    double radius = 0.0;
    for (SparseMat::InnerIterator it(h, col); it; ++it) {
      if (it.row() == it.col()) {
        centre = it.value().real();
      } else {
        radius += std::abs(it.value());
      }
    }
    if (first) {
      lo = centre - radius;
      hi = centre + radius;
      first = false;
    } else {
      lo = std::min(lo, centre - radius);
      hi = std::max(hi, centre + radius);
    }
  }
  return {lo, hi};
}

}  // namespace

Mat expm_i_hermitian_sparse(const SparseMat& h, double t, double tol) {
  const Eigen::Index n = h.rows();
  if (n != h.cols()) {
    throw std::invalid_argument("expm_i_hermitian_sparse: matrix is not square");
  }
  auto [lo, hi] = spectral_bounds(h);
  // Widen slightly so the rescaled spectrum sits strictly inside [-1, 1].
  const double half_width = 0.5 * (hi - lo) * 1.01 + 1e-12;
  const double centre = 0.5 * (hi + lo);
  const double a = t * half_width;

  SparseMat identity(n, n);
  identity.setIdentity();
  const SparseMat scaled = (h - centre * identity) / half_width;

  // exp(-i a x) = J_0(a) + 2 sum_k (-i)^k J_k(a) T_k(x)
  Mat t_prev = Mat::Identity(n, n);
  Mat t_curr = scaled * Mat::Identity(n, n);
  Mat result = std::cyl_bessel_j(0.0, a) * t_prev;
  cplx phase = -kI;
  result += 2.0 * phase * std::cyl_bessel_j(1.0, a) * t_curr;
  const int k_floor = static_cast<int>(std::ceil(a)) + 2;
  for (int k = 2;; ++k) {
    const double weight = std::cyl_bessel_j(static_cast<double>(k), a);
    if (k > k_floor && std::abs(weight) < tol) {
      break;
    }
    if (k > 100000) {
      throw std::runtime_error("expm_i_hermitian_sparse: no convergence");
    }
    Mat t_next = 2.0 * (scaled * t_curr) - t_prev;
    phase *= -kI;
    result += 2.0 * phase * weight * t_next;
    t_prev = std::move(t_curr);
    t_curr = std::move(t_next);
  }
  return std::exp(-kI * (t * centre)) * result;
}

double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const Mat& h) { return max_abs(h - h.adjoint()); }

double unitarity_residual(const Mat& u) {
  return max_abs(u.adjoint() * u - Mat::Identity(u.rows(), u.cols()));
}

std::vector<cplx> polynomial_roots(std::span<const cplx> ascending,
                                   double trim) {
  double scale = 0.0;
  for (const cplx& c : ascending) {
    scale = std::max(scale, std::abs(c));
  }
  if (scale == 0.0) {
    throw std::domain_error("polynomial_roots: zero polynomial");
  }
  std::size_t degree = ascending.size() - 1;
  while (degree > 0 && std::abs(ascending[degree]) <= trim * scale) {
    --degree;
  }
  if (degree == 0) {
    return {};
  }
  const auto d = static_cast<Eigen::Index>(degree);
  Mat companion = Mat::Zero(d, d);
  const cplx lead = ascending[degree];
  for (Eigen::Index i = 1; i < d; ++i) {
    companion(i, i - 1) = 1.0;
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    companion(i, d - 1) = -ascending[static_cast<std::size_t>(i)] / lead;
  }
  Eigen::ComplexEigenSolver<Mat> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("polynomial_roots: eigensolver failed");
  }
  std::vector<cplx> roots(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + d);
  return roots;
}

double fold_phase(double phase) {
  double x = std::fmod(phase + kPi, kTwoPi);
  if (x < 0.0) {
    x += kTwoPi;
  }
  double out = x - kPi;
  if (out >= kPi) {
    out -= kTwoPi;
  }
  return out;
}

double circle_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace hofloq
