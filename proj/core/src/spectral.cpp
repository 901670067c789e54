#include "hofloq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <stdexcept>

namespace hofloq {

struct QuasienergySpectrum::Factors {
  QuasienergySpectrum x;
  QuasienergySpectrum y;
};

namespace {

constexpr double kClusterTol = 1e-8;

double column_ipr(const Mat& v, Eigen::Index j) {
  return v.col(j).cwiseAbs2().cwiseAbs2().sum();
}

std::vector<std::size_t> phase_order(const std::vector<double>& phases) {
  std::vector<std::size_t> order(phases.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return phases[a] < phases[b]; });
  return order;
}

double target_distance(double value, double target, OperatorKind kind) {
  return kind == OperatorKind::floquet ? circle_distance(value, target)
                                       : std::abs(value - target);
}

}  // namespace

// --- QuasienergySpectrum -------------------------------------------------------

QuasienergySpectrum QuasienergySpectrum::dense(std::vector<double> phases, Mat vectors,
                                               OperatorKind kind) {
  if (static_cast<std::size_t>(vectors.cols()) != phases.size())
    throw std::invalid_argument("eigenvector count does not match eigenvalue count");
  const auto order = phase_order(phases);
  QuasienergySpectrum s;
  s.kind = kind;
  Mat sorted(vectors.rows(), vectors.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.col(i) = vectors.col(order[i]);
    s.phases.push_back(phases[order[i]]);
    s.iprs.push_back(column_ipr(sorted, i));
  }
  s.dense_ = std::make_shared<const Mat>(std::move(sorted));
  return s;
}

QuasienergySpectrum QuasienergySpectrum::product(const QuasienergySpectrum& x,
                                                 const QuasienergySpectrum& y) {
  if (x.kind != y.kind) throw std::invalid_argument("factor spectra of different kinds");
  std::vector<double> phases;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  phases.reserve(x.size() * y.size());
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b) {
      const double v = x.phases[a] + y.phases[b];
      phases.push_back(x.kind == OperatorKind::floquet ? fold_phase(v) : v);
      pairs.emplace_back(a, b);
    }
  const auto order = phase_order(phases);
  QuasienergySpectrum s;
  s.kind = x.kind;
  for (std::size_t i : order) {
    s.phases.push_back(phases[i]);
    s.iprs.push_back(x.iprs[pairs[i].first] * y.iprs[pairs[i].second]);
    s.pairs_.push_back(pairs[i]);
  }
  if (x.has_vectors() && y.has_vectors())
    s.factors_ = std::make_shared<const Factors>(Factors{x, y});
  return s;
}

QuasienergySpectrum QuasienergySpectrum::values_only(std::vector<double> phases,
                                                     std::vector<double> iprs,
                                                     OperatorKind kind) {
  if (phases.size() != iprs.size()) throw std::invalid_argument("phase/IPR length mismatch");
  const auto order = phase_order(phases);
  QuasienergySpectrum s;
  s.kind = kind;
  for (std::size_t i : order) {
    s.phases.push_back(phases[i]);
    s.iprs.push_back(iprs[i]);
  }
  return s;
}

bool QuasienergySpectrum::has_vectors() const { return dense_ || factors_; }

Vec QuasienergySpectrum::vector(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("state index out of range");
  if (dense_) return dense_->col(i);
  if (factors_) {
    const auto [a, b] = pairs_[i];
    return kron(factors_->x.vector(a), factors_->y.vector(b));
  }
  throw std::logic_error("spectrum carries no eigenvectors");
}

Mat QuasienergySpectrum::vectors(const std::vector<std::size_t>& states) const {
  if (states.empty()) return Mat();
  Vec first = vector(states.front());
  Mat out(first.size(), static_cast<Eigen::Index>(states.size()));
  out.col(0) = first;
  for (std::size_t j = 1; j < states.size(); ++j) out.col(j) = vector(states[j]);
  return out;
}

// --- Decompositions ---------------------------------------------------------------

QuasienergySpectrum eig_unitary(const Mat& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("eig_unitary needs a square matrix");
  const double unit = unitarity_residual(u);
  if (unit > 1e-10)
    throw std::invalid_argument("operator is not unitary (residual " + std::to_string(unit) + ")");
  const Mat herm = 0.5 * (u + u.adjoint());
  HermitianEigen stage1 = eigh(herm);
  Mat vecs = std::move(stage1.vectors);
  const Eigen::Index n = u.rows();
  // Split each cluster of nearly equal cos(eps) with the sine: the restricted
  // cos + sin operator separates mirror pairs eps, -eps as well as close
  // neighbours on the circle.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
  std::vector<Eigen::Index> columns;
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index end = start + 1;
    while (end < n && stage1.values(end) - stage1.values(end - 1) < kClusterTol) ++end;
    if (end - start > 1) {
      clusters.emplace_back(start, end);
      for (Eigen::Index j = start; j < end; ++j) columns.push_back(j);
    }
    start = end;
  }
  if (!clusters.empty()) {
    const Mat selected = vecs(Eigen::all, columns);
    // (herm + anti) = (1 + i) U / 2 + (1 - i) U^dagger / 2, applied to the clustered columns only
    const Mat mixed = (0.5 * cplx(1, -1)) * (u * selected) + (0.5 * cplx(1, 1)) * (u.adjoint() * selected);
    Eigen::Index offset = 0;
    for (const auto& [start, end] : clusters) {
      const Eigen::Index m = end - start;
      const Mat block = vecs.middleCols(start, m);
      const Mat restricted = block.adjoint() * mixed.middleCols(offset, m);
      const HermitianEigen local = eigh(0.5 * (restricted + restricted.adjoint()));
      vecs.middleCols(start, m) = block * local.vectors;
      offset += m;
    }
  }
  const Mat uv = u * vecs;
  std::vector<double> phases(n);
  for (Eigen::Index j = 0; j < n; ++j)
    phases[j] = fold_phase(-std::arg(vecs.col(j).dot(uv.col(j))));
  return QuasienergySpectrum::dense(std::move(phases), std::move(vecs), OperatorKind::floquet);
}

QuasienergySpectrum eig_unitary(const LatticeOperator& u) {
  if (u.kind() != OperatorKind::floquet)
    throw std::invalid_argument("eig_unitary expects a Floquet operator");
  if (u.is_factorized())
    return QuasienergySpectrum::product(eig_unitary(u.factor_x().matrix()),
                                        eig_unitary(u.factor_y().matrix()));
  return eig_unitary(u.matrix());
}

namespace {

QuasienergySpectrum eig_hermitian_matrix(const Mat& h) {
  const double herm = hermiticity_residual(h);
  if (herm > 1e-12)
    throw std::invalid_argument("operator is not Hermitian (residual " + std::to_string(herm) + ")");
  HermitianEigen e = eigh(h);
  std::vector<double> values(e.values.data(), e.values.data() + e.values.size());
  return QuasienergySpectrum::dense(std::move(values), std::move(e.vectors),
                                    OperatorKind::hamiltonian);
}

}  // namespace

QuasienergySpectrum eig_hermitian(const LatticeOperator& h) {
  if (h.kind() != OperatorKind::hamiltonian)
    throw std::invalid_argument("eig_hermitian expects a Hamiltonian");
  if (h.is_factorized())
    return QuasienergySpectrum::product(eig_hermitian_matrix(h.factor_x().matrix()),
                                        eig_hermitian_matrix(h.factor_y().matrix()));
  return eig_hermitian_matrix(h.matrix());
}

double ipr(const Vec& v) {
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-8) throw std::invalid_argument("ipr needs a normalized vector");
  return v.cwiseAbs2().cwiseAbs2().sum();
}

double eigen_residual(const Mat& op, const QuasienergySpectrum& spec) {
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Vec v = spec.vector(i);
    const cplx lambda = spec.kind == OperatorKind::floquet ? std::exp(-kI * spec.phases[i])
                                                           : cplx(spec.phases[i]);
    worst = std::max(worst, (op * v - lambda * v).norm());
  }
  return worst;
}

GapReport gaps(const QuasienergySpectrum& spec) {
  if (spec.size() == 0) throw std::invalid_argument("gaps of an empty spectrum");
  GapReport g{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (double e : spec.phases) {
    g.gap0 = std::min(g.gap0, target_distance(e, 0.0, spec.kind));
    if (spec.kind == OperatorKind::floquet) g.gap_pi = std::min(g.gap_pi, circle_distance(e, kPi));
  }
  return g;
}

double default_ipr_min(const QuasienergySpectrum& spec) {
  if (spec.size() == 0) throw std::invalid_argument("empty spectrum");
  std::vector<double> v = spec.iprs;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double median = v[mid];
  if (v.size() % 2 == 0) {
    const double lower = *std::max_element(v.begin(), v.begin() + mid);
    median = 0.5 * (median + lower);
  }
  return 10.0 * median;
}

std::vector<std::size_t> select_modes(const QuasienergySpectrum& spec, double target,
                                      double eps_tol, double ipr_min) {
  if (!(eps_tol > 0.0)) throw std::invalid_argument("eps_tol must be positive");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (target_distance(spec.phases[i], target, spec.kind) < eps_tol && spec.iprs[i] > ipr_min)
      out.push_back(i);
  return out;
}

int count_modes(const QuasienergySpectrum& spec, double target, double eps_tol, double ipr_min) {
  return static_cast<int>(select_modes(spec, target, eps_tol, ipr_min).size());
}

QuasienergySpectrum mixed_bc_spectrum(const ModelParams& p, const Lattice2D& lattice,
                                      Frame frame) {
  const bool x_periodic = lattice.bc_x == Boundary::periodic;
  const bool y_periodic = lattice.bc_y == Boundary::periodic;
  if (x_periodic == y_periodic)
    throw std::invalid_argument("mixed_bc_spectrum needs exactly one periodic direction");
  const bool floquet = p.protocol != Protocol::static_model;
  const OperatorKind kind = floquet ? OperatorKind::floquet : OperatorKind::hamiltonian;

  QuasienergySpectrum open;
  if (x_periodic) {
    open = floquet ? eig_unitary(floquet_y_realspace(lattice.ly, lattice.bc_y, p))
                   : eig_hermitian(realspace_h(Chain::ssh, lattice.ly, lattice.bc_y, p));
  } else {
    open = floquet ? eig_unitary(floquet_x_realspace(lattice.lx, lattice.bc_x, p, frame))
                   : eig_hermitian(realspace_h(Chain::creutz, lattice.lx, lattice.bc_x, p));
  }
  const int periodic_cells = x_periodic ? lattice.lx : lattice.ly;
  if (periodic_cells < 1) throw std::invalid_argument("periodic direction needs cells");

  std::vector<double> phases, iprs;
  for (int j = 0; j < periodic_cells; ++j) {
    const double k = fold_phase(kTwoPi * j / periodic_cells);
    Mat bloch;
    if (x_periodic)
      bloch = floquet ? floquet_x_bloch(k, p, frame).matrix : bloch_hx(k, p).matrix;
    else
      bloch = floquet ? floquet_y_bloch(k, p).matrix : bloch_hy(k, p).matrix;
    QuasienergySpectrum block;
    if (floquet) {
      block = eig_unitary(bloch);
    } else {
      block = eig_hermitian_matrix(bloch);
    }
    for (std::size_t a = 0; a < block.size(); ++a)
      for (std::size_t b = 0; b < open.size(); ++b) {
        const double v = block.phases[a] + open.phases[b];
        phases.push_back(floquet ? fold_phase(v) : v);
        iprs.push_back(block.iprs[a] * open.iprs[b] / periodic_cells);
      }
  }
  return QuasienergySpectrum::values_only(std::move(phases), std::move(iprs), kind);
}

}  // namespace hofloq
