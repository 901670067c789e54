#include "test_support.hpp"

#include <algorithm>
#include <limits>

#include <unistd.h>

namespace hofloq::testing {

Mat random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  return q;
}

Mat random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

double phase_multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.empty()) return 0.0;
  for (double& x : a) x = fold_phase(x);
  for (double& x : b) x = fold_phase(x);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  // Phases near -pi may sit on either end; try every cyclic alignment of b and keep the best.
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  for (std::size_t shift : {std::size_t{0}, std::size_t{1}, n - 1, std::size_t{2}, n - 2}) {
    if (shift >= n) continue;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, circle_distance(a[i], b[(i + shift) % n]));
    best = std::min(best, worst);
  }
  return best;
}

double value_multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<double> bloch_phases_on_grid(const ModelParams& p, int length, Frame frame) {
  std::vector<double> out;
  for (int j = 0; j < length; ++j) {
    const double k = fold_phase(kTwoPi * j / length);
    const auto s = eig_unitary(floquet_x_bloch(k, p, frame).matrix);
    out.insert(out.end(), s.phases.begin(), s.phases.end());
  }
  return out;
}

RVec realignment_singular_values(const Mat& u, int dim_a, int dim_b) {
  Mat r(dim_a * dim_a, dim_b * dim_b);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j)
      for (int k = 0; k < dim_b; ++k)
        for (int l = 0; l < dim_b; ++l) r(i * dim_a + j, k * dim_b + l) = u(i * dim_b + k, j * dim_b + l);
  return Eigen::JacobiSVD<Mat>(r).singularValues();
}

std::filesystem::path scratch_dir(const std::string& tag) {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path() /
             ("hofloq_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace hofloq::testing
