#include "gct/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gct {

Mat nullspace(const Mat& a, double tol) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(n, n);
  Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) >= tol * top) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

std::vector<std::vector<int>> cluster_values(const std::vector<double>& values, double gap) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i == 0 || values[idx[i]] - values[idx[i - 1]] > gap) out.emplace_back();
    out.back().push_back(idx[i]);
  }
  return out;
}

double cluster_separation(const std::vector<double>& values, const std::vector<std::vector<int>>& clusters) {
  double sep = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < clusters.size(); ++i) {
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (int k : clusters[i]) hi = std::max(hi, values[k]);
    for (int k : clusters[i + 1]) lo = std::min(lo, values[k]);
    sep = std::min(sep, lo - hi);
  }
  return sep;
}

Vec random_complex(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    double re = nd(rng);
    double im = nd(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace gct
