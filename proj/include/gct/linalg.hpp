#pragma once

#include <random>
#include <vector>

#include "gct/fusion_core.hpp"

namespace gct {

// Orthonormal basis (as columns) of the kernel of a.  Singular values below
// tol * max(1, largest singular value) count as zero.
Mat nullspace(const Mat& a, double tol);

// Groups sorted real values into runs whose neighbours differ by at most gap.
std::vector<std::vector<int>> cluster_values(const std::vector<double>& values, double gap);

// Smallest distance between distinct clusters, or +inf for a single cluster.
double cluster_separation(const std::vector<double>& values, const std::vector<std::vector<int>>& clusters);

Vec random_complex(std::mt19937_64& rng, int n);

double max_abs(const Mat& m);

}  // namespace gct
