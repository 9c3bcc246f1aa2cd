#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <filesystem>
#include <map>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "gct/errors.hpp"
#include "gct/group.hpp"

namespace gct {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// One F-move block F^{abc}_d.  Rows are left-nested trees (ab->e;mu)(ec->d;nu),
// columns right-nested trees (bc->f;rho)(af->d;sigma), both listed as
// (channel, first vertex, second vertex) in lexicographic order:
//   left[row] = sum_col matrix(row, col) * right[col].
struct FBlock {
  std::vector<std::array<int, 3>> rows;
  std::vector<std::array<int, 3>> cols;
  Mat matrix;

  int row_index(int e, int mu, int nu) const;
  int col_index(int f, int rho, int sigma) const;
};

// Strict action of a group on the label set. perm[g][a] is the image of a.
struct GroupAction {
  std::string name;
  std::vector<std::vector<int>> perm;
};

class Category {
public:
  std::string name;
  std::vector<std::string> labels;
  std::vector<int> dual;
  std::vector<double> qdim;
  Group group;
  std::vector<int> grading;
  std::map<std::array<int, 4>, FBlock> F;
  std::vector<GroupAction> actions;

  int rank() const { return static_cast<int>(labels.size()); }
  int N(int a, int b, int c) const { return fusion_[(a * rank() + b) * rank() + c]; }
  void set_N(int a, int b, int c, int v);
  void resize_fusion() { fusion_.assign(rank() * rank() * rank(), 0); }
  const FBlock& f_block(int a, int b, int c, int d) const;
  int degree(int a) const { return grading[a]; }
  std::vector<int> labels_of_degree(int g) const;
  int label_index(const std::string& name) const;
  // Looks up an action by name; "trivial" always exists.
  GroupAction action(const std::string& name) const;
  GroupAction trivial_action() const;
  double dim(std::span<const int> subset) const;
  double global_dim() const;

private:
  std::vector<int> fusion_;
};

Category parse_category(const nlohmann::json& doc);
Category load_category(const std::filesystem::path& path);

struct PentagonReport {
  double residual = 0;
  std::array<int, 5> worst{};
  long checked = 0;
};

// Checks all pentagon equations; throws ValidationError above tol.
PentagonReport verify_pentagon(const Category& cat, double tol);

// Perron-Frobenius eigenvector of the fusion rules, normalised at the unit.
std::vector<double> fp_dimensions(const Category& cat);

// Homomorphism property and invariance of N, dual, qdim, F and grading.
void verify_action(const Category& cat, const GroupAction& action, double tol);

// The G-graded extension with labels (g,a) at index g*rank0 + a.
Category build_crossed_extension(const Category& base, const GroupAction& action);

}  // namespace gct
