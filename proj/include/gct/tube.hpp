#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gct/morphisms.hpp"

namespace gct {

// Everything the tube algebra and the half-braiding code need to know about
// the pair (C0, C) or the twisted pair (D0, alpha).
//   relative: ends of grade g are the labels of degree g, no twist
//   full:     grading ignored, one grade, all labels at both places
//   twisted:  every label is an end in every grade, grade g twists by alpha_g
struct TubeSetting {
  enum class Kind { Relative, Full, Twisted };

  std::shared_ptr<const Calculus> calc;
  Kind kind = Kind::Relative;
  Group group;
  std::vector<int> tube_labels;
  std::vector<std::vector<int>> ends;     // per grade
  std::vector<std::vector<int>> twist;    // per grade, label permutation
  std::vector<std::vector<int>> action;   // per group element, transport of objects
  std::string action_name = "trivial";

  const Category& category() const { return calc->category(); }
  bool twisted() const { return kind == Kind::Twisted; }
  int grades() const { return static_cast<int>(ends.size()); }
  // Grade of a homogeneous word from the degrees of its letters; -1 for the
  // twisted setting where grades are not carried by labels.
  int word_grade(const Word& w) const;
  std::string kind_name() const;
};

// subcat must be closed under fusion and duals and lie in degree neutral.
TubeSetting relative_setting(const Category& cat, std::span<const int> subcat,
                             std::optional<GroupAction> action = std::nullopt);
TubeSetting full_setting(const Category& cat);
TubeSetting twisted_setting(const Category& d0, const GroupAction& action);
// "all", "degree0" or a comma separated list of labels.
TubeSetting setting_from_subcat(const Category& cat, const std::string& subcat,
                                std::optional<GroupAction> action = std::nullopt);

// Matrix unit of Hom(left tube, g[tube] right) at (channel, row, col); row
// indexes the target trees, col the source trees.
struct TubeBasisElement {
  int grade = 0;
  int left = 0;
  int tube = 0;
  int right = 0;
  int channel = 0;
  int row = 0;
  int col = 0;
  auto operator<=>(const TubeBasisElement&) const = default;
};

struct TubeComponent {
  int grade = 0;
  std::vector<TubeBasisElement> basis;
  std::vector<Mat> left_mult;  // left_mult[a](k, b) = c_{ab}^k
  Mat star;                    // star(b_j) = sum_k star(k, j) b_k, extended antilinearly
  Vec trace;
  Vec unit;

  int dim() const { return static_cast<int>(basis.size()); }
  Vec product(const Vec& x, const Vec& y) const;
  Vec star_of(const Vec& x) const { return star * x.conjugate(); }
  Mat left_matrix(const Vec& x) const;
  int index_of(const TubeBasisElement& b) const;
};

struct TubeAlgebra {
  TubeSetting setting;
  std::vector<TubeComponent> components;  // one per grade, in group order

  int dim() const;
  int offset(int grade) const;
  Morphism element(const TubeBasisElement& b) const;
};

TubeAlgebra build_tube(const TubeSetting& setting);
TubeAlgebra build_tube(const Category& cat, const std::string& subcat);
TubeAlgebra build_twisted_tube(const Category& d0, const GroupAction& action);

struct AlgebraReport {
  double associativity = 0;
  double star_involution = 0;
  double star_antimultiplicative = 0;
  double trace_tracial = 0;
  double trace_min_eigenvalue = 0;
  double unit = 0;
  bool ok(double tol) const;
};

AlgebraReport verify_algebra(const TubeAlgebra& tube);
AlgebraReport verify_component(const TubeComponent& comp);

struct WedderburnBlock {
  Vec projection;
  int rank = 0;
  std::map<int, int> corner;  // n_i(pi) for each end label pi
};

struct WedderburnData {
  int grade = 0;
  std::vector<WedderburnBlock> blocks;
  std::uint64_t seed = 0;
  int attempts = 0;
  double residual = 0;  // idempotent / orthogonality / completeness defect
};

constexpr double kClusterGap = 1e-6;

WedderburnData decompose(const TubeAlgebra& tube, int grade, std::uint64_t seed);
// Seed used for one grade of a run started with `seed`.
std::uint64_t grade_seed(std::uint64_t seed, int grade);

struct IsoReport {
  double max_deviation = 0;
  int dim = 0;
};

// Compares Tube^G(d0) grade g with the relative tube of the crossed
// extension over its neutral sheet in grade g^{-1}.
IsoReport twisted_untwisted_iso(const TubeAlgebra& twisted, const TubeAlgebra& relative);

}  // namespace gct
