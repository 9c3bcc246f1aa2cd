#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gct/tube.hpp"

namespace gct {

// Object of the (relative or twisted) centre: an object of C together with
// E(pi) : object pi -> g[pi] object for every tube label pi, where g is the
// twist of `grade` (the identity in untwisted settings).
struct HalfBraiding {
  Object object;
  int grade = 0;
  std::map<int, Morphism> E;
};

struct HalfBraidingReport {
  double multiplicativity = 0;  // naturality and multiplicativity in one sweep
  double unitarity = 0;
  double unit = 0;              // E(1) = identity
  std::vector<int> non_square;  // tube labels whose E entry has a non-square channel block
  double max() const { return std::max({multiplicativity, unitarity, unit}); }
};

HalfBraidingReport verify_half_braiding(const TubeSetting& s, const HalfBraiding& x);

// E on an arbitrary object built from tube labels, by multiplicativity.
Morphism evaluate(const TubeSetting& s, const HalfBraiding& x, const Object& y);

// Orthonormal (Hilbert-Schmidt) basis of Hom_Z(x, y).  Empty across grades.
std::vector<Morphism> hom_center(const TubeSetting& s, const HalfBraiding& x, const HalfBraiding& y);
// Largest defect of f as a morphism of half-braidings x -> y.
double center_defect(const TubeSetting& s, const HalfBraiding& x, const HalfBraiding& y, const Morphism& f);

HalfBraiding conjugate_half_braiding(const TubeSetting& s, const HalfBraiding& x);
HalfBraiding tensor_half_braidings(const TubeSetting& s, const HalfBraiding& x, const HalfBraiding& y);
// k[x]: transport along the group action.
HalfBraiding act_on_center(const TubeSetting& s, const HalfBraiding& x, int k);
// Restriction along an isometry v : w -> x.object.
HalfBraiding restrict_half_braiding(const TubeSetting& s, const HalfBraiding& x, const Morphism& v);
// Transport of the half-braiding along a unitary u : x.object -> target.
HalfBraiding conjugate_by(const TubeSetting& s, const HalfBraiding& x, const Morphism& u);
HalfBraiding unit_half_braiding(const TubeSetting& s);

// The induced object  sum_{xi in C0} g[xi] mu dual(xi)  of the given grade.
HalfBraiding induce_object(const TubeSetting& s, int mu, int grade);

// Relative settings only: the family theta^(k) = sum_{xi in C_k} xi mu dual(xi)
// with Z^h(pi) : theta^(hk) pi -> pi theta^(k).  Returns the largest defect of
// the multiplicativity law across grades.
double verify_induced_family(const TubeSetting& s, int mu);

struct CenterSimple {
  HalfBraiding hb;
  int block = -1;  // index into the Wedderburn blocks of its grade
  double qdim = 0;
};

struct CenterGrade {
  int grade = 0;
  WedderburnData wedderburn;
  std::vector<CenterSimple> simples;
};

struct CenterData {
  TubeAlgebra tube;
  std::vector<CenterGrade> grades;
  std::uint64_t seed = 0;

  std::vector<const CenterSimple*> all() const;
  int count() const;
};

// Splits induced objects into simples, one per Wedderburn block, ordered by block.
std::vector<CenterSimple> extract_simples(const TubeAlgebra& tube, int grade, const WedderburnData& wd,
                                          std::uint64_t seed);
CenterData compute_center(const TubeSetting& s, std::uint64_t seed);

// Index of the simple in `simples` isomorphic to x (same grade), or -1.
int find_isomorphic(const TubeSetting& s, const std::vector<const CenterSimple*>& simples, const HalfBraiding& x);

// Tube representation on  sum_rho Hom(rho, x.object)  for the given grade.
Mat tube_representation(const TubeAlgebra& tube, const HalfBraiding& x, const Vec& element);

}  // namespace gct
