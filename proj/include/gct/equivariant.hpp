#pragma once

#include <string>
#include <vector>

#include "gct/gbraiding.hpp"

namespace gct {

// A half-braiding together with unitary isomorphisms cocycle[k] : base -> k[base]
// in the centre, one per group element, with k[c_l] c_k = c_{kl}.
struct EquivariantObject {
  HalfBraiding base;
  std::vector<Morphism> cocycle;
};

struct EquivariantReport {
  double membership = 0;  // each c_k is a morphism of half-braidings
  double unitarity = 0;
  double cocycle = 0;
  double unit = 0;
  double conjugate = 0;   // the same checks on the conjugate object
  double max() const { return std::max({membership, unitarity, cocycle, unit, conjugate}); }
};

EquivariantReport verify_equivariant(const TubeSetting& s, const EquivariantObject& x);
EquivariantObject conjugate_equivariant(const TubeSetting& s, const EquivariantObject& x);
EquivariantObject tensor_equivariant(const TubeSetting& s, const EquivariantObject& x, const EquivariantObject& y);
// Orthonormal basis of the morphisms T of half-braidings with k[T] c^x_k = c^y_k T.
std::vector<Morphism> hom_equivariant(const TubeSetting& s, const EquivariantObject& x, const EquivariantObject& y);
// Multiplies the cocycle by a one-dimensional character of G.
EquivariantObject scale_cocycle(const TubeSetting& s, const EquivariantObject& x, const std::vector<cplx>& character);

// Cocycle of a simple over its cyclic stabilizer, indexed by group element
// (entries outside the stabilizer are empty).  `power` selects the character
// generator -> exp(2 pi i power / |stabilizer|).
std::vector<Morphism> stabilizer_cocycle(const TubeSetting& s, const HalfBraiding& x, const std::vector<int>& stabilizer,
                                         int power);
// Sum over coset representatives r of r[x], with the cocycle induced from
// one on the stabilizer.
EquivariantObject induce_equivariant(const TubeSetting& s, const HalfBraiding& x, const std::vector<int>& stabilizer,
                                     const std::vector<Morphism>& stab_cocycle);
// Induction from the trivial subgroup: sum over all g of g[x] with permutation cocycle.
EquivariantObject regular_equivariant(const TubeSetting& s, const HalfBraiding& x);

struct Orbit {
  std::vector<int> members;     // catalog indices
  std::vector<int> stabilizer;  // of the first member
  int irreps = 0;               // conjugacy classes of the stabilizer
};

struct OrbitReport {
  std::vector<Orbit> orbits;
  int count = 0;
  std::string assumption = "stabilizer obstruction assumed trivial";
};

OrbitReport equivariant_count(const SimpleCatalog& cat);

struct EquivariantSimple {
  EquivariantObject object;
  int orbit = 0;
  int character = 0;
};

// One object per (orbit, character of the stabilizer); stabilizers must be cyclic.
std::vector<EquivariantSimple> equivariant_simples(const SimpleCatalog& cat, const OrbitReport& orbits);

// (c^y_g^* (x) 1) E(x, y) : xy -> yx, g the grade of x.
Morphism equivariant_braiding(const TubeSetting& s, const EquivariantObject& x, const EquivariantObject& y);

struct EquivariantBraidingReport {
  double equivariance = 0;
  double membership = 0;
  double unitarity = 0;
  double hexagon = 0;
  double unit = 0;
  double max_monodromy = 0;  // largest |E(y,x)E(x,y) - 1|, nonzero unless symmetric
  long checked = 0;
  double max() const { return std::max({equivariance, membership, unitarity, hexagon, unit}); }
};

EquivariantBraidingReport verify_equivariant_braiding(const TubeSetting& s, const std::vector<EquivariantObject>& xs);

}  // namespace gct
