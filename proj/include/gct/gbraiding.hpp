#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "gct/center.hpp"

namespace gct {

// One summand of a decomposition: an isometry simples[simple].object -> object.
struct Piece {
  int simple = 0;
  Morphism iso;
};
using Decomposition = std::vector<Piece>;

// A fusion-closed list of simple half-braidings with cached products,
// transports and decompositions.
class SimpleCatalog {
public:
  SimpleCatalog(TubeSetting setting, std::vector<HalfBraiding> simples);

  const TubeSetting& setting() const { return setting_; }
  const std::vector<HalfBraiding>& simples() const { return simples_; }
  const HalfBraiding& operator[](int i) const { return simples_[i]; }
  int size() const { return static_cast<int>(simples_.size()); }
  const Calculus& calc() const { return *setting_.calc; }

  // Orthogonal isometries from simples; throws unless they sum to the identity.
  Decomposition decompose(const HalfBraiding& x) const;
  Decomposition trivial_decomposition(int i) const;
  int index_of(const HalfBraiding& x) const;  // isomorphic simple or -1

  const HalfBraiding& product(int i, int j) const;
  const Decomposition& product_decomposition(int i, int j) const;
  const HalfBraiding& transported(int k, int i) const;
  const Decomposition& transported_decomposition(int k, int i) const;
  // N[i][j][k] = dim Hom_Z(simple k, simple i (x) simple j)
  std::vector<std::vector<std::vector<int>>> fusion_rules() const;

private:
  TubeSetting setting_;
  std::vector<HalfBraiding> simples_;
  mutable std::map<std::pair<int, int>, HalfBraiding> products_;
  mutable std::map<std::pair<int, int>, Decomposition> product_dec_;
  mutable std::map<std::pair<int, int>, HalfBraiding> transports_;
  mutable std::map<std::pair<int, int>, Decomposition> transport_dec_;
};

// E(i, j) for every ordered pair of simples.  Forward entries map
// X_i X_j -> g_i[X_j] X_i; reverse entries X_i X_j -> X_j h_j^{-1}[X_i].
struct GBraidingData {
  bool reverse = false;
  std::map<std::pair<int, int>, Morphism> E;
};

GBraidingData build_G_braiding(const SimpleCatalog& cat);

// E extended to composite objects through decompositions of both slots.
Morphism extend_braiding(const SimpleCatalog& cat, const GBraidingData& br, const HalfBraiding& a,
                         const Decomposition& da, const HalfBraiding& b, const Decomposition& db);

struct GBraidingReport {
  double bf0 = 0;
  double bf1 = 0;
  double bf2 = 0;
  double bf3 = 0;
  long checked = 0;
  double max() const { return std::max({bf0, bf1, bf2, bf3}); }
};

// Forward data: BF0-BF3.  Reverse data: the reverse variant with slots
// (XY, Y h^{-1}[X]), multiplicativity in both slots and BF3.
GBraidingReport verify_G_braiding(const SimpleCatalog& cat, const GBraidingData& br);

// E^-(X, Y) = E^+(Y, h^{-1}[X])^*.
GBraidingData reverse_braiding(const SimpleCatalog& cat, const GBraidingData& forward);
// Inverse of reverse_braiding: E^+(X, Y) = E^-(g[Y], X)^*.
GBraidingData forward_from_reverse(const SimpleCatalog& cat, const GBraidingData& reverse);

}  // namespace gct
