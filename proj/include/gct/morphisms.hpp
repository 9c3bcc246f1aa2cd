#pragma once

#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "gct/fusion_core.hpp"

namespace gct {

// A tensor word of simple labels; the empty word is the unit object.
using Word = std::vector<int>;

Word concat(const Word& a, const Word& b);

// Direct sum of words. Summand order is significant.
struct Object {
  std::vector<Word> words;

  Object() = default;
  explicit Object(std::vector<Word> w) : words(std::move(w)) {}
  static Object unit() { return Object({Word{}}); }
  static Object letter(int a) { return Object({Word{a}}); }
  static Object word(Word w) { return Object({std::move(w)}); }
  static Object letters(std::span<const int> labels);

  int size() const { return static_cast<int>(words.size()); }
  bool is_letter_sum() const;
  bool operator==(const Object&) const = default;
};

// Summands ordered lexicographically, left factor outermost.
Object tensor(const Object& x, const Object& y);
Object relabel(const Object& x, std::span<const int> perm);
Object direct_sum(const Object& x, const Object& y);

// A morphism between objects, stored channel by channel.  blocks[c] maps
// Hom(c, source) to Hom(c, target) in the tree bases, so it has
// dim Hom(c, target) rows and dim Hom(c, source) columns.
struct Morphism {
  Object source;
  Object target;
  std::vector<Mat> blocks;
};

Morphism operator+(const Morphism& f, const Morphism& g);
Morphism operator-(const Morphism& f, const Morphism& g);
Morphism operator*(cplx s, const Morphism& f);
double max_abs(const Morphism& f);
// Hilbert-Schmidt inner product <f, g> = sum_c tr(f_c^* g_c).
cplx hs_inner(const Morphism& f, const Morphism& g);

// Left-nested fusion tree for a word w = (a_1..a_n) into c: channels[k] is the
// channel after fusing the first k letters (channels[0] = unit), vertices[k] the
// multiplicity index of the vertex (channels[k], a_{k+1} -> channels[k+1]).
struct Tree {
  std::vector<int> channels;
  std::vector<int> vertices;
  auto operator<=>(const Tree&) const = default;
};

struct ConjugateSolution {
  Morphism R;     // unit -> dual(x) x
  Morphism Rbar;  // unit -> x dual(x)
  double residual = 0;
  int fs_indicator = 0;  // +-1 for self-dual simples, 0 otherwise
};

// Skeletal calculus on tensor words over a fusion category.  All caches are
// internal; instances are not safe for concurrent use.
class Calculus {
public:
  explicit Calculus(const Category& cat);

  const Category& category() const { return cat_; }
  int rank() const { return cat_.rank(); }

  int hom_dim(int c, const Word& w) const;
  int dim(const Object& x, int c) const;
  const std::vector<Tree>& trees(const Word& w, int c) const;
  int tree_index(const Word& w, int c, const Tree& t) const;
  // offsets of the summands of x inside Hom(c, x); size x.size()+1
  std::vector<int> offsets(const Object& x, int c) const;

  Morphism zero(const Object& source, const Object& target) const;
  Morphism identity(const Object& x) const;
  Morphism compose(const Morphism& f, const Morphism& g) const;  // f after g
  Morphism adjoint(const Morphism& f) const;

  Morphism left_tensor(int letter, const Morphism& f) const;
  Morphism left_tensor(const Word& w, const Morphism& f) const;
  Morphism left_tensor(const Object& x, const Morphism& f) const;
  Morphism right_tensor(const Morphism& f, int letter) const;
  Morphism right_tensor(const Morphism& f, const Word& w) const;
  Morphism right_tensor(const Morphism& f, const Object& x) const;
  Morphism tensor(const Morphism& f, const Morphism& g) const;

  // Image under a label permutation coming from a strict action.
  Morphism relabel(const Morphism& f, std::span<const int> perm) const;

  // Copies `piece` into `into`; summand i of piece.target (source) lands on
  // summand tgt[i] (src[i]) of into.target (source).
  void place(Morphism& into, const Morphism& piece, std::span<const int> tgt,
             std::span<const int> src) const;
  // The part of f between one source summand and one target summand.
  Morphism restrict(const Morphism& f, int tgt, int src) const;
  Morphism direct_sum(const std::vector<Morphism>& parts) const;

  // Tree basis of Hom(c, w) as morphisms c -> w; orthonormal.
  std::vector<Morphism> onb(int c, const Word& w) const;

  const ConjugateSolution& conjugate_solution(int a) const;
  ConjugateSolution conjugate_solution(const Object& letters) const;
  Object dual(const Object& letters) const;

  // For T : zeta -> pi xi, the rescaled bend
  // sqrt(d(xi)/d(zeta)) (1 (x) Rbar_xi^*)(1 (x) T (x) 1)(R_zeta (x) 1) : dual(xi) -> dual(zeta) pi.
  Morphism frobenius_transpose(const Morphism& t) const;
  Morphism frobenius_untranspose(const Morphism& s) const;
  // For T : x -> y between letter sums, R_x^* (1 (x) T^* (x) 1)(1 (x) Rbar_y) : dual(x) -> dual(y).
  Morphism hat(const Morphism& t) const;

  // Categorical trace of an endomorphism.
  cplx trace(const Morphism& f) const;
  double dimension(const Object& x) const;

private:
  const Mat& left_move(int letter, const Word& w, int c) const;
  int channel_offset(const Word& w, int c, int e) const;
  cplx f_value(int a, int b, int x, int d, std::array<int, 3> row, std::array<int, 3> col) const;

  Category cat_;
  mutable std::map<std::pair<Word, int>, std::vector<Tree>> trees_;
  mutable std::map<std::tuple<int, Word, int>, Mat> moves_;
  mutable std::map<int, ConjugateSolution> conj_;
};

}  // namespace gct
