#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "gct/errors.hpp"
#include "support.hpp"

using namespace gct;
using namespace gct::testing;

namespace {

const char* kExamples[] = {"vec_z2/full", "ising/degree0", "ising/full",     "fib/full",
                           "vec_s3/full", "vec_z3/inversion", "vec_z2/trivial", "s3/degree0"};

HalfBraiding sum_of(const TubeSetting& s, const HalfBraiding& x, const HalfBraiding& y) {
  HalfBraiding out;
  out.grade = x.grade;
  out.object = direct_sum(x.object, y.object);
  for (int p : s.tube_labels) out.E.emplace(p, s.calc->direct_sum({x.E.at(p), y.E.at(p)}));
  return out;
}

// sigma in the relative Ising setting with E(1) = 1 and E(psi) = c.
HalfBraiding ising_sigma(const TubeSetting& s, cplx c) {
  const int sigma = 2;
  HalfBraiding x;
  x.grade = 1;
  x.object = Object::letter(sigma);
  for (int p : s.tube_labels) {
    Morphism e = s.calc->zero(Object::word({sigma, p}), Object::word({p, sigma}));
    e.blocks[sigma](0, 0) = p == 0 ? cplx(1) : c;
    x.E.emplace(p, std::move(e));
  }
  return x;
}

std::vector<const HalfBraiding*> of_grade(const SimpleCatalog& cat, int g) {
  std::vector<const HalfBraiding*> out;
  for (const auto& x : cat.simples())
    if (x.grade == g) out.push_back(&x);
  return out;
}

}  // namespace

TEST(Center, SimplesBijectWithBlocksAndPassVerification) {
  for (const char* key : kExamples) {
    const Example& ex = example(key);
    for (const auto& cg : ex.center.grades) {
      EXPECT_EQ(cg.simples.size(), cg.wedderburn.blocks.size()) << key;
      for (const auto& cs : cg.simples) {
        EXPECT_LT(verify_half_braiding(ex.catalog->setting(), cs.hb).max(), 1e-8) << key;
        EXPECT_EQ(cs.hb.object.size(), cg.wedderburn.blocks[cs.block].rank) << key;
        EXPECT_TRUE(cs.hb.object.is_letter_sum());
      }
    }
  }
}

TEST(Center, ExpectedCounts) {
  EXPECT_EQ(example("vec_z2/full").center.count(), 4);
  EXPECT_EQ(example("ising/degree0").center.grades[0].simples.size(), 4u);
  EXPECT_EQ(example("ising/degree0").center.grades[1].simples.size(), 2u);
  EXPECT_EQ(example("fib/full").center.count(), 4);
  EXPECT_EQ(example("vec_s3/full").center.count(), double_simples(label_group(category("vec_s3"))));
  EXPECT_EQ(example("vec_z3/inversion").center.grades[0].simples.size(), 9u);
  EXPECT_EQ(example("vec_z3/inversion").center.grades[1].simples.size(), 1u);
}

TEST(Center, SchurOrthogonality) {
  for (const char* key : kExamples) {
    const Example& ex = example(key);
    const auto& s = ex.catalog->setting();
    for (int i = 0; i < ex.catalog->size(); ++i)
      for (int j = 0; j < ex.catalog->size(); ++j)
        EXPECT_EQ(hom_center(s, (*ex.catalog)[i], (*ex.catalog)[j]).size(), i == j ? 1u : 0u) << key;
  }
}

TEST(Center, HomIsAdditive) {
  const Example& ex = example("fib/full");
  const auto& s = ex.catalog->setting();
  for (const auto& x : ex.catalog->simples()) EXPECT_EQ(hom_center(s, x, sum_of(s, x, x)).size(), 2u);
}

// Sum of squared dimensions of all simples equals d(C0) d(C).
TEST(Center, DimensionIdentity) {
  struct Case {
    const char* key;
    double expected;
  };
  const double phi = (1 + std::sqrt(5.0)) / 2;
  for (const Case& c : {Case{"vec_z2/full", 4}, Case{"ising/degree0", 8}, Case{"s3/degree0", 18},
                        Case{"fib/full", (1 + phi * phi) * (1 + phi * phi)}, Case{"vec_s3/full", 36}}) {
    const Example& ex = example(c.key);
    double sum = 0;
    for (const auto& x : ex.catalog->simples()) {
      const double d = ex.catalog->calc().dimension(x.object);
      sum += d * d;
    }
    EXPECT_NEAR(sum / c.expected, 1.0, 1e-6) << c.key;
  }
}

// The only constraint on sigma is c^2 = F^{psi sigma psi}_sigma = -1.
TEST(Center, IsingSigmaSolutions) {
  const TubeSetting s = setting("ising/degree0");
  const cplx i(0, 1);
  EXPECT_LT(verify_half_braiding(s, ising_sigma(s, i)).max(), 1e-9);
  EXPECT_LT(verify_half_braiding(s, ising_sigma(s, -i)).max(), 1e-9);
  EXPECT_NEAR(verify_half_braiding(s, ising_sigma(s, 1.0)).max(), 2.0, 1e-9);
  EXPECT_GT(verify_half_braiding(s, ising_sigma(s, -1.0)).max(), 1.0);
  EXPECT_GT(verify_half_braiding(s, ising_sigma(s, std::polar(1.0, 0.25))).max(), 0.1);

  const Example& ex = example("ising/degree0");
  std::set<std::pair<long, long>> found;
  for (const auto* x : of_grade(*ex.catalog, 1)) {
    ASSERT_EQ(x->object, Object::letter(2));
    const cplx c = x->E.at(1).blocks[2](0, 0);
    found.insert({std::lround(c.real()), std::lround(c.imag())});
    EXPECT_NEAR(std::abs(c * c + 1.0), 0.0, 1e-9);
  }
  EXPECT_EQ(found, (std::set<std::pair<long, long>>{{0, 1}, {0, -1}}));
  EXPECT_TRUE(hom_center(s, ising_sigma(s, i), ising_sigma(s, -i)).empty());
}

TEST(Center, UnitHalfBraiding) {
  for (const char* key : kExamples) {
    const TubeSetting s = setting(key);
    const HalfBraiding u = unit_half_braiding(s);
    EXPECT_EQ(verify_half_braiding(s, u).max(), 0.0);
    EXPECT_EQ(hom_center(s, u, conjugate_half_braiding(s, u)).size(), 1u);
  }
}

TEST(Center, ConjugationPermutesSimples) {
  for (const char* key : kExamples) {
    const Example& ex = example(key);
    const auto& s = ex.catalog->setting();
    for (int i = 0; i < ex.catalog->size(); ++i) {
      const HalfBraiding c = conjugate_half_braiding(s, (*ex.catalog)[i]);
      EXPECT_LT(verify_half_braiding(s, c).max(), 1e-8) << key;
      EXPECT_EQ(c.grade, s.group.inv((*ex.catalog)[i].grade));
      EXPECT_GE(ex.catalog->index_of(c), 0) << key;
      const HalfBraiding cc = conjugate_half_braiding(s, c);
      EXPECT_EQ(hom_center(s, cc, (*ex.catalog)[i]).size(), 1u) << key;
    }
  }
}

TEST(Center, IsingTensorOfSigma) {
  const Example& ex = example("ising/degree0");
  const auto& s = ex.catalog->setting();
  const auto sig = of_grade(*ex.catalog, 1);
  const HalfBraiding sq = tensor_half_braidings(s, *sig[0], *sig[0]);
  EXPECT_EQ(sq.grade, 0);
  EXPECT_LT(verify_half_braiding(s, sq).max(), 1e-8);
  const Decomposition d = ex.catalog->decompose(sq);
  EXPECT_EQ(d.size(), 2u);
  for (const auto& p : d) EXPECT_EQ((*ex.catalog)[p.simple].grade, 0);
}

TEST(Center, CenterFusionIsAssociativeWithUnit) {
  for (const char* key : {"ising/degree0", "fib/full", "vec_z3/inversion"}) {
    const SimpleCatalog& cat = *example(key).catalog;
    const auto n = cat.fusion_rules();
    const int r = cat.size();
    const int unit = cat.index_of(unit_half_braiding(cat.setting()));
    ASSERT_GE(unit, 0);
    for (int a = 0; a < r; ++a)
      for (int k = 0; k < r; ++k) EXPECT_EQ(n[unit][a][k], a == k ? 1 : 0);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c)
          for (int d = 0; d < r; ++d) {
            int left = 0, right = 0;
            for (int e = 0; e < r; ++e) {
              left += n[a][b][e] * n[e][c][d];
              right += n[b][c][e] * n[a][e][d];
            }
            EXPECT_EQ(left, right) << key;
          }
  }
}

TEST(Center, GradingLaws) {
  for (const char* key : kExamples) {
    const SimpleCatalog& cat = *example(key).catalog;
    const auto& s = cat.setting();
    for (int i = 0; i < cat.size(); ++i) {
      for (int j = 0; j < cat.size(); ++j) {
        const int g = s.group.mul(cat[i].grade, cat[j].grade);
        EXPECT_EQ(cat.product(i, j).grade, g);
        for (const auto& p : cat.product_decomposition(i, j)) EXPECT_EQ(cat[p.simple].grade, g) << key;
      }
    }
  }
  // in the relative setting different grades live on disjoint labels
  const SimpleCatalog& is = *example("ising/degree0").catalog;
  for (const auto& x : is.simples())
    for (const auto& y : is.simples()) {
      if (x.grade == y.grade) continue;
      for (const auto& b : is.calc().zero(x.object, y.object).blocks) EXPECT_EQ(b.size(), 0);
    }
}

TEST(Center, InducedObjects) {
  {
    const Example& ex = example("vec_z2/full");
    const auto& s = ex.catalog->setting();
    const HalfBraiding ind = induce_object(s, 1, 0);
    EXPECT_LT(verify_half_braiding(s, ind).max(), 1e-12);
    int over_a = 0;
    for (const auto& x : ex.catalog->simples()) {
      const auto n = hom_center(s, x, ind).size();
      EXPECT_EQ(n, x.object == Object::letter(1) ? 1u : 0u);
      over_a += static_cast<int>(n);
    }
    EXPECT_EQ(over_a, 2);
  }
  {
    const Example& ex = example("ising/degree0");
    const auto& s = ex.catalog->setting();
    const HalfBraiding ind = induce_object(s, 2, 1);
    EXPECT_LT(verify_half_braiding(s, ind).max(), 1e-12);
    for (const auto* x : of_grade(*ex.catalog, 1)) EXPECT_EQ(hom_center(s, *x, ind).size(), 1u);
    EXPECT_EQ(ex.catalog->decompose(ind).size(), 2u);
    EXPECT_EQ(hom_center(s, unit_half_braiding(s), induce_object(s, 0, 0)).size(), 1u);
    EXPECT_LT(verify_induced_family(s, 2), 1e-10);
    EXPECT_LT(verify_induced_family(s, 0), 1e-10);
  }
  const TubeSetting rel = setting("s3/degree0");
  for (int mu = 0; mu < 6; ++mu) EXPECT_LT(verify_induced_family(rel, mu), 1e-10);
}

TEST(Center, GaugeCovariance) {
  std::mt19937_64 rng(23);
  for (const char* key : {"fib/full", "vec_z3/inversion", "vec_s3/full"}) {
    const SimpleCatalog& cat = *example(key).catalog;
    const auto& s = cat.setting();
    for (const auto& x : cat.simples()) {
      const Morphism u = random_unitary(cat.calc(), x.object, rng);
      const HalfBraiding y = conjugate_by(s, x, u);
      EXPECT_LT(verify_half_braiding(s, y).max(), 1e-8) << key;
      EXPECT_EQ(hom_center(s, x, y).size(), 1u) << key;
    }
  }
  // a composite object with a genuinely mixing unitary
  const TubeSetting s = setting("ising/degree0");
  const HalfBraiding ind = induce_object(s, 2, 1);
  const HalfBraiding y = conjugate_by(s, ind, random_unitary(*s.calc, ind.object, rng));
  EXPECT_LT(verify_half_braiding(s, y).max(), 1e-8);
  EXPECT_EQ(hom_center(s, ind, y).size(), 2u);
}

// Twisted grade s of Vec_Z3 under inversion: 0+1+2 with permutation blocks
// a pi -> (-pi)(a + 2 pi).
TEST(Center, TwistedPermutationHalfBraiding) {
  const TubeSetting s = setting("vec_z3/inversion");
  const Calculus& calc = *s.calc;
  HalfBraiding x;
  x.grade = 1;
  x.object = Object::letters(std::vector<int>{0, 1, 2});
  for (int p = 0; p < 3; ++p) {
    const int q = (3 - p) % 3;
    Morphism e = calc.zero(tensor(x.object, Object::letter(p)), tensor(Object::letter(q), x.object));
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 2 * p) % 3;
      Morphism piece = calc.zero(Object::word({a, p}), Object::word({q, b}));
      piece.blocks[(a + p) % 3](0, 0) = 1.0;
      calc.place(e, piece, std::vector<int>{b}, std::vector<int>{a});
    }
    x.E.emplace(p, std::move(e));
  }
  EXPECT_LT(verify_half_braiding(s, x).max(), 1e-9);
  EXPECT_TRUE(verify_half_braiding(s, x).non_square.empty());
  EXPECT_EQ(example("vec_z3/inversion").catalog->index_of(x), 9);

  // a single letter cannot carry an inversion-twisted half-braiding
  HalfBraiding y;
  y.grade = 1;
  y.object = Object::letter(1);
  for (int p = 0; p < 3; ++p)
    y.E.emplace(p, calc.zero(Object::word({1, p}), Object::word({(3 - p) % 3, 1})));
  const auto rep = verify_half_braiding(s, y);
  EXPECT_EQ(rep.non_square, (std::vector<int>{1, 2}));
  EXPECT_GT(rep.unitarity, 0.5);
}

TEST(Center, MissingEntryIsAnError) {
  const TubeSetting s = setting("ising/degree0");
  HalfBraiding x = ising_sigma(s, cplx(0, 1));
  x.E.erase(1);
  EXPECT_THROW(verify_half_braiding(s, x), ValidationError);
}

TEST(Center, GroupActionOnCenter) {
  const SimpleCatalog& cat = *example("vec_z3/inversion").catalog;
  const auto& s = cat.setting();
  const Group& G = s.group;
  for (const auto& x : cat.simples()) {
    EXPECT_EQ(max_abs(act_on_center(s, x, G.neutral()).E.at(1) - x.E.at(1)), 0.0);
    for (int k = 0; k < G.size(); ++k) {
      const HalfBraiding y = act_on_center(s, x, k);
      EXPECT_LT(verify_half_braiding(s, y).max(), 1e-8);
      EXPECT_EQ(y.grade, G.conj(k, x.grade));
      for (int l = 0; l < G.size(); ++l) {
        const HalfBraiding twice = act_on_center(s, act_on_center(s, x, l), k);
        const HalfBraiding once = act_on_center(s, x, G.mul(k, l));
        ASSERT_EQ(twice.object, once.object);
        for (int p : s.tube_labels) EXPECT_EQ(max_abs(twice.E.at(p) - once.E.at(p)), 0.0);
      }
    }
  }
  // grade e is the ordinary double of Z3: one fixed simple, four swapped pairs
  const int flip = 1;
  int fixed = 0, moved = 0;
  for (int i = 0; i < cat.size(); ++i) {
    if (cat[i].grade != 0) continue;
    const int j = cat.index_of(cat.transported(flip, i));
    ASSERT_GE(j, 0);
    EXPECT_EQ(cat.index_of(cat.transported(flip, j)), i);
    (j == i ? fixed : moved)++;
  }
  EXPECT_EQ(fixed, 1);
  EXPECT_EQ(moved, 8);
}

TEST(Center, ExtractionIsSeedIndependent) {
  const TubeSetting s = setting("fib/full");
  const CenterData a = compute_center(s, 1), b = compute_center(s, 12345);
  ASSERT_EQ(a.count(), b.count());
  const auto xa = a.all(), xb = b.all();
  for (int i = 0; i < a.count(); ++i) {
    EXPECT_EQ(xa[i]->hb.object, xb[i]->hb.object);
    EXPECT_EQ(hom_center(s, xa[i]->hb, xb[i]->hb).size(), 1u);
  }
}
