#include <gtest/gtest.h>

#include "gct/errors.hpp"
#include "support.hpp"

using namespace gct;
using namespace gct::testing;

namespace {

constexpr double kTol = 1e-8;

}  // namespace

TEST(GBraiding, AxiomsHold) {
  for (const char* key : {"vec_z3/inversion", "vec_z2/full", "fib/full", "vec_z2/trivial", "ising/full"}) {
    const SimpleCatalog& cat = *example(key).catalog;
    const GBraidingData br = build_G_braiding(cat);
    const GBraidingReport rep = verify_G_braiding(cat, br);
    EXPECT_LT(rep.bf0, kTol) << key;
    EXPECT_LT(rep.bf1, kTol) << key;
    EXPECT_LT(rep.bf2, kTol) << key;
    EXPECT_LT(rep.bf3, kTol) << key;
    const int n = cat.size();
    EXPECT_EQ(rep.checked, n * n + 2L * n * n * n + static_cast<long>(cat.setting().group.size()) * n * n);
  }
}

TEST(GBraiding, EntriesHaveTheTwistedSlot) {
  const SimpleCatalog& cat = *example("vec_z3/inversion").catalog;
  const auto& s = cat.setting();
  const GBraidingData br = build_G_braiding(cat);
  for (const auto& [key, e] : br.E) {
    const auto& x = cat[key.first];
    const auto& y = cat[key.second];
    EXPECT_EQ(e.source, tensor(x.object, y.object));
    EXPECT_EQ(e.target, tensor(relabel(y.object, s.action[x.grade]), x.object));
  }
}

TEST(GBraiding, ReverseBraiding) {
  for (const char* key : {"vec_z3/inversion", "vec_z2/full", "fib/full"}) {
    const SimpleCatalog& cat = *example(key).catalog;
    const GBraidingData fwd = build_G_braiding(cat);
    const GBraidingData rev = reverse_braiding(cat, fwd);
    EXPECT_TRUE(rev.reverse);
    EXPECT_LT(verify_G_braiding(cat, rev).max(), kTol) << key;
    const GBraidingData back = forward_from_reverse(cat, rev);
    for (const auto& [k, e] : fwd.E) EXPECT_LT(max_abs(e - back.E.at(k)), 1e-10) << key;
    const int unit = cat.index_of(unit_half_braiding(cat.setting()));
    for (int j = 0; j < cat.size(); ++j) {
      EXPECT_LT(identity_defect(rev.E.at({unit, j})), 1e-12);
      EXPECT_LT(identity_defect(fwd.E.at({unit, j})), 1e-12);
    }
  }
  EXPECT_THROW(reverse_braiding(*example("fib/full").catalog,
                                reverse_braiding(*example("fib/full").catalog, build_G_braiding(*example("fib/full").catalog))),
               InvariantError);
}

// With trivial G the reverse braiding agrees with the braiding exactly on
// pairs with trivial double braiding.
TEST(GBraiding, ReverseAgreesOnTransparentPairs) {
  const SimpleCatalog& cat = *example("vec_z2/full").catalog;
  const Calculus& calc = cat.calc();
  const GBraidingData fwd = build_G_braiding(cat);
  const GBraidingData rev = reverse_braiding(cat, fwd);
  int transparent = 0, opaque = 0;
  for (int i = 0; i < cat.size(); ++i)
    for (int j = 0; j < cat.size(); ++j) {
      const Morphism mono = calc.compose(fwd.E.at({j, i}), fwd.E.at({i, j}));
      const bool trivial = max_abs(mono - calc.identity(mono.source)) < kTol;
      const bool same = max_abs(fwd.E.at({i, j}) - rev.E.at({i, j})) < kTol;
      EXPECT_EQ(trivial, same) << i << " " << j;
      (trivial ? transparent : opaque)++;
    }
  EXPECT_GT(transparent, 0);
  EXPECT_GT(opaque, 0);
}

TEST(GBraiding, SignFlipIsCaught) {
  const SimpleCatalog& cat = *example("vec_z3/inversion").catalog;
  GBraidingData br = build_G_braiding(cat);
  Morphism& e = br.E.at({3, 4});
  e = cplx(-1) * e;
  const GBraidingReport rep = verify_G_braiding(cat, br);
  EXPECT_LT(rep.bf0, kTol);
  EXPECT_GT(rep.bf2, 0.1);
}

TEST(GBraiding, ToricCodeHasNontrivialMonodromy) {
  const SimpleCatalog& cat = *example("vec_z2/full").catalog;
  const Calculus& calc = cat.calc();
  const GBraidingData br = build_G_braiding(cat);
  double worst = 0;
  for (int i = 0; i < cat.size(); ++i)
    for (int j = 0; j < cat.size(); ++j) {
      const Morphism mono = calc.compose(br.E.at({j, i}), br.E.at({i, j}));
      worst = std::max(worst, max_abs(mono - calc.identity(mono.source)));
    }
  EXPECT_NEAR(worst, 2.0, 1e-12);
}

TEST(GBraiding, CenterFusionOfToricCodeIsKleinGroup) {
  const SimpleCatalog& cat = *example("vec_z2/full").catalog;
  const auto n = cat.fusion_rules();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int total = 0;
      for (int k = 0; k < 4; ++k) total += n[i][j][k];
      EXPECT_EQ(total, 1);
    }
  const int unit = cat.index_of(unit_half_braiding(cat.setting()));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(n[i][i][unit], 1);
}

TEST(GBraiding, RelativeSettingWithGradingIsRejected) {
  EXPECT_THROW(build_G_braiding(*example("ising/degree0").catalog), ValidationError);
}

TEST(GBraiding, DecomposeRejectsForeignObjects) {
  const SimpleCatalog& cat = *example("fib/full").catalog;
  SimpleCatalog partial(cat.setting(), {cat[0], cat[1]});
  bool threw = false;
  for (int i = 2; i < cat.size() && !threw; ++i) {
    try {
      partial.decompose(cat[i]);
    } catch (const InvariantError&) {
      threw = true;
    }
  }
  EXPECT_TRUE(threw);
}
