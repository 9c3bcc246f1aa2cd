#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "gct/errors.hpp"
#include "support.hpp"

using namespace gct;
using namespace gct::testing;

namespace {

const char* kAll[] = {"vec_z2", "vec_z3", "vec_s3", "ising", "fib"};

std::string axiom_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const ValidationError& e) {
    return e.axiom();
  }
  return "";
}

}  // namespace

TEST(FusionCore, BundledShapes) {
  const Category& z2 = category("vec_z2");
  EXPECT_EQ(z2.rank(), 2);
  EXPECT_EQ(z2.group.size(), 2);
  EXPECT_EQ(z2.degree(0), 0);
  EXPECT_EQ(z2.degree(1), 1);

  const Category& is = category("ising");
  EXPECT_EQ(is.rank(), 3);
  const int sigma = is.label_index("sigma"), psi = is.label_index("psi");
  EXPECT_EQ(is.degree(sigma), 1);
  EXPECT_EQ(is.N(sigma, sigma, 0), 1);
  EXPECT_EQ(is.N(sigma, sigma, psi), 1);
  EXPECT_EQ(is.N(sigma, sigma, sigma), 0);
}

TEST(FusionCore, PentagonHoldsOnBundledData) {
  for (const char* name : kAll) {
    const auto rep = verify_pentagon(category(name), 1e-12);
    EXPECT_LT(rep.residual, 1e-12) << name;
    EXPECT_GT(rep.checked, 0) << name;
  }
}

TEST(FusionCore, FusionRingIsAssociative) {
  for (const char* name : kAll) {
    const Category& c = category(name);
    const int r = c.rank();
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int x = 0; x < r; ++x)
          for (int d = 0; d < r; ++d) {
            int left = 0, right = 0;
            for (int e = 0; e < r; ++e) {
              left += c.N(a, b, e) * c.N(e, x, d);
              right += c.N(b, x, e) * c.N(a, e, d);
            }
            EXPECT_EQ(left, right) << name;
          }
  }
}

TEST(FusionCore, FBlocksAreUnitary) {
  for (const char* name : kAll)
    for (const auto& [key, block] : category(name).F) {
      const Mat& m = block.matrix;
      EXPECT_LT((m.adjoint() * m - Mat::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff(), 1e-12) << name;
    }
}

TEST(FusionCore, PerronFrobeniusDimensions) {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const auto fib = fp_dimensions(category("fib"));
  EXPECT_NEAR(fib[1], phi, 1e-12);
  const auto is = fp_dimensions(category("ising"));
  EXPECT_NEAR(is[category("ising").label_index("sigma")], std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(category("vec_s3").global_dim(), 6.0, 1e-12);
}

TEST(FusionCore, LabelLookup) {
  const Category& is = category("ising");
  EXPECT_EQ(is.label_index("psi"), 1);
  EXPECT_EQ(is.label_index("2"), 2);
  EXPECT_EQ(axiom_of([&] { is.label_index("tau"); }), "schema");
}

TEST(FusionCore, BrokenPentagonIsReported) {
  const Category c = load_category(fault_path("broken_pentagon.json"));
  EXPECT_EQ(axiom_of([&] { verify_pentagon(c, 1e-8); }), "pentagon");
}

TEST(FusionCore, LoadRejectsFaults) {
  EXPECT_EQ(axiom_of([] { load_category(fault_path("bad_qdim.json")); }), "qdim");
  EXPECT_EQ(axiom_of([] { load_category(fault_path("bad_action.json")); }), "action");
  EXPECT_EQ(axiom_of([] { load_category(fault_path("not_json.json")); }), "schema");
  EXPECT_THROW(load_category(fault_path("does_not_exist.json")), IoError);
}

TEST(FusionCore, NonUnitaryBlockRejected) {
  std::ifstream f(data_path("fib"));
  auto doc = nlohmann::json::parse(f);
  for (auto& b : doc["F"])
    if (b["abcd"] == nlohmann::json({1, 1, 1, 1})) b["matrix"][0][0] = {2.0, 0.0};
  EXPECT_FALSE(axiom_of([&] { parse_category(doc); }).empty());
}

TEST(FusionCore, MissingBlockRejected) {
  std::ifstream f(data_path("ising"));
  auto doc = nlohmann::json::parse(f);
  doc["F"].erase(doc["F"].begin() + 5);
  EXPECT_FALSE(axiom_of([&] { parse_category(doc); }).empty());
}

TEST(FusionCore, ActionChecks) {
  const Category& z3 = category("vec_z3");
  EXPECT_NO_THROW(verify_action(z3, z3.action("inversion"), 1e-12));
  EXPECT_NO_THROW(verify_action(z3, z3.action("trivial"), 1e-12));
  GroupAction bad = z3.action("inversion");
  bad.perm[1] = {1, 0, 2};  // does not fix the unit
  EXPECT_EQ(axiom_of([&] { verify_action(z3, bad, 1e-12); }), "action");
  EXPECT_EQ(axiom_of([&] { z3.action("rotation"); }), "action");
}

// The crossed extension of Vec_Z3 by inversion is Vec_S3 with the same label order.
TEST(FusionCore, CrossedExtensionIsS3) {
  const Category& ext = s3_as_extension();
  const Category& s3 = category("vec_s3");
  ASSERT_EQ(ext.rank(), 6);
  EXPECT_EQ(ext.group.size(), 2);
  EXPECT_LT(verify_pentagon(ext, 1e-12).residual, 1e-12);
  EXPECT_EQ(label_group(ext), label_group(s3));
  const auto t = label_group(ext);
  bool abelian = true;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) abelian = abelian && t[a][b] == t[b][a];
  EXPECT_FALSE(abelian);
  for (int a = 0; a < 6; ++a) EXPECT_EQ(ext.degree(a), a / 3);
}

TEST(Group, ConjugacyClassesOfS3) {
  const auto t = label_group(category("vec_s3"));
  const Group g({"e", "r", "r2", "s", "sr", "sr2"}, t);
  auto classes = g.conjugacy_classes();
  std::vector<std::size_t> sizes;
  for (const auto& c : classes) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(g.cyclic_generator(std::vector<int>{0, 1, 2}) >= 0, true);
  EXPECT_EQ(g.cyclic_generator(std::vector<int>{0, 1, 2, 3, 4, 5}), -1);
  EXPECT_TRUE(g.is_subgroup(std::vector<int>{0, 3}));
  EXPECT_FALSE(g.is_subgroup(std::vector<int>{0, 1}));
}

TEST(Group, RejectsNonGroupTable) {
  EXPECT_THROW(Group({"a", "b"}, {{0, 1}, {0, 1}}), ValidationError);
}
