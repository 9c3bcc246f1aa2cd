#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>

#include "gct/equivariant.hpp"

namespace gct::testing {

inline std::string data_path(const std::string& name) { return std::string(GCT_DATA_DIR) + "/" + name + ".json"; }
inline std::string fault_path(const std::string& file) { return std::string(GCT_TEST_DATA_DIR) + "/" + file; }

inline const Category& category(const std::string& name) {
  static std::map<std::string, Category> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_category(data_path(name))).first;
  return it->second;
}

inline const Category& s3_as_extension() {
  static const Category c = build_crossed_extension(category("vec_z3"), category("vec_z3").action("inversion"));
  return c;
}

// Named settings used throughout the tests.
inline TubeSetting setting(const std::string& key) {
  if (key == "vec_z2/full") return full_setting(category("vec_z2"));
  if (key == "ising/degree0") return setting_from_subcat(category("ising"), "degree0");
  if (key == "ising/full") return full_setting(category("ising"));
  if (key == "fib/full") return full_setting(category("fib"));
  if (key == "vec_s3/full") return full_setting(category("vec_s3"));
  if (key == "vec_z3/inversion") return twisted_setting(category("vec_z3"), category("vec_z3").action("inversion"));
  if (key == "vec_z2/trivial") return twisted_setting(category("vec_z2"), category("vec_z2").action("trivial"));
  if (key == "s3/degree0") return setting_from_subcat(s3_as_extension(), "degree0");
  throw std::invalid_argument(key);
}

struct Example {
  CenterData center;
  std::unique_ptr<SimpleCatalog> catalog;
};

inline const Example& example(const std::string& key, std::uint64_t seed = 7) {
  static std::map<std::string, Example> cache;
  auto it = cache.find(key);
  if (it == cache.end()) {
    const TubeSetting s = setting(key);
    CenterData center = compute_center(s, seed);
    std::vector<HalfBraiding> simples;
    for (const auto* x : center.all()) simples.push_back(x->hb);
    auto catalog = std::make_unique<SimpleCatalog>(s, std::move(simples));
    it = cache.emplace(key, Example{std::move(center), std::move(catalog)}).first;
  }
  return it->second;
}

// Simples of the double of a finite group: orbits of commuting pairs under
// simultaneous conjugation, counted by Burnside as commuting triples / |G|.
inline int double_simples(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  auto commute = [&](int a, int b) { return table[a][b] == table[b][a]; };
  int triples = 0;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) triples += commute(g, h) && commute(g, k) && commute(h, k);
  return triples / n;
}

// Group law of the pointed category on its labels (every product is a single label).
inline std::vector<std::vector<int>> label_group(const Category& cat) {
  std::vector<std::vector<int>> t(cat.rank(), std::vector<int>(cat.rank(), -1));
  for (int a = 0; a < cat.rank(); ++a)
    for (int b = 0; b < cat.rank(); ++b)
      for (int c = 0; c < cat.rank(); ++c)
        if (cat.N(a, b, c)) t[a][b] = c;
  return t;
}

inline Morphism random_morphism(const Calculus& calc, const Object& src, const Object& tgt, std::mt19937_64& rng) {
  Morphism f = calc.zero(src, tgt);
  std::normal_distribution<double> nd;
  for (auto& b : f.blocks)
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = cplx(nd(rng), nd(rng));
  return f;
}

inline Morphism random_unitary(const Calculus& calc, const Object& x, std::mt19937_64& rng) {
  Morphism u = random_morphism(calc, x, x, rng);
  for (auto& b : u.blocks)
    if (b.size()) b = Eigen::HouseholderQR<Mat>(b).householderQ() * Mat::Identity(b.rows(), b.cols());
  return u;
}

// Largest deviation of each channel block from the identity matrix; for
// maps such as 1x -> x1 whose two sides share tree bases.
inline double identity_defect(const Morphism& f) {
  double d = 0;
  for (const auto& b : f.blocks) {
    if (b.rows() != b.cols()) return 1e300;
    if (b.size()) d = std::max(d, (b - Mat::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff());
  }
  return d;
}

}  // namespace gct::testing
