#include "gct/group.hpp"

#include <algorithm>

#include "gct/errors.hpp"

namespace gct {

Group::Group(std::vector<std::string> names, std::vector<std::vector<int>> table)
    : names_(std::move(names)), table_(std::move(table)) {
  const int n = size();
  if (n == 0) throw ValidationError("group", "group has no elements");
  if (static_cast<int>(table_.size()) != n)
    throw ValidationError("group", "group table has wrong number of rows");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("group", "group table row has wrong length");
    for (int x : row)
      if (x < 0 || x >= n) throw ValidationError("group", "group table entry out of range");
  }
  neutral_ = -1;
  for (int e = 0; e < n && neutral_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table_[e][g] == g && table_[g][e] == g;
    if (ok) neutral_ = e;
  }
  if (neutral_ < 0) throw ValidationError("group", "group table has no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw ValidationError("group", "group table is not associative");
  inverse_.assign(n, -1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (mul(g, h) == neutral_) inverse_[g] = h;
  if (std::count(inverse_.begin(), inverse_.end(), -1))
    throw ValidationError("group", "group table lacks inverses");
}

int Group::order(int g) const {
  int k = 1;
  for (int x = g; x != neutral_; x = mul(x, g)) ++k;
  return k;
}

int Group::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ValidationError("group", "unknown group element '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

bool Group::is_subgroup(std::span<const int> sub) const {
  auto has = [&](int x) { return std::find(sub.begin(), sub.end(), x) != sub.end(); };
  if (!has(neutral_)) return false;
  for (int a : sub)
    for (int b : sub)
      if (!has(mul(a, inv(b)))) return false;
  return true;
}

std::vector<std::vector<int>> Group::conjugacy_classes(std::span<const int> sub) const {
  std::vector<int> elems(sub.begin(), sub.end());
  std::sort(elems.begin(), elems.end());
  std::vector<bool> seen(size(), false);
  std::vector<std::vector<int>> classes;
  for (int g : elems) {
    if (seen[g]) continue;
    std::vector<int> cls;
    for (int k : elems) {
      int x = conj(k, g);
      if (!seen[x]) {
        seen[x] = true;
        cls.push_back(x);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<std::vector<int>> Group::conjugacy_classes() const {
  std::vector<int> all(size());
  for (int g = 0; g < size(); ++g) all[g] = g;
  return conjugacy_classes(all);
}

int Group::cyclic_generator(std::span<const int> sub) const {
  for (int g : sub)
    if (order(g) == static_cast<int>(sub.size())) return g;
  return -1;
}

}  // namespace gct
