#pragma once

#include <span>
#include <string>
#include <vector>

namespace gct {

// Finite group given by its multiplication table. Elements are indices.
class Group {
public:
  Group() : Group({"e"}, {{0}}) {}
  Group(std::vector<std::string> names, std::vector<std::vector<int>> table);

  int size() const { return static_cast<int>(names_.size()); }
  int neutral() const { return neutral_; }
  int mul(int g, int h) const { return table_[g][h]; }
  int inv(int g) const { return inverse_[g]; }
  int conj(int k, int g) const { return mul(mul(k, g), inv(k)); }
  int order(int g) const;
  const std::string& name(int g) const { return names_[g]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  int index_of(const std::string& name) const;

  // Conjugacy classes of the subgroup `sub` (which must be closed).
  std::vector<std::vector<int>> conjugacy_classes(std::span<const int> sub) const;
  std::vector<std::vector<int>> conjugacy_classes() const;
  // Generator of `sub` if it is cyclic, -1 otherwise.
  int cyclic_generator(std::span<const int> sub) const;
  bool is_subgroup(std::span<const int> sub) const;

private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int neutral_ = 0;
};

}  // namespace gct
