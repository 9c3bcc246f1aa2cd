#include "gct/gbraiding.hpp"

#include <cmath>

#include "gct/errors.hpp"

namespace gct {

namespace {

double unitarity_defect(const Calculus& calc, const Morphism& u) {
  return std::max(max_abs(calc.compose(calc.adjoint(u), u) - calc.identity(u.source)),
                  max_abs(calc.compose(u, calc.adjoint(u)) - calc.identity(u.target)));
}

int tree_count(const Calculus& calc, const Object& x) {
  int n = 0;
  for (int c = 0; c < calc.rank(); ++c) n += calc.dim(x, c);
  return n;
}

}  // namespace

SimpleCatalog::SimpleCatalog(TubeSetting setting, std::vector<HalfBraiding> simples)
    : setting_(std::move(setting)), simples_(std::move(simples)) {}

Decomposition SimpleCatalog::decompose(const HalfBraiding& x) const {
  const Calculus& c = calc();
  Decomposition out;
  Morphism sum = c.zero(x.object, x.object);
  for (int i = 0; i < size(); ++i) {
    if (simples_[i].grade != x.grade) continue;
    const double scale = std::sqrt(static_cast<double>(tree_count(c, simples_[i].object)));
    for (const auto& v : hom_center(setting_, simples_[i], x)) {
      Piece p{i, cplx(scale) * v};
      sum = sum + c.compose(p.iso, c.adjoint(p.iso));
      out.push_back(std::move(p));
    }
  }
  const double defect = max_abs(sum - c.identity(x.object));
  if (defect > 1e-7)
    throw InvariantError("simple objects do not exhaust a half-braiding (defect " + std::to_string(defect) + ")");
  return out;
}

Decomposition SimpleCatalog::trivial_decomposition(int i) const {
  return {Piece{i, calc().identity(simples_[i].object)}};
}

int SimpleCatalog::index_of(const HalfBraiding& x) const {
  for (int i = 0; i < size(); ++i)
    if (simples_[i].grade == x.grade && !hom_center(setting_, simples_[i], x).empty())
      return i;
  return -1;
}

const HalfBraiding& SimpleCatalog::product(int i, int j) const {
  auto it = products_.find({i, j});
  if (it == products_.end())
    it = products_.emplace(std::pair{i, j}, tensor_half_braidings(setting_, simples_[i], simples_[j])).first;
  return it->second;
}

const Decomposition& SimpleCatalog::product_decomposition(int i, int j) const {
  auto it = product_dec_.find({i, j});
  if (it == product_dec_.end()) it = product_dec_.emplace(std::pair{i, j}, decompose(product(i, j))).first;
  return it->second;
}

const HalfBraiding& SimpleCatalog::transported(int k, int i) const {
  auto it = transports_.find({k, i});
  if (it == transports_.end())
    it = transports_.emplace(std::pair{k, i}, act_on_center(setting_, simples_[i], k)).first;
  return it->second;
}

const Decomposition& SimpleCatalog::transported_decomposition(int k, int i) const {
  auto it = transport_dec_.find({k, i});
  if (it == transport_dec_.end()) it = transport_dec_.emplace(std::pair{k, i}, decompose(transported(k, i))).first;
  return it->second;
}

std::vector<std::vector<std::vector<int>>> SimpleCatalog::fusion_rules() const {
  const int n = size();
  std::vector<std::vector<std::vector<int>>> rules(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& p : product_decomposition(i, j)) ++rules[i][j][p.simple];
  return rules;
}

GBraidingData build_G_braiding(const SimpleCatalog& cat) {
  const TubeSetting& s = cat.setting();
  if (s.kind == TubeSetting::Kind::Relative && s.group.size() > 1)
    throw ValidationError("G-braiding", "G-crossed braiding needs a twisted or full setting");
  GBraidingData out;
  for (int i = 0; i < cat.size(); ++i)
    for (int j = 0; j < cat.size(); ++j) out.E.emplace(std::pair{i, j}, evaluate(s, cat[i], cat[j].object));
  return out;
}

Morphism extend_braiding(const SimpleCatalog& cat, const GBraidingData& br, const HalfBraiding& a,
                         const Decomposition& da, const HalfBraiding& b, const Decomposition& db) {
  const Calculus& c = cat.calc();
  const TubeSetting& s = cat.setting();
  Morphism out;
  bool first = true;
  for (const auto& pa : da)
    for (const auto& pb : db) {
      const Morphism& e = br.E.at({pa.simple, pb.simple});
      Morphism outer;
      if (br.reverse)
        outer = c.tensor(pb.iso, c.relabel(pa.iso, s.action[s.group.inv(b.grade)]));
      else
        outer = c.tensor(c.relabel(pb.iso, s.action[a.grade]), pa.iso);
      const Morphism inner = c.tensor(c.adjoint(pa.iso), c.adjoint(pb.iso));
      Morphism term = c.compose(outer, c.compose(e, inner));
      out = first ? std::move(term) : out + term;
      first = false;
    }
  if (first) {
    const Object tgt = br.reverse ? tensor(b.object, relabel(a.object, s.action[s.group.inv(b.grade)]))
                                  : tensor(relabel(b.object, s.action[a.grade]), a.object);
    return c.zero(tensor(a.object, b.object), tgt);
  }
  return out;
}

GBraidingReport verify_G_braiding(const SimpleCatalog& cat, const GBraidingData& br) {
  const Calculus& c = cat.calc();
  const TubeSetting& s = cat.setting();
  const Group& G = s.group;
  const int n = cat.size();
  GBraidingReport rep;
  auto single = [&](int i) { return cat.trivial_decomposition(i); };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Morphism& e = br.E.at({i, j});
      const HalfBraiding tgt = br.reverse
          ? tensor_half_braidings(s, cat[j], cat.transported(G.inv(cat[j].grade), i))
          : tensor_half_braidings(s, cat.transported(cat[i].grade, j), cat[i]);
      rep.bf0 = std::max({rep.bf0, center_defect(s, cat.product(i, j), tgt, e), unitarity_defect(c, e)});
      ++rep.checked;
    }

  // multiplicativity in the second slot
  for (int i = 0; i < n; ++i)
    for (int j1 = 0; j1 < n; ++j1)
      for (int j2 = 0; j2 < n; ++j2) {
        const Morphism lhs = extend_braiding(cat, br, cat[i], single(i), cat.product(j1, j2),
                                             cat.product_decomposition(j1, j2));
        Morphism rhs;
        if (br.reverse) {
          const int back = G.inv(cat[j1].grade);
          const Morphism moved = extend_braiding(cat, br, cat.transported(back, i), cat.transported_decomposition(back, i),
                                                 cat[j2], single(j2));
          rhs = c.compose(c.left_tensor(cat[j1].object, moved), c.right_tensor(br.E.at({i, j1}), cat[j2].object));
        } else {
          rhs = c.compose(c.left_tensor(cat.transported(cat[i].grade, j1).object, br.E.at({i, j2})),
                          c.right_tensor(br.E.at({i, j1}), cat[j2].object));
        }
        rep.bf1 = std::max(rep.bf1, max_abs(lhs - rhs));
        ++rep.checked;
      }

  // multiplicativity in the first slot
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int j = 0; j < n; ++j) {
        const Morphism lhs = extend_braiding(cat, br, cat.product(i1, i2), cat.product_decomposition(i1, i2), cat[j],
                                             single(j));
        Morphism rhs;
        if (br.reverse) {
          rhs = c.compose(c.right_tensor(br.E.at({i1, j}), relabel(cat[i2].object, s.action[G.inv(cat[j].grade)])),
                          c.left_tensor(cat[i1].object, br.E.at({i2, j})));
        } else {
          const int g2 = cat[i2].grade;
          const Morphism first = extend_braiding(cat, br, cat[i1], single(i1), cat.transported(g2, j),
                                                 cat.transported_decomposition(g2, j));
          rhs = c.compose(c.right_tensor(first, cat[i2].object), c.left_tensor(cat[i1].object, br.E.at({i2, j})));
        }
        rep.bf2 = std::max(rep.bf2, max_abs(lhs - rhs));
        ++rep.checked;
      }

  // equivariance
  for (int k = 0; k < G.size(); ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Morphism lhs = extend_braiding(cat, br, cat.transported(k, i), cat.transported_decomposition(k, i),
                                             cat.transported(k, j), cat.transported_decomposition(k, j));
        const Morphism rhs = c.relabel(br.E.at({i, j}), s.action[k]);
        rep.bf3 = std::max(rep.bf3, max_abs(lhs - rhs));
        ++rep.checked;
      }
  return rep;
}

GBraidingData reverse_braiding(const SimpleCatalog& cat, const GBraidingData& forward) {
  if (forward.reverse) throw InvariantError("reverse_braiding expects forward data");
  const Calculus& c = cat.calc();
  const Group& G = cat.setting().group;
  GBraidingData out;
  out.reverse = true;
  for (int i = 0; i < cat.size(); ++i)
    for (int j = 0; j < cat.size(); ++j) {
      const int back = G.inv(cat[j].grade);
      const Morphism e = extend_braiding(cat, forward, cat[j], cat.trivial_decomposition(j), cat.transported(back, i),
                                         cat.transported_decomposition(back, i));
      out.E.emplace(std::pair{i, j}, c.adjoint(e));
    }
  return out;
}

GBraidingData forward_from_reverse(const SimpleCatalog& cat, const GBraidingData& reverse) {
  if (!reverse.reverse) throw InvariantError("forward_from_reverse expects reverse data");
  const Calculus& c = cat.calc();
  GBraidingData out;
  for (int i = 0; i < cat.size(); ++i)
    for (int j = 0; j < cat.size(); ++j) {
      const int g = cat[i].grade;
      const Morphism e = extend_braiding(cat, reverse, cat.transported(g, j), cat.transported_decomposition(g, j),
                                         cat[i], cat.trivial_decomposition(i));
      out.E.emplace(std::pair{i, j}, c.adjoint(e));
    }
  return out;
}

}  // namespace gct
