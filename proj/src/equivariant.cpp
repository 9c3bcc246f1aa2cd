#include "gct/equivariant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gct/errors.hpp"
#include "gct/linalg.hpp"

namespace gct {

namespace {

Vec flatten(const Morphism& f) {
  Eigen::Index n = 0;
  for (const auto& b : f.blocks) n += b.size();
  Vec v(n);
  Eigen::Index o = 0;
  for (const auto& b : f.blocks)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index i = 0; i < b.rows(); ++i) v(o++) = b(i, j);
  return v;
}

int tree_count(const Calculus& calc, const Object& x) {
  int n = 0;
  for (int c = 0; c < calc.rank(); ++c) n += calc.dim(x, c);
  return n;
}

double unitarity_defect(const Calculus& calc, const Morphism& u) {
  return std::max(max_abs(calc.compose(calc.adjoint(u), u) - calc.identity(u.source)),
                  max_abs(calc.compose(u, calc.adjoint(u)) - calc.identity(u.target)));
}

// 1x -> x1 and friends: same tree bases on both sides, compare blockwise.
double identity_defect(const Morphism& f) {
  double d = 0;
  for (const auto& b : f.blocks) {
    if (b.rows() != b.cols()) return std::numeric_limits<double>::infinity();
    if (b.size() == 0) continue;
    d = std::max(d, (b - Mat::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff());
  }
  return d;
}

void require_cocycle(const TubeSetting& s, const EquivariantObject& x) {
  if (static_cast<int>(x.cocycle.size()) != s.group.size())
    throw ValidationError("equivariant", "missing cocycle entries");
  for (const auto& c : x.cocycle)
    if (c.blocks.empty()) throw ValidationError("equivariant", "missing cocycle entries");
}

EquivariantReport basic_checks(const TubeSetting& s, const EquivariantObject& x) {
  const Calculus& calc = *s.calc;
  const Group& G = s.group;
  EquivariantReport rep;
  for (int k = 0; k < G.size(); ++k) {
    const Morphism& c = x.cocycle[k];
    rep.membership = std::max(rep.membership, center_defect(s, x.base, act_on_center(s, x.base, k), c));
    rep.unitarity = std::max(rep.unitarity, unitarity_defect(calc, c));
    for (int l = 0; l < G.size(); ++l) {
      const Morphism lhs = calc.compose(calc.relabel(x.cocycle[l], s.action[k]), c);
      rep.cocycle = std::max(rep.cocycle, max_abs(lhs - x.cocycle[G.mul(k, l)]));
    }
  }
  rep.unit = max_abs(x.cocycle[G.neutral()] - calc.identity(x.base.object));
  return rep;
}

HalfBraiding sum_half_braidings(const TubeSetting& s, const std::vector<HalfBraiding>& parts) {
  HalfBraiding out;
  out.grade = parts.front().grade;
  for (const auto& p : parts) {
    if (p.grade != out.grade) throw ValidationError("equivariant", "orbit crosses grades; only homogeneous objects are supported");
    out.object = direct_sum(out.object, p.object);
  }
  for (int q : s.tube_labels) {
    std::vector<Morphism> blocks;
    for (const auto& p : parts) blocks.push_back(p.E.at(q));
    out.E.emplace(q, s.calc->direct_sum(blocks));
  }
  return out;
}

}  // namespace

EquivariantReport verify_equivariant(const TubeSetting& s, const EquivariantObject& x) {
  require_cocycle(s, x);
  EquivariantReport rep = basic_checks(s, x);
  rep.conjugate = basic_checks(s, conjugate_equivariant(s, x)).max();
  return rep;
}

EquivariantObject conjugate_equivariant(const TubeSetting& s, const EquivariantObject& x) {
  require_cocycle(s, x);
  const Calculus& calc = *s.calc;
  EquivariantObject out;
  out.base = conjugate_half_braiding(s, x.base);
  const Object& bar = out.base.object;
  const auto sol = calc.conjugate_solution(x.base.object);
  for (int k = 0; k < s.group.size(); ++k) {
    const Object moved_bar = relabel(bar, s.action[k]);
    Morphism m = calc.left_tensor(bar, calc.relabel(sol.Rbar, s.action[k]));
    m = calc.compose(calc.left_tensor(bar, calc.right_tensor(calc.adjoint(x.cocycle[k]), moved_bar)), m);
    m = calc.compose(calc.right_tensor(calc.adjoint(sol.R), moved_bar), m);
    out.cocycle.push_back(std::move(m));
  }
  return out;
}

EquivariantObject tensor_equivariant(const TubeSetting& s, const EquivariantObject& x, const EquivariantObject& y) {
  require_cocycle(s, x);
  require_cocycle(s, y);
  EquivariantObject out;
  out.base = tensor_half_braidings(s, x.base, y.base);
  for (int k = 0; k < s.group.size(); ++k) out.cocycle.push_back(s.calc->tensor(x.cocycle[k], y.cocycle[k]));
  return out;
}

std::vector<Morphism> hom_equivariant(const TubeSetting& s, const EquivariantObject& x, const EquivariantObject& y) {
  require_cocycle(s, x);
  require_cocycle(s, y);
  const Calculus& calc = *s.calc;
  const auto basis = hom_center(s, x.base, y.base);
  if (basis.empty()) return {};
  std::vector<Vec> cols;
  for (const auto& t : basis) {
    std::vector<Vec> parts;
    Eigen::Index len = 0;
    for (int k = 0; k < s.group.size(); ++k) {
      const Morphism d = calc.compose(calc.relabel(t, s.action[k]), x.cocycle[k]) - calc.compose(y.cocycle[k], t);
      parts.push_back(flatten(d));
      len += parts.back().size();
    }
    Vec col(len);
    Eigen::Index o = 0;
    for (const auto& v : parts) {
      col.segment(o, v.size()) = v;
      o += v.size();
    }
    cols.push_back(std::move(col));
  }
  Mat a(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) a.col(static_cast<Eigen::Index>(k)) = cols[k];
  const Mat ker = nullspace(a, 1e-9);
  std::vector<Morphism> out;
  for (Eigen::Index k = 0; k < ker.cols(); ++k) {
    Morphism m = cplx(0) * basis[0];
    for (std::size_t j = 0; j < basis.size(); ++j) m = m + ker(static_cast<Eigen::Index>(j), k) * basis[j];
    out.push_back(std::move(m));
  }
  return out;
}

EquivariantObject scale_cocycle(const TubeSetting& s, const EquivariantObject& x, const std::vector<cplx>& character) {
  require_cocycle(s, x);
  const Group& G = s.group;
  if (static_cast<int>(character.size()) != G.size()) throw ValidationError("equivariant", "character has the wrong length");
  for (int k = 0; k < G.size(); ++k)
    for (int l = 0; l < G.size(); ++l)
      if (std::abs(character[k] * character[l] - character[G.mul(k, l)]) > 1e-9)
        throw ValidationError("equivariant", "scaling function is not a character");
  EquivariantObject out = x;
  for (int k = 0; k < G.size(); ++k) out.cocycle[k] = character[k] * out.cocycle[k];
  return out;
}

std::vector<Morphism> stabilizer_cocycle(const TubeSetting& s, const HalfBraiding& x, const std::vector<int>& stabilizer,
                                         int power) {
  const Calculus& calc = *s.calc;
  const Group& G = s.group;
  std::vector<Morphism> out(G.size());
  out[G.neutral()] = calc.identity(x.object);
  const int n = static_cast<int>(stabilizer.size());
  if (n == 1) return out;
  const int t = G.cyclic_generator(stabilizer);
  if (t < 0) throw InvariantError("stabilizer is not cyclic; cocycles are only built for cyclic stabilizers");
  const auto basis = hom_center(s, x, act_on_center(s, x, t));
  if (basis.size() != 1) throw InvariantError("object is not a fixed simple of its stabilizer");
  Morphism u = cplx(std::sqrt(static_cast<double>(tree_count(calc, x.object)))) * basis[0];

  auto chain = [&](const Morphism& step) {
    std::vector<Morphism> powers{calc.identity(x.object)};
    int elem = G.neutral();
    for (int m = 0; m < n; ++m) {
      powers.push_back(calc.compose(calc.relabel(step, s.action[elem]), powers.back()));
      elem = G.mul(elem, t);
    }
    return powers;
  };
  const Morphism full = chain(u).back();
  cplx lambda = 0;
  for (const auto& b : full.blocks) lambda += b.trace();
  lambda /= static_cast<double>(tree_count(calc, x.object));
  const double angle = (std::arg(lambda) - 2 * std::numbers::pi * power) / n;
  u = std::polar(1.0, -angle) * u;
  const auto powers = chain(u);
  int elem = G.neutral();
  for (int m = 0; m < n; ++m) {
    out[elem] = powers[m];
    elem = G.mul(elem, t);
  }
  return out;
}

EquivariantObject induce_equivariant(const TubeSetting& s, const HalfBraiding& x, const std::vector<int>& stabilizer,
                                     const std::vector<Morphism>& stab_cocycle) {
  const Calculus& calc = *s.calc;
  const Group& G = s.group;
  auto in_stab = [&](int g) { return std::find(stabilizer.begin(), stabilizer.end(), g) != stabilizer.end(); };

  std::vector<int> reps;
  std::vector<int> order{G.neutral()};
  for (int g = 0; g < G.size(); ++g)
    if (g != G.neutral()) order.push_back(g);
  for (int g : order) {
    bool covered = false;
    for (int r : reps) covered = covered || in_stab(G.mul(G.inv(r), g));
    if (!covered) reps.push_back(g);
  }

  std::vector<HalfBraiding> parts;
  std::vector<int> offset{0};
  for (int r : reps) {
    parts.push_back(act_on_center(s, x, r));
    offset.push_back(offset.back() + parts.back().object.size());
  }
  EquivariantObject out;
  out.base = sum_half_braidings(s, parts);
  const int nx = x.object.size();
  for (int k = 0; k < G.size(); ++k) {
    Morphism c = calc.zero(out.base.object, relabel(out.base.object, s.action[k]));
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const int kr = G.mul(k, reps[i]);
      std::size_t j = 0;
      while (!in_stab(G.mul(G.inv(reps[j]), kr))) ++j;
      const int h = G.mul(G.inv(reps[j]), kr);
      const Morphism piece = calc.relabel(stab_cocycle[h], s.action[reps[j]]);
      std::vector<int> tgt(nx), src(nx);
      for (int w = 0; w < nx; ++w) {
        tgt[w] = offset[i] + w;
        src[w] = offset[j] + w;
      }
      calc.place(c, piece, tgt, src);
    }
    out.cocycle.push_back(std::move(c));
  }
  return out;
}

EquivariantObject regular_equivariant(const TubeSetting& s, const HalfBraiding& x) {
  std::vector<Morphism> trivial(s.group.size());
  trivial[s.group.neutral()] = s.calc->identity(x.object);
  return induce_equivariant(s, x, {s.group.neutral()}, trivial);
}

OrbitReport equivariant_count(const SimpleCatalog& cat) {
  const Group& G = cat.setting().group;
  OrbitReport rep;
  std::vector<bool> seen(cat.size(), false);
  for (int i = 0; i < cat.size(); ++i) {
    if (seen[i]) continue;
    Orbit orbit;
    for (int k = 0; k < G.size(); ++k) {
      const int j = cat.index_of(cat.transported(k, i));
      if (j < 0) throw InvariantError("simple objects are not closed under the group action");
      if (j == i) orbit.stabilizer.push_back(k);
      if (!seen[j]) {
        seen[j] = true;
        orbit.members.push_back(j);
      }
    }
    std::sort(orbit.members.begin(), orbit.members.end());
    orbit.irreps = static_cast<int>(G.conjugacy_classes(orbit.stabilizer).size());
    rep.count += orbit.irreps;
    rep.orbits.push_back(std::move(orbit));
  }
  return rep;
}

std::vector<EquivariantSimple> equivariant_simples(const SimpleCatalog& cat, const OrbitReport& orbits) {
  const TubeSetting& s = cat.setting();
  std::vector<EquivariantSimple> out;
  for (std::size_t o = 0; o < orbits.orbits.size(); ++o) {
    const Orbit& orbit = orbits.orbits[o];
    const HalfBraiding& x = cat[orbit.members.front()];
    for (int p = 0; p < static_cast<int>(orbit.stabilizer.size()); ++p) {
      const auto stab = stabilizer_cocycle(s, x, orbit.stabilizer, p);
      out.push_back({induce_equivariant(s, x, orbit.stabilizer, stab), static_cast<int>(o), p});
    }
  }
  return out;
}

Morphism equivariant_braiding(const TubeSetting& s, const EquivariantObject& x, const EquivariantObject& y) {
  require_cocycle(s, x);
  require_cocycle(s, y);
  const Calculus& calc = *s.calc;
  const Morphism e = evaluate(s, x.base, y.base.object);
  return calc.compose(calc.right_tensor(calc.adjoint(y.cocycle[x.base.grade]), x.base.object), e);
}

EquivariantBraidingReport verify_equivariant_braiding(const TubeSetting& s, const std::vector<EquivariantObject>& xs) {
  const Calculus& calc = *s.calc;
  const int n = static_cast<int>(xs.size());
  EquivariantBraidingReport rep;

  EquivariantObject unit;
  unit.base = unit_half_braiding(s);
  unit.cocycle.assign(s.group.size(), calc.identity(unit.base.object));

  std::vector<std::vector<EquivariantObject>> pair(n);
  std::vector<std::vector<Morphism>> braid(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      pair[i].push_back(tensor_equivariant(s, xs[i], xs[j]));
      braid[i].push_back(equivariant_braiding(s, xs[i], xs[j]));
    }

  for (int i = 0; i < n; ++i) {
    rep.unit = std::max({rep.unit, identity_defect(equivariant_braiding(s, unit, xs[i])),
                         identity_defect(equivariant_braiding(s, xs[i], unit))});
    for (int j = 0; j < n; ++j) {
      const Morphism& e = braid[i][j];
      const EquivariantObject& src = pair[i][j];
      const EquivariantObject& tgt = pair[j][i];
      for (int k = 0; k < s.group.size(); ++k) {
        const Morphism d = calc.compose(calc.relabel(e, s.action[k]), src.cocycle[k]) - calc.compose(tgt.cocycle[k], e);
        rep.equivariance = std::max(rep.equivariance, max_abs(d));
      }
      rep.membership = std::max(rep.membership, center_defect(s, src.base, tgt.base, e));
      rep.unitarity = std::max(rep.unitarity, unitarity_defect(calc, e));
      rep.max_monodromy =
          std::max(rep.max_monodromy, max_abs(calc.compose(braid[j][i], e) - calc.identity(src.base.object)));
      ++rep.checked;
    }
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Morphism second = equivariant_braiding(s, xs[i], pair[j][k]);
        const Morphism second_rhs = calc.compose(calc.left_tensor(xs[j].base.object, braid[i][k]),
                                                 calc.right_tensor(braid[i][j], xs[k].base.object));
        const Morphism first = equivariant_braiding(s, pair[i][j], xs[k]);
        const Morphism first_rhs = calc.compose(calc.right_tensor(braid[i][k], xs[j].base.object),
                                                calc.left_tensor(xs[i].base.object, braid[j][k]));
        rep.hexagon = std::max({rep.hexagon, max_abs(second - second_rhs), max_abs(first - first_rhs)});
        ++rep.checked;
      }
  return rep;
}

}  // namespace gct
