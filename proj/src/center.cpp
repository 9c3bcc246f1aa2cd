#include "gct/center.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gct/linalg.hpp"

namespace gct {

namespace {

Object word_sum(std::span<const int> tw, std::span<const int> xis, int mu, const Category& cat) {
  Object x;
  for (int xi : xis) x.words.push_back({tw[xi], mu, cat.dual[xi]});
  return x;
}

// Block matrix of the induced half-braiding:
//   sum_{zeta} g[zeta] mu dual(zeta) pi  ->  g[pi] sum_{xi} g[xi] mu dual(xi).
Morphism induced_braid(const Calculus& calc, std::span<const int> tw, int mu, std::span<const int> zetas,
                       std::span<const int> xis, int pi) {
  const Category& cat = calc.category();
  const Object src = tensor(word_sum(tw, zetas, mu, cat), Object::letter(pi));
  const Object tgt = tensor(Object::letter(tw[pi]), word_sum(tw, xis, mu, cat));
  Morphism out = calc.zero(src, tgt);
  for (size_t a = 0; a < zetas.size(); ++a)
    for (size_t b = 0; b < xis.size(); ++b) {
      const int zeta = zetas[a], xi = xis[b];
      if (!calc.hom_dim(zeta, {pi, xi})) continue;
      Morphism block = calc.zero(Object::word({tw[zeta], mu, cat.dual[zeta], pi}),
                                 Object::word({tw[pi], tw[xi], mu, cat.dual[xi]}));
      for (const Morphism& t : calc.onb(zeta, {pi, xi})) {
        const Morphism low = calc.left_tensor(Word{tw[zeta], mu}, calc.adjoint(calc.frobenius_transpose(t)));
        const Morphism high = calc.right_tensor(calc.relabel(t, tw), Word{mu, cat.dual[xi]});
        block = block + calc.compose(high, low);
      }
      const int ti = static_cast<int>(b), si = static_cast<int>(a);
      calc.place(out, block, std::span<const int>(&ti, 1), std::span<const int>(&si, 1));
    }
  return out;
}

std::vector<int> inverse_perm(std::span<const int> p) {
  std::vector<int> q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

// Flattens all channel blocks of f into one vector.
Vec flatten(const Morphism& f) {
  Eigen::Index n = 0;
  for (const auto& b : f.blocks) n += b.size();
  Vec v(n);
  Eigen::Index k = 0;
  for (const auto& b : f.blocks)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index i = 0; i < b.rows(); ++i) v(k++) = b(i, j);
  return v;
}

Morphism unflatten(const Calculus& calc, const Object& src, const Object& tgt, const Vec& v) {
  Morphism f = calc.zero(src, tgt);
  Eigen::Index k = 0;
  for (auto& b : f.blocks)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index i = 0; i < b.rows(); ++i) b(i, j) = v(k++);
  return f;
}

}  // namespace

HalfBraidingReport verify_half_braiding(const TubeSetting& s, const HalfBraiding& x) {
  const Calculus& calc = *s.calc;
  const auto& tw = s.twist[x.grade];
  HalfBraidingReport rep;
  for (int p : s.tube_labels) {
    auto it = x.E.find(p);
    if (it == x.E.end()) throw ValidationError("half-braiding", "missing E entry for a tube label");
    const Morphism& e = it->second;
    if (e.source != tensor(x.object, Object::letter(p)) || e.target != tensor(Object::letter(tw[p]), x.object))
      throw ValidationError("half-braiding", "E entry has the wrong type");
    for (const auto& b : e.blocks)
      if (b.rows() != b.cols()) {
        rep.non_square.push_back(p);
        break;
      }
    rep.unitarity = std::max(rep.unitarity, max_abs(calc.compose(calc.adjoint(e), e) - calc.identity(e.source)));
    rep.unitarity = std::max(rep.unitarity, max_abs(calc.compose(e, calc.adjoint(e)) - calc.identity(e.target)));
  }
  // E(unit) is the identity once words are read up to the unit letter
  {
    const Morphism& e = x.E.at(0);
    for (size_t c = 0; c < e.blocks.size(); ++c)
      if (e.blocks[c].size())
        rep.unit = std::max(rep.unit, max_abs(e.blocks[c] - Mat::Identity(e.blocks[c].rows(), e.blocks[c].cols())));
  }
  for (int p : s.tube_labels)
    for (int q : s.tube_labels) {
      const Morphism two = calc.compose(calc.left_tensor(tw[p], x.E.at(q)), calc.right_tensor(x.E.at(p), q));
      for (int eta : s.tube_labels)
        for (const Morphism& t : calc.onb(eta, {p, q})) {
          const Morphism lhs = calc.compose(calc.right_tensor(calc.relabel(t, tw), x.object), x.E.at(eta));
          const Morphism rhs = calc.compose(two, calc.left_tensor(x.object, t));
          rep.multiplicativity = std::max(rep.multiplicativity, max_abs(lhs - rhs));
        }
    }
  return rep;
}

Morphism evaluate(const TubeSetting& s, const HalfBraiding& x, const Object& y) {
  const Calculus& calc = *s.calc;
  const auto& tw = s.twist[x.grade];
  const int nx = x.object.size(), ny = y.size();
  Morphism out = calc.zero(tensor(x.object, y), tensor(relabel(y, tw), x.object));
  for (int k = 0; k < ny; ++k) {
    const Word& w = y.words[k];
    Morphism e = calc.identity(x.object);
    Word done;
    for (int a : w) {
      auto it = x.E.find(a);
      if (it == x.E.end()) throw ValidationError("half-braiding", "object contains a label outside the tube");
      e = calc.compose(calc.left_tensor(relabel(Object::word(done), tw).words[0], it->second), calc.right_tensor(e, a));
      done.push_back(a);
    }
    std::vector<int> tmap(nx), smap(nx);
    for (int i = 0; i < nx; ++i) {
      tmap[i] = k * nx + i;
      smap[i] = i * ny + k;
    }
    calc.place(out, e, tmap, smap);
  }
  return out;
}

double center_defect(const TubeSetting& s, const HalfBraiding& x, const HalfBraiding& y, const Morphism& f) {
  const Calculus& calc = *s.calc;
  const auto& tw = s.twist[x.grade];
  double d = 0;
  for (int p : s.tube_labels) {
    const Morphism lhs = calc.compose(y.E.at(p), calc.right_tensor(f, p));
    const Morphism rhs = calc.compose(calc.left_tensor(tw[p], f), x.E.at(p));
    d = std::max(d, max_abs(lhs - rhs));
  }
  return d;
}

std::vector<Morphism> hom_center(const TubeSetting& s, const HalfBraiding& x, const HalfBraiding& y) {
  const Calculus& calc = *s.calc;
  if (x.grade != y.grade) return {};
  const auto& tw = s.twist[x.grade];
  const Morphism z = calc.zero(x.object, y.object);
  const Eigen::Index n = flatten(z).size();
  if (n == 0) return {};
  std::vector<Vec> cols;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Morphism f = unflatten(calc, x.object, y.object, Vec::Unit(n, k));
    std::vector<Vec> parts;
    Eigen::Index len = 0;
    for (int p : s.tube_labels) {
      const Morphism lhs = calc.compose(y.E.at(p), calc.right_tensor(f, p));
      const Morphism rhs = calc.compose(calc.left_tensor(tw[p], f), x.E.at(p));
      parts.push_back(flatten(lhs - rhs));
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
  Mat a(cols.front().size(), n);
  for (Eigen::Index k = 0; k < n; ++k) a.col(k) = cols[k];
  const Mat ker = nullspace(a, 1e-9);
  std::vector<Morphism> out;
  for (Eigen::Index k = 0; k < ker.cols(); ++k) out.push_back(unflatten(calc, x.object, y.object, ker.col(k)));
  return out;
}

HalfBraiding conjugate_half_braiding(const TubeSetting& s, const HalfBraiding& x) {
  const Calculus& calc = *s.calc;
  HalfBraiding out;
  out.grade = s.group.inv(x.grade);
  out.object = calc.dual(x.object);
  const Object& xb = out.object;
  const auto& tw = s.twist[out.grade];
  const auto sol = calc.conjugate_solution(x.object);
  for (int p : s.tube_labels) {
    const int q = tw[p];
    const Morphism& e = x.E.at(q);
    Morphism m = calc.left_tensor(tensor(xb, Object::letter(p)), sol.Rbar);
    m = calc.compose(calc.left_tensor(xb, calc.right_tensor(calc.adjoint(e), xb)), m);
    m = calc.compose(calc.right_tensor(calc.adjoint(sol.R), tensor(Object::letter(q), xb)), m);
    out.E.emplace(p, std::move(m));
  }
  return out;
}

HalfBraiding tensor_half_braidings(const TubeSetting& s, const HalfBraiding& x, const HalfBraiding& y) {
  const Calculus& calc = *s.calc;
  HalfBraiding out;
  out.grade = s.group.mul(x.grade, y.grade);
  out.object = tensor(x.object, y.object);
  const auto& twy = s.twist[y.grade];
  for (int p : s.tube_labels) {
    const Morphism first = calc.left_tensor(x.object, y.E.at(p));
    const Morphism second = calc.right_tensor(x.E.at(twy[p]), y.object);
    out.E.emplace(p, calc.compose(second, first));
  }
  return out;
}

HalfBraiding act_on_center(const TubeSetting& s, const HalfBraiding& x, int k) {
  const Calculus& calc = *s.calc;
  const auto& p = s.action[k];
  const auto pinv = inverse_perm(p);
  HalfBraiding out;
  out.grade = s.group.conj(k, x.grade);
  out.object = relabel(x.object, p);
  for (int q : s.tube_labels) out.E.emplace(q, calc.relabel(x.E.at(pinv[q]), p));
  return out;
}

HalfBraiding restrict_half_braiding(const TubeSetting& s, const HalfBraiding& x, const Morphism& v) {
  const Calculus& calc = *s.calc;
  const auto& tw = s.twist[x.grade];
  HalfBraiding out;
  out.grade = x.grade;
  out.object = v.source;
  for (int p : s.tube_labels)
    out.E.emplace(p, calc.compose(calc.left_tensor(tw[p], calc.adjoint(v)),
                                  calc.compose(x.E.at(p), calc.right_tensor(v, p))));
  return out;
}

HalfBraiding conjugate_by(const TubeSetting& s, const HalfBraiding& x, const Morphism& u) {
  const Calculus& calc = *s.calc;
  const auto& tw = s.twist[x.grade];
  HalfBraiding out;
  out.grade = x.grade;
  out.object = u.target;
  for (int p : s.tube_labels)
    out.E.emplace(p, calc.compose(calc.left_tensor(tw[p], u),
                                  calc.compose(x.E.at(p), calc.right_tensor(calc.adjoint(u), p))));
  return out;
}

HalfBraiding unit_half_braiding(const TubeSetting& s) {
  HalfBraiding out;
  out.grade = s.group.neutral();
  out.object = Object::letter(0);
  for (int p : s.tube_labels) {
    Morphism e = s.calc->zero(Object::word({0, p}), Object::word({p, 0}));
    e.blocks[p](0, 0) = 1.0;
    out.E.emplace(p, std::move(e));
  }
  return out;
}

HalfBraiding induce_object(const TubeSetting& s, int mu, int grade) {
  const Calculus& calc = *s.calc;
  const auto& tw = s.twist[grade];
  HalfBraiding out;
  out.grade = grade;
  out.object = word_sum(tw, s.tube_labels, mu, calc.category());
  for (int p : s.tube_labels)
    out.E.emplace(p, induced_braid(calc, tw, mu, s.tube_labels, s.tube_labels, p));
  return out;
}

double verify_induced_family(const TubeSetting& s, int mu) {
  if (s.kind != TubeSetting::Kind::Relative)
    throw ValidationError("setting", "the induced family needs a relative setting");
  const Calculus& calc = *s.calc;
  const Category& cat = calc.category();
  const Group& G = s.group;
  const auto& id = s.twist[G.neutral()];
  const auto theta = [&](int k) { return word_sum(id, s.ends[k], mu, cat); };
  // Z(h, k, pi) : theta^(hk) pi -> pi theta^(k)
  auto Z = [&](int h, int k, int pi) { return induced_braid(calc, id, mu, s.ends[G.mul(h, k)], s.ends[k], pi); };
  double worst = 0;
  for (int h1 = 0; h1 < G.size(); ++h1)
    for (int h2 = 0; h2 < G.size(); ++h2)
      for (int k = 0; k < G.size(); ++k) {
        const int h12k = G.mul(G.mul(h1, h2), k);
        if (s.ends[h12k].empty() || s.ends[k].empty()) continue;
        for (int pi : s.ends[h1])
          for (int rho : s.ends[h2]) {
            const Morphism two = calc.compose(calc.left_tensor(pi, Z(h2, k, rho)),
                                              calc.right_tensor(Z(h1, G.mul(h2, k), pi), rho));
            for (int eta : s.ends[G.mul(h1, h2)])
              for (const Morphism& t : calc.onb(eta, {pi, rho})) {
                const Morphism lhs = calc.compose(calc.right_tensor(t, theta(k)), Z(G.mul(h1, h2), k, eta));
                const Morphism rhs = calc.compose(two, calc.left_tensor(theta(h12k), t));
                worst = std::max(worst, max_abs(lhs - rhs));
              }
          }
      }
  return worst;
}

std::vector<const CenterSimple*> CenterData::all() const {
  std::vector<const CenterSimple*> out;
  for (const auto& g : grades)
    for (const auto& x : g.simples) out.push_back(&x);
  return out;
}

int CenterData::count() const {
  int n = 0;
  for (const auto& g : grades) n += static_cast<int>(g.simples.size());
  return n;
}

int find_isomorphic(const TubeSetting& s, const std::vector<const CenterSimple*>& simples, const HalfBraiding& x) {
  for (size_t i = 0; i < simples.size(); ++i)
    if (simples[i]->hb.grade == x.grade && simples[i]->hb.object.size() == x.object.size() &&
        !hom_center(s, simples[i]->hb, x).empty())
      return static_cast<int>(i);
  return -1;
}

Mat tube_representation(const TubeAlgebra& tube, const HalfBraiding& x, const Vec& element) {
  const TubeSetting& s = tube.setting;
  const Calculus& calc = *s.calc;
  const Category& cat = calc.category();
  const TubeComponent& comp = tube.components[x.grade];
  const auto& tw = s.twist[x.grade];
  std::vector<int> off(cat.rank() + 1, 0);
  for (int r = 0; r < cat.rank(); ++r) {
    const bool end = std::count(s.ends[x.grade].begin(), s.ends[x.grade].end(), r) > 0;
    off[r + 1] = off[r] + (end ? calc.dim(x.object, r) : 0);
  }
  const int n = off.back();
  Mat out = Mat::Zero(n, n);
  for (int b = 0; b < comp.dim(); ++b) {
    if (element(b) == cplx(0)) continue;
    const auto& e = comp.basis[b];
    const Morphism xb = tube.element(e);
    const int pb = cat.dual[e.tube];
    const auto& sol = calc.conjugate_solution(e.tube);
    const Morphism open = calc.compose(calc.right_tensor(xb, pb), calc.left_tensor(e.left, sol.Rbar));
    const Morphism close = calc.compose(calc.left_tensor(x.object, calc.adjoint(sol.Rbar)),
                                        calc.right_tensor(calc.adjoint(x.E.at(e.tube)), pb));
    const int dr = off[e.right + 1] - off[e.right];
    for (int k = 0; k < dr; ++k) {
      Morphism v = calc.zero(Object::letter(e.right), x.object);
      v.blocks[e.right](k, 0) = 1.0;
      const Morphism mid = calc.left_tensor(tw[e.tube], calc.right_tensor(v, pb));
      const Morphism img = calc.compose(close, calc.compose(mid, open));
      out.block(off[e.left], off[e.right] + k, off[e.left + 1] - off[e.left], 1) += element(b) * img.blocks[e.left];
    }
  }
  return out;
}

std::vector<CenterSimple> extract_simples(const TubeAlgebra& tube, int grade, const WedderburnData& wd,
                                          std::uint64_t seed) {
  const TubeSetting& s = tube.setting;
  const Calculus& calc = *s.calc;
  const Category& cat = calc.category();
  std::mt19937_64 rng(seed);
  std::vector<CenterSimple> found;
  const size_t wanted = wd.blocks.size();
  for (int mu : s.ends[grade]) {
    if (found.size() == wanted) break;
    const HalfBraiding ind = induce_object(s, mu, grade);
    const auto end = hom_center(s, ind, ind);
    bool done = false;
    for (int attempt = 0; attempt < 20 && !done; ++attempt) {
      Morphism h = calc.zero(ind.object, ind.object);
      const Vec coef = random_complex(rng, static_cast<int>(end.size()));
      for (size_t k = 0; k < end.size(); ++k) h = h + coef(k) * end[k];
      h = h + calc.adjoint(h);
      // eigen data per channel, clustered globally
      std::vector<double> vals;
      std::vector<std::pair<int, int>> where;
      std::vector<Eigen::SelfAdjointEigenSolver<Mat>> solvers(cat.rank());
      for (int c = 0; c < cat.rank(); ++c) {
        if (h.blocks[c].size() == 0) continue;
        solvers[c].compute(h.blocks[c]);
        for (Eigen::Index i = 0; i < h.blocks[c].rows(); ++i) {
          vals.push_back(solvers[c].eigenvalues()(i));
          where.push_back({c, static_cast<int>(i)});
        }
      }
      const double scale = std::max(1.0, max_abs(h));
      auto clusters = cluster_values(vals, kClusterGap * scale);
      std::vector<CenterSimple> pieces;
      bool ok = true;
      for (const auto& cl : clusters) {
        Object w;
        std::vector<std::vector<int>> cols(cat.rank());
        for (int k : cl) cols[where[k].first].push_back(where[k].second);
        for (int c = 0; c < cat.rank(); ++c)
          for (size_t m = 0; m < cols[c].size(); ++m) w.words.push_back({c});
        Morphism v = calc.zero(w, ind.object);
        for (int c = 0; c < cat.rank(); ++c)
          for (size_t m = 0; m < cols[c].size(); ++m) v.blocks[c].col(m) = solvers[c].eigenvectors().col(cols[c][m]);
        CenterSimple piece;
        piece.hb = restrict_half_braiding(s, ind, v);
        if (hom_center(s, piece.hb, piece.hb).size() != 1) {
          ok = false;
          break;
        }
        piece.qdim = calc.dimension(w);
        pieces.push_back(std::move(piece));
      }
      if (!ok) continue;
      done = true;
      for (auto& p : pieces) {
        bool seen = false;
        for (const auto& f : found)
          if (f.hb.object.size() == p.hb.object.size() && !hom_center(s, f.hb, p.hb).empty()) seen = true;
        if (!seen) found.push_back(std::move(p));
      }
    }
    if (!done) throw InvariantError("could not split an induced object into simples");
  }
  if (found.size() != wanted)
    throw InvariantError("number of extracted simples differs from the number of tube blocks");

  for (auto& x : found) {
    for (size_t i = 0; i < wd.blocks.size(); ++i) {
      const Mat rep = tube_representation(tube, x.hb, wd.blocks[i].projection);
      if (max_abs(rep - Mat::Identity(rep.rows(), rep.cols())) < 1e-6) {
        if (x.block >= 0) throw InvariantError("simple matches two tube blocks");
        x.block = static_cast<int>(i);
      } else if (max_abs(rep) > 1e-6) {
        throw InvariantError("tube block projection does not act as 0 or 1 on a simple");
      }
    }
    if (x.block < 0) throw InvariantError("simple matches no tube block");
  }
  std::sort(found.begin(), found.end(), [](const CenterSimple& a, const CenterSimple& b) { return a.block < b.block; });
  for (size_t i = 0; i < found.size(); ++i)
    if (found[i].block != static_cast<int>(i)) throw InvariantError("simples and tube blocks are not in bijection");
  return found;
}

CenterData compute_center(const TubeSetting& s, std::uint64_t seed) {
  CenterData out{build_tube(s), {}, seed};
  for (int g = 0; g < s.grades(); ++g) {
    CenterGrade cg;
    cg.grade = g;
    const std::uint64_t gs = grade_seed(seed, g);
    if (out.tube.components[g].dim() > 0) {
      cg.wedderburn = decompose(out.tube, g, gs);
      cg.simples = extract_simples(out.tube, g, cg.wedderburn, gs + 1);
    }
    out.grades.push_back(std::move(cg));
  }
  return out;
}

}  // namespace gct
