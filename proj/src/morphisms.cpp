#include "gct/morphisms.hpp"

#include <cmath>
#include <numeric>

#include "gct/linalg.hpp"

namespace gct {

namespace {

Mat kron_identity(const Mat& a, int n) {
  Mat out = Mat::Zero(a.rows() * n, a.cols() * n);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (int m = 0; m < n; ++m) out(i * n + m, j * n + m) = a(i, j);
  return out;
}

void require_same_type(const Morphism& f, const Morphism& g, const char* what) {
  if (f.source != g.source || f.target != g.target)
    throw InvariantError(std::string(what) + ": morphisms have different types");
}

}  // namespace

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Object Object::letters(std::span<const int> labels) {
  Object x;
  for (int a : labels) x.words.push_back({a});
  return x;
}

bool Object::is_letter_sum() const {
  for (const auto& w : words)
    if (w.size() != 1) return false;
  return true;
}

Object tensor(const Object& x, const Object& y) {
  Object out;
  for (const auto& a : x.words)
    for (const auto& b : y.words) out.words.push_back(concat(a, b));
  return out;
}

Object relabel(const Object& x, std::span<const int> perm) {
  Object out = x;
  for (auto& w : out.words)
    for (int& a : w) a = perm[a];
  return out;
}

Object direct_sum(const Object& x, const Object& y) {
  Object out = x;
  out.words.insert(out.words.end(), y.words.begin(), y.words.end());
  return out;
}

Morphism operator+(const Morphism& f, const Morphism& g) {
  require_same_type(f, g, "sum");
  Morphism h = f;
  for (size_t c = 0; c < h.blocks.size(); ++c) h.blocks[c] += g.blocks[c];
  return h;
}

Morphism operator-(const Morphism& f, const Morphism& g) {
  require_same_type(f, g, "difference");
  Morphism h = f;
  for (size_t c = 0; c < h.blocks.size(); ++c) h.blocks[c] -= g.blocks[c];
  return h;
}

Morphism operator*(cplx s, const Morphism& f) {
  Morphism h = f;
  for (auto& b : h.blocks) b *= s;
  return h;
}

double max_abs(const Morphism& f) {
  double m = 0;
  for (const auto& b : f.blocks) m = std::max(m, max_abs(b));
  return m;
}

cplx hs_inner(const Morphism& f, const Morphism& g) {
  require_same_type(f, g, "inner product");
  cplx s = 0;
  for (size_t c = 0; c < f.blocks.size(); ++c)
    if (f.blocks[c].size()) s += (f.blocks[c].adjoint() * g.blocks[c]).trace();
  return s;
}

Calculus::Calculus(const Category& cat) : cat_(cat) {}

const std::vector<Tree>& Calculus::trees(const Word& w, int c) const {
  auto key = std::make_pair(w, c);
  auto it = trees_.find(key);
  if (it != trees_.end()) return it->second;
  std::vector<Tree> out;
  if (w.empty()) {
    if (c == 0) out.push_back({});
  } else {
    Word prefix(w.begin(), w.end() - 1);
    const int a = w.back();
    for (int e = 0; e < rank(); ++e) {
      const int n = cat_.N(e, a, c);
      if (n == 0) continue;
      for (const Tree& t : trees(prefix, e))
        for (int mu = 0; mu < n; ++mu) {
          Tree s = t;
          s.channels.push_back(e);
          s.vertices.push_back(mu);
          out.push_back(std::move(s));
        }
    }
  }
  return trees_.emplace(key, std::move(out)).first->second;
}

int Calculus::hom_dim(int c, const Word& w) const { return static_cast<int>(trees(w, c).size()); }

int Calculus::dim(const Object& x, int c) const {
  int d = 0;
  for (const auto& w : x.words) d += hom_dim(c, w);
  return d;
}

std::vector<int> Calculus::offsets(const Object& x, int c) const {
  std::vector<int> off(x.size() + 1, 0);
  for (int k = 0; k < x.size(); ++k) off[k + 1] = off[k] + hom_dim(c, x.words[k]);
  return off;
}

int Calculus::channel_offset(const Word& w, int c, int e) const {
  Word prefix(w.begin(), w.end() - 1);
  int off = 0;
  for (int x = 0; x < e; ++x) off += hom_dim(x, prefix) * cat_.N(x, w.back(), c);
  return off;
}

int Calculus::tree_index(const Word& w, int c, const Tree& t) const {
  if (w.empty()) return 0;
  const int n = static_cast<int>(w.size());
  const int e = t.channels[n - 1];
  Word prefix(w.begin(), w.end() - 1);
  Tree pt{{t.channels.begin(), t.channels.end() - 1}, {t.vertices.begin(), t.vertices.end() - 1}};
  return channel_offset(w, c, e) + tree_index(prefix, e, pt) * cat_.N(e, w.back(), c) +
         t.vertices[n - 1];
}

cplx Calculus::f_value(int a, int b, int x, int d, std::array<int, 3> row, std::array<int, 3> col) const {
  const FBlock& blk = cat_.f_block(a, b, x, d);
  return blk.matrix(blk.row_index(row[0], row[1], row[2]), blk.col_index(col[0], col[1], col[2]));
}

// Columns: the basis (1_p (x) t) v with t a left-nested tree of w into e and
// v a vertex (p, e -> c), ordered (e, t, v).  Rows: left-nested trees of p w.
const Mat& Calculus::left_move(int p, const Word& w, int c) const {
  auto key = std::make_tuple(p, w, c);
  auto it = moves_.find(key);
  if (it != moves_.end()) return it->second;
  const Word pw = concat({p}, w);
  const int n = hom_dim(c, pw);
  Mat u = Mat::Zero(n, n);
  if (w.empty()) {
    u = Mat::Identity(n, n);
  } else {
    const Word prefix(w.begin(), w.end() - 1);
    const Word pprefix = concat({p}, prefix);
    const int a = w.back();
    const int r = rank();
    // offsets of the P-basis of p w into c, by top channel e
    std::vector<int> off_p(r + 1, 0);
    for (int e = 0; e < r; ++e) off_p[e + 1] = off_p[e] + hom_dim(e, w) * cat_.N(p, e, c);
    for (int e = 0; e < r; ++e) {
      const int ne = cat_.N(p, e, c);
      if (ne == 0) continue;
      for (int e1 = 0; e1 < r; ++e1) {
        const int nn = cat_.N(e1, a, e);
        if (nn == 0) continue;
        const int n1 = hom_dim(e1, prefix);
        const int off_w = channel_offset(w, e, e1);
        for (int t1 = 0; t1 < n1; ++t1)
          for (int nu = 0; nu < nn; ++nu)
            for (int mu = 0; mu < ne; ++mu) {
              const int col = off_p[e] + (off_w + t1 * nn + nu) * ne + mu;
              for (int f = 0; f < r; ++f) {
                const int nf = cat_.N(p, e1, f);
                const int nb = cat_.N(f, a, c);
                if (nf == 0 || nb == 0) continue;
                const Mat& uf = left_move(p, prefix, f);
                int off_pf = 0;
                for (int x = 0; x < e1; ++x) off_pf += hom_dim(x, prefix) * cat_.N(p, x, f);
                const int off_l = channel_offset(pw, c, f);
                for (int al = 0; al < nf; ++al) {
                  const int pcol = off_pf + t1 * nf + al;
                  for (int be = 0; be < nb; ++be) {
                    const cplx coef = std::conj(f_value(p, e1, a, c, {f, al, be}, {e, nu, mu}));
                    if (coef == cplx(0)) continue;
                    for (int j = 0; j < uf.rows(); ++j) u(off_l + j * nb + be, col) += uf(j, pcol) * coef;
                  }
                }
              }
            }
      }
    }
  }
  return moves_.emplace(key, std::move(u)).first->second;
}

Morphism Calculus::zero(const Object& source, const Object& target) const {
  Morphism f{source, target, {}};
  f.blocks.reserve(rank());
  for (int c = 0; c < rank(); ++c) f.blocks.push_back(Mat::Zero(dim(target, c), dim(source, c)));
  return f;
}

Morphism Calculus::identity(const Object& x) const {
  Morphism f{x, x, {}};
  for (int c = 0; c < rank(); ++c) {
    const int d = dim(x, c);
    f.blocks.push_back(Mat::Identity(d, d));
  }
  return f;
}

Morphism Calculus::compose(const Morphism& f, const Morphism& g) const {
  if (f.source != g.target) throw InvariantError("compose: source of f differs from target of g");
  Morphism h{g.source, f.target, {}};
  for (int c = 0; c < rank(); ++c) h.blocks.push_back(f.blocks[c] * g.blocks[c]);
  return h;
}

Morphism Calculus::adjoint(const Morphism& f) const {
  Morphism h{f.target, f.source, {}};
  for (const auto& b : f.blocks) h.blocks.push_back(b.adjoint());
  return h;
}

Morphism Calculus::left_tensor(int p, const Morphism& f) const {
  Object src, tgt;
  for (const auto& w : f.source.words) src.words.push_back(concat({p}, w));
  for (const auto& w : f.target.words) tgt.words.push_back(concat({p}, w));
  Morphism h = zero(src, tgt);
  const int r = rank();
  for (int c = 0; c < r; ++c) {
    if (h.blocks[c].size() == 0) continue;
    auto off_t = offsets(tgt, c), off_s = offsets(src, c);
    for (int l = 0; l < f.target.size(); ++l)
      for (int k = 0; k < f.source.size(); ++k) {
        const Word& tw = f.target.words[l];
        const Word& sw = f.source.words[k];
        const int nt = off_t[l + 1] - off_t[l], ns = off_s[k + 1] - off_s[k];
        if (nt == 0 || ns == 0) continue;
        Mat d = Mat::Zero(nt, ns);
        int pt = 0, ps = 0;
        bool any = false;
        for (int e = 0; e < r; ++e) {
          const int ne = cat_.N(p, e, c);
          const int dt = hom_dim(e, tw), ds = hom_dim(e, sw);
          if (ne && dt && ds) {
            auto ot = offsets(f.target, e), os = offsets(f.source, e);
            Mat sub = f.blocks[e].block(ot[l], os[k], dt, ds);
            if (max_abs(sub) != 0) {
              d.block(pt, ps, dt * ne, ds * ne) = kron_identity(sub, ne);
              any = true;
            }
          }
          pt += dt * ne;
          ps += ds * ne;
        }
        if (!any) continue;
        h.blocks[c].block(off_t[l], off_s[k], nt, ns) =
            left_move(p, tw, c) * d * left_move(p, sw, c).adjoint();
      }
  }
  return h;
}

Morphism Calculus::left_tensor(const Word& w, const Morphism& f) const {
  Morphism h = f;
  for (auto it = w.rbegin(); it != w.rend(); ++it) h = left_tensor(*it, h);
  return h;
}

Morphism Calculus::left_tensor(const Object& x, const Morphism& f) const {
  std::vector<Morphism> parts;
  for (const auto& w : x.words) parts.push_back(left_tensor(w, f));
  return direct_sum(parts);
}

Morphism Calculus::right_tensor(const Morphism& f, int p) const {
  Object src, tgt;
  for (const auto& w : f.source.words) src.words.push_back(concat(w, {p}));
  for (const auto& w : f.target.words) tgt.words.push_back(concat(w, {p}));
  Morphism h = zero(src, tgt);
  const int r = rank();
  for (int c = 0; c < r; ++c) {
    if (h.blocks[c].size() == 0) continue;
    auto off_t = offsets(tgt, c), off_s = offsets(src, c);
    for (int l = 0; l < f.target.size(); ++l)
      for (int k = 0; k < f.source.size(); ++k) {
        const Word& tw = f.target.words[l];
        const Word& sw = f.source.words[k];
        int pt = off_t[l], ps = off_s[k];
        for (int e = 0; e < r; ++e) {
          const int ne = cat_.N(e, p, c);
          const int dt = hom_dim(e, tw), ds = hom_dim(e, sw);
          if (ne && dt && ds) {
            auto ot = offsets(f.target, e), os = offsets(f.source, e);
            h.blocks[c].block(pt, ps, dt * ne, ds * ne) =
                kron_identity(f.blocks[e].block(ot[l], os[k], dt, ds), ne);
          }
          pt += dt * ne;
          ps += ds * ne;
        }
      }
  }
  return h;
}

Morphism Calculus::right_tensor(const Morphism& f, const Word& w) const {
  Morphism h = f;
  for (int a : w) h = right_tensor(h, a);
  return h;
}

Morphism Calculus::right_tensor(const Morphism& f, const Object& x) const {
  const int nx = x.size();
  Morphism h = zero(gct::tensor(f.source, x), gct::tensor(f.target, x));
  for (int j = 0; j < nx; ++j) {
    Morphism part = right_tensor(f, x.words[j]);
    std::vector<int> tmap, smap;
    for (int l = 0; l < f.target.size(); ++l) tmap.push_back(l * nx + j);
    for (int k = 0; k < f.source.size(); ++k) smap.push_back(k * nx + j);
    place(h, part, tmap, smap);
  }
  return h;
}

Morphism Calculus::tensor(const Morphism& f, const Morphism& g) const {
  return compose(right_tensor(f, g.target), left_tensor(f.source, g));
}

Morphism Calculus::relabel(const Morphism& f, std::span<const int> perm) const {
  Morphism h = zero(gct::relabel(f.source, perm), gct::relabel(f.target, perm));
  auto index_map = [&](const Object& x, int c) {
    std::vector<int> map;
    const Object y = gct::relabel(x, perm);
    const int pc = perm[c];
    auto off = offsets(y, pc);
    for (int k = 0; k < x.size(); ++k)
      for (const Tree& t : trees(x.words[k], c)) {
        Tree s = t;
        for (int& e : s.channels) e = perm[e];
        map.push_back(off[k] + tree_index(y.words[k], pc, s));
      }
    return map;
  };
  for (int c = 0; c < rank(); ++c) {
    if (f.blocks[c].size() == 0) continue;
    auto rows = index_map(f.target, c), cols = index_map(f.source, c);
    Mat& dst = h.blocks[perm[c]];
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) dst(rows[i], cols[j]) = f.blocks[c](i, j);
  }
  return h;
}

void Calculus::place(Morphism& into, const Morphism& piece, std::span<const int> tgt,
                     std::span<const int> src) const {
  for (int c = 0; c < rank(); ++c) {
    if (piece.blocks[c].size() == 0) continue;
    auto pt = offsets(piece.target, c), ps = offsets(piece.source, c);
    auto it = offsets(into.target, c), is = offsets(into.source, c);
    for (int l = 0; l < piece.target.size(); ++l)
      for (int k = 0; k < piece.source.size(); ++k) {
        const int nt = pt[l + 1] - pt[l], ns = ps[k + 1] - ps[k];
        if (nt == 0 || ns == 0) continue;
        if (into.target.words[tgt[l]] != piece.target.words[l] ||
            into.source.words[src[k]] != piece.source.words[k])
          throw InvariantError("place: summand words do not match");
        into.blocks[c].block(it[tgt[l]], is[src[k]], nt, ns) = piece.blocks[c].block(pt[l], ps[k], nt, ns);
      }
  }
}

Morphism Calculus::restrict(const Morphism& f, int tgt, int src) const {
  Morphism h = zero(Object::word(f.source.words[src]), Object::word(f.target.words[tgt]));
  for (int c = 0; c < rank(); ++c) {
    if (h.blocks[c].size() == 0) continue;
    auto ot = offsets(f.target, c), os = offsets(f.source, c);
    h.blocks[c] = f.blocks[c].block(ot[tgt], os[src], h.blocks[c].rows(), h.blocks[c].cols());
  }
  return h;
}

Morphism Calculus::direct_sum(const std::vector<Morphism>& parts) const {
  Object src, tgt;
  for (const auto& p : parts) {
    src = gct::direct_sum(src, p.source);
    tgt = gct::direct_sum(tgt, p.target);
  }
  Morphism h = zero(src, tgt);
  int ot = 0, os = 0;
  for (const auto& p : parts) {
    std::vector<int> tmap(p.target.size()), smap(p.source.size());
    std::iota(tmap.begin(), tmap.end(), ot);
    std::iota(smap.begin(), smap.end(), os);
    place(h, p, tmap, smap);
    ot += p.target.size();
    os += p.source.size();
  }
  return h;
}

std::vector<Morphism> Calculus::onb(int c, const Word& w) const {
  std::vector<Morphism> out;
  const int n = hom_dim(c, w);
  for (int k = 0; k < n; ++k) {
    Morphism t = zero(Object::letter(c), Object::word(w));
    t.blocks[c](k, 0) = 1.0;
    out.push_back(std::move(t));
  }
  return out;
}

const ConjugateSolution& Calculus::conjugate_solution(int a) const {
  auto it = conj_.find(a);
  if (it != conj_.end()) return it->second;
  const int ab = cat_.dual[a];
  const double d = cat_.qdim[a];
  ConjugateSolution s;
  s.R = zero(Object::unit(), Object::word({ab, a}));
  s.R.blocks[0](0, 0) = std::sqrt(d);
  Morphism rbar0 = zero(Object::unit(), Object::word({a, ab}));
  rbar0.blocks[0](0, 0) = std::sqrt(d);
  const cplx x0 =
      compose(right_tensor(adjoint(s.R), ab), left_tensor(ab, rbar0)).blocks[ab](0, 0);
  s.Rbar = (1.0 / x0) * rbar0;

  auto zig1 = compose(right_tensor(adjoint(s.R), ab), left_tensor(ab, s.Rbar));
  auto zig2 = compose(right_tensor(adjoint(s.Rbar), a), left_tensor(a, s.R));
  s.residual = std::max({max_abs(zig1 - identity(Object::letter(ab))),
                         max_abs(zig2 - identity(Object::letter(a))),
                         std::abs(compose(adjoint(s.R), s.R).blocks[0](0, 0) - d),
                         std::abs(compose(adjoint(s.Rbar), s.Rbar).blocks[0](0, 0) - d)});
  if (ab == a) s.fs_indicator = std::real(s.Rbar.blocks[0](0, 0) / s.R.blocks[0](0, 0)) > 0 ? 1 : -1;
  return conj_.emplace(a, std::move(s)).first->second;
}

Object Calculus::dual(const Object& x) const {
  if (!x.is_letter_sum()) throw InvariantError("dual is only implemented for sums of simples");
  Object out = x;
  for (auto& w : out.words) w[0] = cat_.dual[w[0]];
  return out;
}

ConjugateSolution Calculus::conjugate_solution(const Object& x) const {
  const Object xb = dual(x);
  const int n = x.size();
  ConjugateSolution s;
  s.R = zero(Object::unit(), gct::tensor(xb, x));
  s.Rbar = zero(Object::unit(), gct::tensor(x, xb));
  const std::vector<int> zero_idx{0};
  for (int i = 0; i < n; ++i) {
    const auto& one = conjugate_solution(x.words[i][0]);
    const std::vector<int> at{i * n + i};
    place(s.R, one.R, at, zero_idx);
    place(s.Rbar, one.Rbar, at, zero_idx);
    s.residual = std::max(s.residual, one.residual);
  }
  return s;
}

Morphism Calculus::frobenius_transpose(const Morphism& t) const {
  if (t.source.size() != 1 || t.source.words[0].size() != 1 || t.target.size() != 1 ||
      t.target.words[0].size() != 2)
    throw InvariantError("frobenius_transpose expects a morphism zeta -> pi xi");
  const int zeta = t.source.words[0][0];
  const int pi = t.target.words[0][0], xi = t.target.words[0][1];
  const int zb = cat_.dual[zeta], xb = cat_.dual[xi];
  const double k = std::sqrt(cat_.qdim[xi] / cat_.qdim[zeta]);
  Morphism bend = compose(left_tensor(zb, right_tensor(t, xb)), right_tensor(conjugate_solution(zeta).R, xb));
  return k * compose(left_tensor(Word{zb, pi}, adjoint(conjugate_solution(xi).Rbar)), bend);
}

Morphism Calculus::frobenius_untranspose(const Morphism& s) const {
  if (s.source.size() != 1 || s.source.words[0].size() != 1 || s.target.size() != 1 ||
      s.target.words[0].size() != 2)
    throw InvariantError("frobenius_untranspose expects a morphism dual(xi) -> dual(zeta) pi");
  const int xi = cat_.dual[s.source.words[0][0]];
  const int zeta = cat_.dual[s.target.words[0][0]];
  const int pi = s.target.words[0][1];
  const double k = std::sqrt(cat_.qdim[zeta] / cat_.qdim[xi]);
  Morphism bend = compose(left_tensor(zeta, right_tensor(s, xi)), left_tensor(zeta, conjugate_solution(xi).R));
  return k * compose(right_tensor(adjoint(conjugate_solution(zeta).Rbar), Word{pi, xi}), bend);
}

Morphism Calculus::hat(const Morphism& t) const {
  const Object& x = t.source;
  const Object& y = t.target;
  const Object xb = dual(x), yb = dual(y);
  const auto rx = conjugate_solution(x);
  const auto ry = conjugate_solution(y);
  Morphism step1 = left_tensor(xb, ry.Rbar);                            // xb -> xb y yb
  Morphism step2 = left_tensor(xb, right_tensor(adjoint(t), yb));       // -> xb x yb
  Morphism step3 = right_tensor(adjoint(rx.R), yb);                     // -> yb
  return compose(step3, compose(step2, step1));
}

cplx Calculus::trace(const Morphism& f) const {
  if (f.source != f.target) throw InvariantError("trace of a non-endomorphism");
  cplx s = 0;
  for (int c = 0; c < rank(); ++c)
    if (f.blocks[c].size()) s += cat_.qdim[c] * f.blocks[c].trace();
  return s;
}

double Calculus::dimension(const Object& x) const {
  double s = 0;
  for (int c = 0; c < rank(); ++c) s += cat_.qdim[c] * dim(x, c);
  return s;
}

}  // namespace gct
