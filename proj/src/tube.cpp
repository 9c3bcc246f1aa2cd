#include "gct/tube.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "gct/linalg.hpp"

namespace gct {

namespace {

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

void check_closed(const Category& cat, std::span<const int> sub) {
  std::set<int> s(sub.begin(), sub.end());
  if (!s.count(0)) throw ValidationError("subcategory", "subcategory must contain the unit");
  for (int a : s) {
    if (a < 0 || a >= cat.rank()) throw ValidationError("subcategory", "subcategory label out of range");
    if (!s.count(cat.dual[a])) throw ValidationError("subcategory", "subcategory not closed under duals");
    for (int b : s)
      for (int c = 0; c < cat.rank(); ++c)
        if (cat.N(a, b, c) && !s.count(c))
          throw ValidationError("subcategory", "subcategory not closed under fusion");
  }
}

// Adds scale * (coordinates of z) to out; z : (left, xi) -> (g[xi], right).
void accumulate(const TubeComponent& comp, const Morphism& z, int left, int xi, int right, cplx scale,
                Vec& out) {
  for (size_t c = 0; c < z.blocks.size(); ++c) {
    const Mat& b = z.blocks[c];
    if (b.size() == 0) continue;
    const int base = comp.index_of({comp.grade, left, xi, right, static_cast<int>(c), 0, 0});
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (b(i, j) != cplx(0)) out(base + i * b.cols() + j) += scale * b(i, j);
  }
}

bool less_projection(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > 1e-6) return a(i).real() < b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > 1e-6) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

int TubeSetting::word_grade(const Word& w) const {
  const Category& c = category();
  if (kind == Kind::Twisted) return -1;
  if (kind == Kind::Full) return group.neutral();
  int g = group.neutral();
  for (int a : w) g = group.mul(g, c.degree(a));
  return g;
}

std::string TubeSetting::kind_name() const {
  switch (kind) {
    case Kind::Relative: return "relative";
    case Kind::Full: return "full";
    case Kind::Twisted: return "twisted";
  }
  return "";
}

TubeSetting relative_setting(const Category& cat, std::span<const int> subcat,
                             std::optional<GroupAction> action) {
  check_closed(cat, subcat);
  for (int a : subcat)
    if (cat.degree(a) != cat.group.neutral())
      throw ValidationError("subcategory", "subcategory labels must have neutral degree");
  TubeSetting s;
  s.calc = std::make_shared<Calculus>(cat);
  s.kind = TubeSetting::Kind::Relative;
  s.group = cat.group;
  s.tube_labels.assign(subcat.begin(), subcat.end());
  std::sort(s.tube_labels.begin(), s.tube_labels.end());
  for (int g = 0; g < cat.group.size(); ++g) {
    s.ends.push_back(cat.labels_of_degree(g));
    s.twist.push_back(identity_perm(cat.rank()));
  }
  GroupAction act = action ? *action : cat.trivial_action();
  verify_action(cat, act, 1e-9);
  for (const auto& p : act.perm)
    for (int a : s.tube_labels)
      if (!std::count(s.tube_labels.begin(), s.tube_labels.end(), p[a]))
        throw ValidationError("action", "action does not preserve the subcategory");
  s.action = act.perm;
  s.action_name = act.name;
  return s;
}

TubeSetting full_setting(const Category& cat) {
  TubeSetting s;
  s.calc = std::make_shared<Calculus>(cat);
  s.kind = TubeSetting::Kind::Full;
  s.tube_labels = identity_perm(cat.rank());
  s.ends = {s.tube_labels};
  s.twist = {identity_perm(cat.rank())};
  s.action = {identity_perm(cat.rank())};
  return s;
}

TubeSetting twisted_setting(const Category& d0, const GroupAction& action) {
  verify_action(d0, action, 1e-9);
  TubeSetting s;
  s.calc = std::make_shared<Calculus>(d0);
  s.kind = TubeSetting::Kind::Twisted;
  s.group = d0.group;
  s.tube_labels = identity_perm(d0.rank());
  s.ends.assign(d0.group.size(), s.tube_labels);
  s.twist = action.perm;
  s.action = action.perm;
  s.action_name = action.name;
  return s;
}

TubeSetting setting_from_subcat(const Category& cat, const std::string& subcat,
                                std::optional<GroupAction> action) {
  if (subcat == "all") {
    if (action) throw ValidationError("action", "an action needs a relative or twisted setting");
    return full_setting(cat);
  }
  if (subcat == "degree0") return relative_setting(cat, cat.labels_of_degree(cat.group.neutral()), action);
  std::vector<int> labels;
  std::stringstream ss(subcat);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) labels.push_back(cat.label_index(item));
  if (static_cast<int>(labels.size()) == cat.rank() && !action) return full_setting(cat);
  return relative_setting(cat, labels, action);
}

Vec TubeComponent::product(const Vec& x, const Vec& y) const { return left_matrix(x) * y; }

Mat TubeComponent::left_matrix(const Vec& x) const {
  Mat m = Mat::Zero(dim(), dim());
  for (int a = 0; a < dim(); ++a)
    if (x(a) != cplx(0)) m += x(a) * left_mult[a];
  return m;
}

int TubeComponent::index_of(const TubeBasisElement& b) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), b);
  if (it == basis.end() || *it != b) throw InvariantError("tube basis element not found");
  return static_cast<int>(it - basis.begin());
}

int TubeAlgebra::dim() const {
  int d = 0;
  for (const auto& c : components) d += c.dim();
  return d;
}

int TubeAlgebra::offset(int grade) const {
  int d = 0;
  for (int g = 0; g < grade; ++g) d += components[g].dim();
  return d;
}

Morphism TubeAlgebra::element(const TubeBasisElement& b) const {
  const Calculus& calc = *setting.calc;
  Morphism m = calc.zero(Object::word({b.left, b.tube}),
                         Object::word({setting.twist[b.grade][b.tube], b.right}));
  m.blocks[b.channel](b.row, b.col) = 1.0;
  return m;
}

TubeAlgebra build_tube(const TubeSetting& setting) {
  const Calculus& calc = *setting.calc;
  const Category& cat = calc.category();
  TubeAlgebra tube{setting, {}};
  for (int g = 0; g < setting.grades(); ++g) {
    const auto& tw = setting.twist[g];
    TubeComponent comp;
    comp.grade = g;
    for (int s : setting.ends[g])
      for (int p : setting.tube_labels)
        for (int r : setting.ends[g])
          for (int c = 0; c < cat.rank(); ++c) {
            const int nt = calc.hom_dim(c, {tw[p], r}), ns = calc.hom_dim(c, {s, p});
            for (int i = 0; i < nt; ++i)
              for (int j = 0; j < ns; ++j) comp.basis.push_back({g, s, p, r, c, i, j});
          }
    const int n = comp.dim();
    comp.left_mult.assign(n, Mat::Zero(n, n));
    comp.star = Mat::Zero(n, n);
    comp.trace = Vec::Zero(n);
    comp.unit = Vec::Zero(n);
    std::vector<Morphism> elems;
    for (const auto& b : comp.basis) elems.push_back(tube.element(b));

    for (int a = 0; a < n; ++a) {
      const auto& ba = comp.basis[a];
      const Morphism& x = elems[a];
      for (int b = 0; b < n; ++b) {
        const auto& bb = comp.basis[b];
        if (bb.left != ba.right) continue;
        const Morphism& y = elems[b];
        // (1_{g[pi]} (x) Y)(X (x) 1_{pi'}) : s pi pi' -> g[pi] g[pi'] r'
        const Morphism inner = calc.compose(calc.left_tensor(tw[ba.tube], y), calc.right_tensor(x, bb.tube));
        Vec col = Vec::Zero(n);
        for (int xi : setting.tube_labels)
          for (const Morphism& t : calc.onb(xi, {ba.tube, bb.tube})) {
            const Morphism top = calc.right_tensor(calc.adjoint(calc.relabel(t, tw)), bb.right);
            const Morphism z = calc.compose(top, calc.compose(inner, calc.left_tensor(ba.left, t)));
            accumulate(comp, z, ba.left, xi, bb.right, 1.0, col);
          }
        for (int k = 0; k < n; ++k) comp.left_mult[a](k, b) = col(k);
      }
      // star: (1 (x) (1_s (x) Rbar_pi^*)(X^* (x) 1)) (g[R_pi] (x) 1_{r pibar})
      const int p = ba.tube, pb = cat.dual[p];
      const Morphism lower = calc.compose(calc.left_tensor(ba.left, calc.adjoint(calc.conjugate_solution(p).Rbar)),
                                          calc.right_tensor(calc.adjoint(x), pb));
      const Morphism z = calc.compose(calc.left_tensor(tw[pb], lower),
                                      calc.right_tensor(calc.relabel(calc.conjugate_solution(p).R, tw),
                                                        Word{ba.right, pb}));
      Vec col = Vec::Zero(n);
      accumulate(comp, z, ba.right, pb, ba.left, 1.0, col);
      comp.star.col(a) = col;
      if (p == 0 && ba.left == ba.right && ba.channel == ba.left)
        comp.trace(a) = cat.qdim[ba.left];
    }
    for (int pi : setting.ends[g]) comp.unit(comp.index_of({g, pi, 0, pi, pi, 0, 0})) = 1.0;
    tube.components.push_back(std::move(comp));
  }
  return tube;
}

TubeAlgebra build_tube(const Category& cat, const std::string& subcat) {
  return build_tube(setting_from_subcat(cat, subcat));
}

TubeAlgebra build_twisted_tube(const Category& d0, const GroupAction& action) {
  return build_tube(twisted_setting(d0, action));
}

bool AlgebraReport::ok(double tol) const {
  return associativity < tol && star_involution < tol && star_antimultiplicative < tol &&
         trace_tracial < tol && unit < tol && trace_min_eigenvalue > 0;
}

AlgebraReport verify_component(const TubeComponent& comp) {
  AlgebraReport rep;
  const int n = comp.dim();
  if (n == 0) {
    rep.trace_min_eigenvalue = 1;
    return rep;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Mat lhs = comp.left_mult[a] * comp.left_mult[b];
      Mat rhs = comp.left_matrix(comp.left_mult[a].col(b));
      rep.associativity = std::max(rep.associativity, max_abs(lhs - rhs));
    }
  rep.star_involution = max_abs(comp.star * comp.star.conjugate() - Mat::Identity(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Vec lhs = comp.star_of(comp.left_mult[a].col(b));
      Vec rhs = comp.product(comp.star.col(b), comp.star.col(a));
      rep.star_antimultiplicative = std::max(rep.star_antimultiplicative, max_abs(lhs - rhs));
      cplx ab = comp.trace.transpose() * comp.left_mult[a].col(b);
      cplx ba = comp.trace.transpose() * comp.left_mult[b].col(a);
      rep.trace_tracial = std::max(rep.trace_tracial, std::abs(ab - ba));
    }
  Mat gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = comp.trace.transpose() * comp.product(comp.star.col(i), Vec::Unit(n, j));
  // tau(x^* x) = sum conj(x_i) x_j gram(i,j) once star is antilinear
  Mat herm = (gram + gram.adjoint()) / 2.0;
  rep.trace_tracial = std::max(rep.trace_tracial, max_abs(gram - gram.adjoint()));
  rep.trace_min_eigenvalue = Eigen::SelfAdjointEigenSolver<Mat>(herm).eigenvalues().minCoeff();
  Mat lu = comp.left_matrix(comp.unit);
  rep.unit = max_abs(lu - Mat::Identity(n, n));
  for (int b = 0; b < n; ++b)
    rep.unit = std::max(rep.unit, max_abs(comp.product(Vec::Unit(n, b), comp.unit) - Vec::Unit(n, b)));
  return rep;
}

AlgebraReport verify_algebra(const TubeAlgebra& tube) {
  AlgebraReport all;
  all.trace_min_eigenvalue = 1e300;
  for (const auto& comp : tube.components) {
    auto r = verify_component(comp);
    all.associativity = std::max(all.associativity, r.associativity);
    all.star_involution = std::max(all.star_involution, r.star_involution);
    all.star_antimultiplicative = std::max(all.star_antimultiplicative, r.star_antimultiplicative);
    all.trace_tracial = std::max(all.trace_tracial, r.trace_tracial);
    all.unit = std::max(all.unit, r.unit);
    if (comp.dim()) all.trace_min_eigenvalue = std::min(all.trace_min_eigenvalue, r.trace_min_eigenvalue);
  }
  return all;
}

WedderburnData decompose(const TubeAlgebra& tube, int grade, std::uint64_t seed) {
  if (grade < 0 || grade >= static_cast<int>(tube.components.size()))
    throw ValidationError("grade", "grade out of range");
  const TubeComponent& comp = tube.components[grade];
  const int n = comp.dim();
  WedderburnData out;
  out.grade = grade;
  out.seed = seed;
  if (n == 0) return out;

  Mat commutator(n * n, n);
  for (int i = 0; i < n; ++i) {
    Mat right(n, n);
    for (int a = 0; a < n; ++a) right.col(a) = comp.left_mult[a].col(i);
    commutator.middleRows(i * n, n) = comp.left_mult[i] - right;
  }
  const Mat center = nullspace(commutator, 1e-9);
  const int k = static_cast<int>(center.cols());
  std::mt19937_64 rng(seed);

  for (int attempt = 1; attempt <= 20; ++attempt) {
    out.attempts = attempt;
    Vec z = center * random_complex(rng, k);
    Vec h = z + comp.star_of(z);
    Mat m = center.adjoint() * comp.left_matrix(h) * center;
    Eigen::ComplexEigenSolver<Mat> es(m);
    std::vector<double> vals(k);
    for (int i = 0; i < k; ++i) vals[i] = es.eigenvalues()(i).real();
    auto clusters = cluster_values(vals, kClusterGap * std::max(1.0, max_abs(m)));
    if (static_cast<int>(clusters.size()) != k) continue;

    std::vector<WedderburnBlock> blocks;
    Vec total = Vec::Zero(n);
    double residual = 0;
    bool good = true;
    for (const auto& cl : clusters) {
      Vec p = center * es.eigenvectors().col(cl[0]);
      Vec p2 = comp.product(p, p);
      const cplx kappa = p.dot(p2) / p.dot(p);
      if (std::abs(kappa) < 1e-12) {
        good = false;
        break;
      }
      p /= kappa;
      residual = std::max(residual, max_abs(comp.product(p, p) - p));
      total += p;
      WedderburnBlock blk;
      blk.projection = p;
      const double t = comp.left_matrix(p).trace().real();
      blk.rank = static_cast<int>(std::lround(std::sqrt(std::max(0.0, t))));
      if (blk.rank < 1 || std::abs(t - blk.rank * blk.rank) > 1e-6) {
        good = false;
        break;
      }
      for (int pi : tube.setting.ends[grade]) {
        Vec e = Vec::Unit(n, comp.index_of({grade, pi, 0, pi, pi, 0, 0}));
        const double c = comp.left_matrix(comp.product(p, e)).trace().real() / blk.rank;
        const long cr = std::lround(c);
        if (std::abs(c - cr) > 1e-6) good = false;
        if (cr) blk.corner[pi] = static_cast<int>(cr);
      }
      blocks.push_back(std::move(blk));
    }
    if (!good) continue;
    for (size_t i = 0; i < blocks.size(); ++i)
      for (size_t j = 0; j < blocks.size(); ++j)
        if (i != j)
          residual = std::max(residual, max_abs(comp.product(blocks[i].projection, blocks[j].projection)));
    residual = std::max(residual, max_abs(total - comp.unit));
    if (residual > 1e-6) continue;

    std::sort(blocks.begin(), blocks.end(), [](const WedderburnBlock& a, const WedderburnBlock& b) {
      if (a.corner.begin()->first != b.corner.begin()->first)
        return a.corner.begin()->first < b.corner.begin()->first;
      if (a.rank != b.rank) return a.rank < b.rank;
      return less_projection(a.projection, b.projection);
    });
    out.blocks = std::move(blocks);
    out.residual = residual;
    int sum = 0;
    for (const auto& b : out.blocks) sum += b.rank * b.rank;
    if (sum != n) throw InvariantError("Wedderburn ranks do not add up to the dimension");
    return out;
  }
  throw InvariantError("tube centre decomposition failed: degenerate probes or ill-conditioned centre");
}

IsoReport twisted_untwisted_iso(const TubeAlgebra& tw, const TubeAlgebra& rel) {
  if (!tw.setting.twisted() || rel.setting.kind != TubeSetting::Kind::Relative)
    throw ValidationError("iso", "expected a twisted tube and a relative tube");
  const Group& G = tw.setting.group;
  const int r0 = tw.setting.category().rank();
  if (rel.setting.category().rank() != r0 * G.size() || rel.setting.group.size() != G.size())
    throw ValidationError("iso", "relative tube is not over the crossed extension");
  IsoReport rep;
  auto idx = [&](int h, int a) { return h * r0 + a; };
  for (int g = 0; g < G.size(); ++g) {
    const TubeComponent& a = tw.components[g];
    const int gi = G.inv(g);
    const TubeComponent& b = rel.components[gi];
    if (a.dim() != b.dim()) throw ValidationError("iso", "basis bijection fails: dimension mismatch");
    std::vector<int> phi(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
      const auto& e = a.basis[i];
      phi[i] = b.index_of({gi, idx(gi, e.left), e.tube, idx(gi, e.right), idx(gi, e.channel), e.row, e.col});
    }
    const int n = a.dim();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        for (int k = 0; k < n; ++k)
          rep.max_deviation = std::max(rep.max_deviation, std::abs(a.left_mult[x](k, y) - b.left_mult[phi[x]](phi[k], phi[y])));
        rep.max_deviation = std::max(rep.max_deviation, std::abs(a.star(x, y) - b.star(phi[x], phi[y])));
      }
    for (int x = 0; x < n; ++x)
      rep.max_deviation = std::max(rep.max_deviation, std::abs(a.trace(x) - b.trace(phi[x])));
    rep.dim += n;
  }
  return rep;
}

std::uint64_t grade_seed(std::uint64_t seed, int grade) {
  return seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(grade + 1);
}

}  // namespace gct
