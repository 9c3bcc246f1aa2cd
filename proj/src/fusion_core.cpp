#include "gct/fusion_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace gct {

namespace {

using nlohmann::json;

std::string triple(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw ValidationError("schema", std::string("missing field '") + key + "'");
  return doc.at(key);
}

template <class T>
T as(const json& v, const std::string& what) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ValidationError("schema", "field '" + what + "' has the wrong type");
  }
}

cplx parse_entry(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ValidationError("schema", "F matrix entry must be [re, im]");
}

std::array<int, 3> parse_index(const json& v) {
  if (v.is_number_integer()) return {v.get<int>(), 0, 0};
  if (v.is_array() && v.size() == 1) return {v[0].get<int>(), 0, 0};
  if (v.is_array() && v.size() == 3) return {v[0].get<int>(), v[1].get<int>(), v[2].get<int>()};
  throw ValidationError("schema", "F row/col index must be e or [e, mu, nu]");
}

// Admissible vertex triples for a three-leaf tree, in canonical order.
std::vector<std::array<int, 3>> left_trees(const Category& c, int a, int b, int x, int d) {
  std::vector<std::array<int, 3>> out;
  for (int e = 0; e < c.rank(); ++e)
    for (int mu = 0; mu < c.N(a, b, e); ++mu)
      for (int nu = 0; nu < c.N(e, x, d); ++nu) out.push_back({e, mu, nu});
  return out;
}

std::vector<std::array<int, 3>> right_trees(const Category& c, int a, int b, int x, int d) {
  std::vector<std::array<int, 3>> out;
  for (int f = 0; f < c.rank(); ++f)
    for (int rho = 0; rho < c.N(b, x, f); ++rho)
      for (int sigma = 0; sigma < c.N(a, f, d); ++sigma) out.push_back({f, rho, sigma});
  return out;
}

void validate_ring(const Category& c) {
  const int r = c.rank();
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      if (c.N(0, a, b) != (a == b) || c.N(a, 0, b) != (a == b))
        throw ValidationError("unit", "label 0 is not a unit for fusion at " + triple(0, a, b));
      if (c.N(a, b, 0) != (b == c.dual[a]))
        throw ValidationError("duality", "N(a,b,0) must equal [b = dual(a)] at " + triple(a, b, 0));
    }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int x = 0; x < r; ++x)
        for (int d = 0; d < r; ++d) {
          long lhs = 0, rhs = 0;
          for (int e = 0; e < r; ++e) {
            lhs += long(c.N(a, b, e)) * c.N(e, x, d);
            rhs += long(c.N(b, x, e)) * c.N(a, e, d);
          }
          if (lhs != rhs)
            throw ValidationError("associativity", "associativity violated at " + triple(a, b, x));
        }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int x = 0; x < r; ++x)
        if (c.N(a, b, x) != c.N(c.dual[b], c.dual[a], c.dual[x]))
          throw ValidationError("duality", "N not compatible with duals at " + triple(a, b, x));
}

void validate_dimensions(const Category& c) {
  const int r = c.rank();
  if (std::abs(c.qdim[0] - 1.0) > 1e-9) throw ValidationError("qdim", "qdim of unit must be 1");
  for (int a = 0; a < r; ++a) {
    if (!(c.qdim[a] >= 1.0 - 1e-9)) throw ValidationError("qdim", "qdim must be >= 1");
    if (std::abs(c.qdim[a] - c.qdim[c.dual[a]]) > 1e-9)
      throw ValidationError("qdim", "qdim differs between a label and its dual");
  }
  auto fp = fp_dimensions(c);
  for (int a = 0; a < r; ++a)
    if (std::abs(fp[a] - c.qdim[a]) > 1e-8)
      throw ValidationError("qdim", "qdim mismatch with Perron-Frobenius dimension at label " +
                                        c.labels[a]);
}

void validate_grading(const Category& c) {
  const auto& G = c.group;
  if (static_cast<int>(c.grading.size()) != c.rank())
    throw ValidationError("grading", "grading has wrong length");
  for (int g : c.grading)
    if (g < 0 || g >= G.size()) throw ValidationError("grading", "grading value out of range");
  if (c.grading[0] != G.neutral()) throw ValidationError("grading", "unit must have neutral degree");
  for (int a = 0; a < c.rank(); ++a)
    for (int b = 0; b < c.rank(); ++b)
      for (int x = 0; x < c.rank(); ++x)
        if (c.N(a, b, x) && c.grading[x] != G.mul(c.grading[a], c.grading[b]))
          throw ValidationError("grading", "grading not multiplicative at " + triple(a, b, x));
}

void validate_f(const Category& c, double tol) {
  const int r = c.rank();
  for (const auto& [key, blk] : c.F)
    for (int v : key)
      if (v < 0 || v >= r) throw ValidationError("schema", "F block label out of range");
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int x = 0; x < r; ++x)
        for (int d = 0; d < r; ++d) {
          auto rows = left_trees(c, a, b, x, d);
          auto it = c.F.find({a, b, x, d});
          std::string where = "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                              std::to_string(x) + "," + std::to_string(d) + ")";
          if (rows.empty()) {
            if (it != c.F.end()) throw ValidationError("schema", "F block for inadmissible " + where);
            continue;
          }
          if (it == c.F.end()) throw ValidationError("schema", "missing F block " + where);
          const FBlock& blk = it->second;
          if (blk.rows != rows || blk.cols != right_trees(c, a, b, x, d))
            throw ValidationError("schema", "F block rows/cols do not match fusion rules at " + where);
          const Mat& m = blk.matrix;
          double dev = (m * m.adjoint() - Mat::Identity(m.rows(), m.rows())).cwiseAbs().maxCoeff();
          if (dev > tol) throw ValidationError("unitarity", "F block not unitary at " + where);
          if ((a == 0 || b == 0 || x == 0) &&
              (m - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() > tol)
            throw ValidationError("triangle", "F block with a unit leg is not the identity at " + where);
        }
}

FBlock parse_block(const json& j) {
  FBlock blk;
  const json& rows = field(j, "rows");
  const json& cols = field(j, "cols");
  const json& mat = field(j, "matrix");
  if (!rows.is_array() || !cols.is_array() || !mat.is_array())
    throw ValidationError("schema", "F block rows, cols and matrix must be arrays");
  for (const auto& v : rows) blk.rows.push_back(parse_index(v));
  for (const auto& v : cols) blk.cols.push_back(parse_index(v));
  const int nr = static_cast<int>(blk.rows.size()), nc = static_cast<int>(blk.cols.size());
  if (static_cast<int>(mat.size()) != nr) throw ValidationError("schema", "F matrix has wrong row count");
  Mat m(nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (!mat[i].is_array() || static_cast<int>(mat[i].size()) != nc)
      throw ValidationError("schema", "F matrix has wrong column count");
    for (int k = 0; k < nc; ++k) m(i, k) = parse_entry(mat[i][k]);
  }
  // canonical ordering
  std::vector<int> pr(nr), pc(nc);
  std::iota(pr.begin(), pr.end(), 0);
  std::iota(pc.begin(), pc.end(), 0);
  std::sort(pr.begin(), pr.end(), [&](int x, int y) { return blk.rows[x] < blk.rows[y]; });
  std::sort(pc.begin(), pc.end(), [&](int x, int y) { return blk.cols[x] < blk.cols[y]; });
  FBlock out;
  out.matrix.resize(nr, nc);
  for (int i = 0; i < nr; ++i) {
    out.rows.push_back(blk.rows[pr[i]]);
    for (int k = 0; k < nc; ++k) out.matrix(i, k) = m(pr[i], pc[k]);
  }
  for (int k = 0; k < nc; ++k) out.cols.push_back(blk.cols[pc[k]]);
  return out;
}

GroupAction parse_action(const json& j, const Category& c) {
  GroupAction act;
  act.name = as<std::string>(field(j, "name"), "action.name");
  const json& perm = field(j, "perm");
  if (!perm.is_object()) throw ValidationError("schema", "action.perm must be an object");
  act.perm.assign(c.group.size(), {});
  for (auto it = perm.begin(); it != perm.end(); ++it) {
    int g = c.group.index_of(it.key());
    act.perm[g] = as<std::vector<int>>(it.value(), "action.perm");
  }
  for (int g = 0; g < c.group.size(); ++g) {
    if (static_cast<int>(act.perm[g].size()) != c.rank())
      throw ValidationError("action", "action '" + act.name + "' lacks a permutation for " +
                                          c.group.name(g));
    std::vector<int> s = act.perm[g];
    std::sort(s.begin(), s.end());
    for (int a = 0; a < c.rank(); ++a)
      if (s[a] != a) throw ValidationError("action", "action map is not a permutation");
  }
  return act;
}

cplx F(const Category& c, int a, int b, int x, int d, std::array<int, 3> row, std::array<int, 3> col) {
  const FBlock& blk = c.f_block(a, b, x, d);
  return blk.matrix(blk.row_index(row[0], row[1], row[2]), blk.col_index(col[0], col[1], col[2]));
}

}  // namespace

int FBlock::row_index(int e, int mu, int nu) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), std::array<int, 3>{e, mu, nu});
  if (it == rows.end() || *it != std::array<int, 3>{e, mu, nu})
    throw InvariantError("F row index not present");
  return static_cast<int>(it - rows.begin());
}

int FBlock::col_index(int f, int rho, int sigma) const {
  auto it = std::lower_bound(cols.begin(), cols.end(), std::array<int, 3>{f, rho, sigma});
  if (it == cols.end() || *it != std::array<int, 3>{f, rho, sigma})
    throw InvariantError("F column index not present");
  return static_cast<int>(it - cols.begin());
}

void Category::set_N(int a, int b, int c, int v) { fusion_[(a * rank() + b) * rank() + c] = v; }

const FBlock& Category::f_block(int a, int b, int c, int d) const {
  auto it = F.find({a, b, c, d});
  if (it == F.end()) throw InvariantError("requested F block for inadmissible labels");
  return it->second;
}

std::vector<int> Category::labels_of_degree(int g) const {
  std::vector<int> out;
  for (int a = 0; a < rank(); ++a)
    if (grading[a] == g) out.push_back(a);
  return out;
}

int Category::label_index(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it != labels.end()) return static_cast<int>(it - labels.begin());
  try {
    size_t pos = 0;
    int v = std::stoi(label, &pos);
    if (pos == label.size() && v >= 0 && v < rank()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("schema", "unknown label '" + label + "'");
}

GroupAction Category::trivial_action() const {
  GroupAction act{"trivial", {}};
  std::vector<int> id(rank());
  std::iota(id.begin(), id.end(), 0);
  act.perm.assign(group.size(), id);
  return act;
}

GroupAction Category::action(const std::string& which) const {
  for (const auto& a : actions)
    if (a.name == which) return a;
  if (which == "trivial") return trivial_action();
  throw ValidationError("action", "unknown action '" + which + "'");
}

double Category::dim(std::span<const int> subset) const {
  double s = 0;
  for (int a : subset) s += qdim[a] * qdim[a];
  return s;
}

double Category::global_dim() const {
  double s = 0;
  for (double d : qdim) s += d * d;
  return s;
}

Category parse_category(const json& doc) {
  if (!doc.is_object()) throw ValidationError("schema", "category file must hold a JSON object");
  Category c;
  c.name = doc.value("name", std::string("category"));
  const int r = as<int>(field(doc, "rank"), "rank");
  if (r <= 0) throw ValidationError("schema", "rank must be positive");
  c.labels = as<std::vector<std::string>>(field(doc, "labels"), "labels");
  c.dual = as<std::vector<int>>(field(doc, "dual"), "dual");
  c.qdim = as<std::vector<double>>(field(doc, "qdim"), "qdim");
  if (static_cast<int>(c.labels.size()) != r || static_cast<int>(c.dual.size()) != r ||
      static_cast<int>(c.qdim.size()) != r)
    throw ValidationError("schema", "labels, dual and qdim must have length rank");
  if (std::set<std::string>(c.labels.begin(), c.labels.end()).size() != c.labels.size())
    throw ValidationError("schema", "labels must be distinct");
  for (int a = 0; a < r; ++a) {
    if (c.dual[a] < 0 || c.dual[a] >= r) throw ValidationError("schema", "dual out of range");
  }
  for (int a = 0; a < r; ++a)
    if (c.dual[c.dual[a]] != a) throw ValidationError("duality", "dual is not an involution");
  if (c.dual[0] != 0) throw ValidationError("duality", "unit must be self-dual");

  if (doc.contains("group")) {
    const json& g = doc.at("group");
    c.group = Group(as<std::vector<std::string>>(field(g, "elements"), "group.elements"),
                    as<std::vector<std::vector<int>>>(field(g, "table"), "group.table"));
  }
  c.grading = doc.contains("grading") ? as<std::vector<int>>(doc.at("grading"), "grading")
                                      : std::vector<int>(r, c.group.neutral());

  c.resize_fusion();
  const json& nlist = field(doc, "N");
  if (!nlist.is_array()) throw ValidationError("schema", "N must be an array");
  std::set<std::array<int, 3>> seen;
  for (const auto& e : nlist) {
    auto v = as<std::vector<int>>(e, "N");
    if (v.size() != 4) throw ValidationError("schema", "N entries are [a,b,c,value]");
    for (int k = 0; k < 3; ++k)
      if (v[k] < 0 || v[k] >= r) throw ValidationError("schema", "N label out of range");
    if (v[3] < 0) throw ValidationError("schema", "N value must be non-negative");
    if (!seen.insert({v[0], v[1], v[2]}).second)
      throw ValidationError("schema", "duplicate N entry " + triple(v[0], v[1], v[2]));
    c.set_N(v[0], v[1], v[2], v[3]);
  }
  validate_ring(c);
  validate_dimensions(c);
  validate_grading(c);

  const json& flist = field(doc, "F");
  if (!flist.is_array()) throw ValidationError("schema", "F must be an array");
  for (const auto& e : flist) {
    auto key = as<std::vector<int>>(field(e, "abcd"), "F.abcd");
    if (key.size() != 4) throw ValidationError("schema", "F.abcd must have four labels");
    std::array<int, 4> k{key[0], key[1], key[2], key[3]};
    if (c.F.count(k)) throw ValidationError("schema", "duplicate F block");
    c.F.emplace(k, parse_block(e));
  }
  validate_f(c, 1e-9);

  if (doc.contains("action")) {
    const json& a = doc.at("action");
    if (a.is_array())
      for (const auto& x : a) c.actions.push_back(parse_action(x, c));
    else
      c.actions.push_back(parse_action(a, c));
    for (const auto& act : c.actions) verify_action(c, act, 1e-9);
  }
  return c;
}

Category load_category(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("schema", std::string("malformed JSON: ") + e.what());
  }
  return parse_category(doc);
}

PentagonReport verify_pentagon(const Category& c, double tol) {
  PentagonReport rep;
  const int r = c.rank();
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int x3 = 0; x3 < r; ++x3)
        for (int d = 0; d < r; ++d)
          for (int e = 0; e < r; ++e) {
            // left trees ((ab->x;al)x3->y;be)d->e;ga
            struct L { int x, al, y, be, ga; };
            struct R { int z, ka, w, ze, eta; };
            std::vector<L> lefts;
            std::vector<R> rights;
            for (int x = 0; x < r; ++x)
              for (int y = 0; y < r; ++y)
                for (int al = 0; al < c.N(a, b, x); ++al)
                  for (int be = 0; be < c.N(x, x3, y); ++be)
                    for (int ga = 0; ga < c.N(y, d, e); ++ga) lefts.push_back({x, al, y, be, ga});
            if (lefts.empty()) continue;
            for (int z = 0; z < r; ++z)
              for (int w = 0; w < r; ++w)
                for (int ka = 0; ka < c.N(x3, d, z); ++ka)
                  for (int ze = 0; ze < c.N(b, z, w); ++ze)
                    for (int eta = 0; eta < c.N(a, w, e); ++eta) rights.push_back({z, ka, w, ze, eta});
            for (const L& l : lefts)
              for (const R& q : rights) {
                cplx lhs = 0;
                for (int la = 0; la < c.N(l.x, q.z, e); ++la)
                  lhs += F(c, l.x, x3, d, e, {l.y, l.be, l.ga}, {q.z, q.ka, la}) *
                         F(c, a, b, q.z, e, {l.x, l.al, la}, {q.w, q.ze, q.eta});
                cplx rhs = 0;
                for (int u = 0; u < r; ++u)
                  for (int rho = 0; rho < c.N(b, x3, u); ++rho)
                    for (int sg = 0; sg < c.N(a, u, l.y); ++sg)
                      for (int ta = 0; ta < c.N(u, d, q.w); ++ta)
                        rhs += F(c, a, b, x3, l.y, {l.x, l.al, l.be}, {u, rho, sg}) *
                               F(c, a, u, d, e, {l.y, sg, l.ga}, {q.w, ta, q.eta}) *
                               F(c, b, x3, d, q.w, {u, rho, ta}, {q.z, q.ka, q.ze});
                double res = std::abs(lhs - rhs);
                ++rep.checked;
                if (res > rep.residual) {
                  rep.residual = res;
                  rep.worst = {a, b, x3, d, e};
                }
              }
          }
  if (rep.residual > tol) {
    std::ostringstream os;
    os << "pentagon violated at (" << rep.worst[0] << "," << rep.worst[1] << "," << rep.worst[2]
       << "," << rep.worst[3] << "," << rep.worst[4] << ") with residual " << rep.residual;
    throw ValidationError("pentagon", os.str());
  }
  return rep;
}

std::vector<double> fp_dimensions(const Category& c) {
  const int r = c.rank();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int x = 0; x < r; ++x) m(x, b) += c.N(a, b, x);
  // power iteration on the shifted matrix; the shift removes periodicity
  Eigen::VectorXd v = Eigen::VectorXd::Ones(r);
  Eigen::MatrixXd shifted = m + Eigen::MatrixXd::Identity(r, r);
  for (int it = 0; it < 5000; ++it) {
    Eigen::VectorXd next = shifted * v;
    next /= next(0);
    if ((next - v).cwiseAbs().maxCoeff() < 1e-15) {
      v = next;
      break;
    }
    v = next;
  }
  // the total fusion matrix has eigenvector d with eigenvalue sum_a d_a
  return {v.data(), v.data() + r};
}

void verify_action(const Category& c, const GroupAction& act, double tol) {
  const auto& G = c.group;
  const int r = c.rank();
  if (static_cast<int>(act.perm.size()) != G.size())
    throw ValidationError("action", "action needs one permutation per group element");
  for (int g = 0; g < G.size(); ++g) {
    if (static_cast<int>(act.perm[g].size()) != r)
      throw ValidationError("action", "action permutation has wrong length");
    std::vector<int> s = act.perm[g];
    std::sort(s.begin(), s.end());
    for (int a = 0; a < r; ++a)
      if (s[a] != a) throw ValidationError("action", "action map is not a permutation");
  }
  for (int a = 0; a < r; ++a)
    if (act.perm[G.neutral()][a] != a)
      throw ValidationError("action", "neutral element must act trivially");
  for (int g = 0; g < G.size(); ++g)
    for (int h = 0; h < G.size(); ++h)
      for (int a = 0; a < r; ++a)
        if (act.perm[g][act.perm[h][a]] != act.perm[G.mul(g, h)][a])
          throw ValidationError("action", "perm(g)perm(h) != perm(gh) for g=" + G.name(g) +
                                              ", h=" + G.name(h));
  for (int g = 0; g < G.size(); ++g) {
    const auto& p = act.perm[g];
    for (int a = 0; a < r; ++a) {
      if (p[c.dual[a]] != c.dual[p[a]]) throw ValidationError("action", "action does not commute with duals");
      if (std::abs(c.qdim[p[a]] - c.qdim[a]) > tol) throw ValidationError("action", "action changes qdim");
      if (c.grading[p[a]] != G.conj(g, c.grading[a]))
        throw ValidationError("action", "action not compatible with the grading");
      for (int b = 0; b < r; ++b)
        for (int x = 0; x < r; ++x)
          if (c.N(p[a], p[b], p[x]) != c.N(a, b, x))
            throw ValidationError("action", "action does not preserve N at " + triple(a, b, x));
    }
    for (const auto& [key, blk] : c.F) {
      const FBlock& img = c.f_block(p[key[0]], p[key[1]], p[key[2]], p[key[3]]);
      for (size_t i = 0; i < blk.rows.size(); ++i)
        for (size_t k = 0; k < blk.cols.size(); ++k) {
          auto row = blk.rows[i];
          auto col = blk.cols[k];
          cplx v = img.matrix(img.row_index(p[row[0]], row[1], row[2]),
                              img.col_index(p[col[0]], col[1], col[2]));
          if (std::abs(v - blk.matrix(i, k)) > tol)
            throw ValidationError("action", "action does not preserve F at (" +
                                                std::to_string(key[0]) + "," + std::to_string(key[1]) +
                                                "," + std::to_string(key[2]) + "," +
                                                std::to_string(key[3]) + ")");
        }
    }
  }
}

Category build_crossed_extension(const Category& base, const GroupAction& act) {
  verify_action(base, act, 1e-9);
  const Group& G = base.group;
  const int r0 = base.rank();
  const int n = G.size();
  auto P = [&](int g, int a) { return act.perm[g][a]; };
  auto idx = [&](int g, int a) { return g * r0 + a; };

  Category c;
  c.name = base.name + "_x_" + act.name;
  c.group = G;
  if (G.neutral() != 0)
    throw ValidationError("action", "crossed extension needs the neutral element at index 0");
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < r0; ++a) {
      c.labels.push_back(G.name(g) + "." + base.labels[a]);
      c.qdim.push_back(base.qdim[a]);
      c.grading.push_back(g);
    }
  c.dual.resize(n * r0);
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < r0; ++a) c.dual[idx(g, a)] = idx(G.inv(g), P(g, base.dual[a]));
  c.resize_fusion();
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int a = 0; a < r0; ++a)
        for (int b = 0; b < r0; ++b)
          for (int x = 0; x < r0; ++x)
            c.set_N(idx(g, a), idx(h, b), idx(G.mul(g, h), x), base.N(P(G.inv(h), a), b, x));

  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < r0; ++a)
          for (int b = 0; b < r0; ++b)
            for (int x = 0; x < r0; ++x)
              for (int d = 0; d < r0; ++d) {
                const int hk = G.mul(h, k), ki = G.inv(k);
                const int A = P(G.inv(hk), a), B = P(ki, b);
                auto it = base.F.find({A, B, x, d});
                if (it == base.F.end()) continue;
                const FBlock& src = it->second;
                FBlock blk;
                blk.matrix = src.matrix;
                for (auto row : src.rows) blk.rows.push_back({idx(G.mul(g, h), P(k, row[0])), row[1], row[2]});
                for (auto col : src.cols) blk.cols.push_back({idx(hk, col[0]), col[1], col[2]});
                // rows were sorted by base channel; re-sort under the new labels
                std::vector<int> pr(blk.rows.size());
                std::iota(pr.begin(), pr.end(), 0);
                std::sort(pr.begin(), pr.end(), [&](int u, int v) { return blk.rows[u] < blk.rows[v]; });
                FBlock sorted;
                sorted.cols = blk.cols;
                sorted.matrix.resize(blk.matrix.rows(), blk.matrix.cols());
                for (size_t i = 0; i < pr.size(); ++i) {
                  sorted.rows.push_back(blk.rows[pr[i]]);
                  sorted.matrix.row(i) = blk.matrix.row(pr[i]);
                }
                c.F.emplace(std::array<int, 4>{idx(g, a), idx(h, b), idx(k, x), idx(G.mul(G.mul(g, h), k), d)},
                            std::move(sorted));
              }

  GroupAction ext{act.name, {}};
  for (int k = 0; k < n; ++k) {
    std::vector<int> p(n * r0);
    for (int g = 0; g < n; ++g)
      for (int a = 0; a < r0; ++a) p[idx(g, a)] = idx(G.conj(k, g), P(k, a));
    ext.perm.push_back(std::move(p));
  }
  c.actions.push_back(std::move(ext));
  return c;
}

}  // namespace gct
