#include "gct/report.hpp"

#include <cmath>

#include "gct/errors.hpp"

namespace gct {

namespace {

double clean(double v) { return std::abs(v) < kPrintFloor ? 0.0 : v; }

ordered_json complex_json(cplx z) { return ordered_json::array({clean(z.real()), clean(z.imag())}); }

ordered_json object_json(const Object& x) {
  ordered_json out = ordered_json::array();
  for (const auto& w : x.words) out.push_back(w);
  return out;
}

Object object_from_json(const nlohmann::json& j, int rank) {
  Object x;
  for (const auto& w : j) {
    Word word = w.get<Word>();
    for (int a : word)
      if (a < 0 || a >= rank) throw ValidationError("schema", "label index out of range in object");
    x.words.push_back(std::move(word));
  }
  return x;
}

template <class F>
auto schema_guard(F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("schema", e.what());
  }
}

}  // namespace

ordered_json morphism_json(const Morphism& f) {
  ordered_json blocks = ordered_json::array();
  for (std::size_t c = 0; c < f.blocks.size(); ++c) {
    const Mat& b = f.blocks[c];
    if (b.size() == 0) continue;
    ordered_json data = ordered_json::array();
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index k = 0; k < b.cols(); ++k) data.push_back(complex_json(b(i, k)));
    blocks.push_back({{"channel", c}, {"rows", b.rows()}, {"cols", b.cols()}, {"data", std::move(data)}});
  }
  return blocks;
}

Morphism morphism_from_json(const nlohmann::json& j, const Calculus& calc, const Object& source, const Object& target) {
  return schema_guard([&] {
    Morphism f = calc.zero(source, target);
    for (const auto& blk : j) {
      const int c = blk.at("channel").get<int>();
      if (c < 0 || c >= calc.rank()) throw ValidationError("schema", "channel out of range");
      Mat& b = f.blocks[c];
      if (blk.at("rows").get<Eigen::Index>() != b.rows() || blk.at("cols").get<Eigen::Index>() != b.cols())
        throw ValidationError("schema", "block shape does not match the center report");
      const auto& data = blk.at("data");
      if (static_cast<Eigen::Index>(data.size()) != b.size()) throw ValidationError("schema", "block has the wrong size");
      std::size_t k = 0;
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        for (Eigen::Index q = 0; q < b.cols(); ++q, ++k) b(r, q) = cplx(data[k].at(0).get<double>(), data[k].at(1).get<double>());
    }
    return f;
  });
}

ordered_json setting_json(const TubeSetting& s) {
  return {{"kind", s.kind_name()}, {"labels", s.tube_labels}, {"action", s.action_name}};
}

TubeSetting setting_from_json(const Category& cat, const nlohmann::json& j) {
  return schema_guard([&] {
    const std::string kind = j.at("kind").get<std::string>();
    const std::string action = j.at("action").get<std::string>();
    if (kind == "full") return full_setting(cat);
    if (kind == "twisted") return twisted_setting(cat, cat.action(action));
    if (kind == "relative") {
      const auto labels = j.at("labels").get<std::vector<int>>();
      if (action == "trivial") return relative_setting(cat, labels);
      return relative_setting(cat, labels, cat.action(action));
    }
    throw ValidationError("schema", "unknown setting kind '" + kind + "'");
  });
}

ordered_json tube_json(const TubeAlgebra& tube, const std::vector<WedderburnData>& blocks, std::uint64_t seed) {
  const TubeSetting& s = tube.setting;
  ordered_json out;
  out["format"] = "gct-tube/1";
  out["seed"] = seed;
  out["category"] = s.category().name;
  out["setting"] = setting_json(s);
  ordered_json grades = ordered_json::array();
  for (const auto& comp : tube.components) {
    ordered_json g;
    g["grade"] = s.group.name(comp.grade);
    g["dim"] = comp.dim();
    ordered_json basis = ordered_json::array();
    for (const auto& b : comp.basis) basis.push_back({b.left, b.tube, b.right, b.channel, b.row, b.col});
    g["basis"] = std::move(basis);
    ordered_json structure = ordered_json::array();
    for (int i = 0; i < comp.dim(); ++i)
      for (int j = 0; j < comp.dim(); ++j)
        for (int k = 0; k < comp.dim(); ++k) {
          const cplx c = comp.left_mult[i](k, j);
          if (std::abs(c) >= kPrintFloor) structure.push_back({i, j, k, clean(c.real()), clean(c.imag())});
        }
    g["structure"] = std::move(structure);
    ordered_json star = ordered_json::array();
    for (int i = 0; i < comp.dim(); ++i)
      for (int j = 0; j < comp.dim(); ++j)
        if (std::abs(comp.star(i, j)) >= kPrintFloor)
          star.push_back({i, j, clean(comp.star(i, j).real()), clean(comp.star(i, j).imag())});
    g["star"] = std::move(star);
    ordered_json trace = ordered_json::array();
    for (int i = 0; i < comp.dim(); ++i) trace.push_back(complex_json(comp.trace(i)));
    g["trace"] = std::move(trace);
    for (const auto& wd : blocks) {
      if (wd.grade != comp.grade) continue;
      ordered_json bl = ordered_json::array();
      for (const auto& b : wd.blocks) {
        ordered_json corner = ordered_json::object();
        for (auto [label, n] : b.corner) corner[s.category().labels[label]] = n;
        bl.push_back({{"rank", b.rank}, {"corner", std::move(corner)}});
      }
      g["blocks"] = std::move(bl);
      g["attempts"] = wd.attempts;
    }
    grades.push_back(std::move(g));
  }
  out["grades"] = std::move(grades);
  return out;
}

ordered_json center_json(const CenterData& center, const CenterSummary& summary) {
  const TubeSetting& s = center.tube.setting;
  const Category& cat = s.category();
  ordered_json out;
  out["format"] = "gct-center/1";
  out["seed"] = center.seed;
  out["category"] = cat.name;
  out["setting"] = setting_json(s);

  ordered_json grades = ordered_json::array();
  ordered_json simples = ordered_json::array();
  int index = 0;
  for (const auto& cg : center.grades) {
    ordered_json ranks = ordered_json::array();
    for (const auto& b : cg.wedderburn.blocks) ranks.push_back(b.rank);
    grades.push_back({{"grade", s.group.name(cg.grade)},
                      {"tube_dim", center.tube.components[cg.grade].dim()},
                      {"block_ranks", std::move(ranks)},
                      {"simples", cg.simples.size()}});
    for (const auto& cs : cg.simples) {
      std::vector<int> mult(cat.rank(), 0);
      for (const auto& w : cs.hb.object.words)
        if (w.size() == 1) ++mult[w[0]];
      ordered_json e = ordered_json::array();
      for (const auto& [p, m] : cs.hb.E) e.push_back({{"label", p}, {"matrix", morphism_json(m)}});
      ordered_json entry;
      entry["index"] = index;
      entry["grade"] = s.group.name(cs.hb.grade);
      entry["block"] = cs.block;
      entry["object"] = object_json(cs.hb.object);
      entry["multiplicities"] = std::move(mult);
      entry["qdim"] = clean(cs.qdim);
      if (index < static_cast<int>(summary.residuals.size())) entry["residual"] = clean(summary.residuals[index]);
      entry["E"] = std::move(e);
      simples.push_back(std::move(entry));
      ++index;
    }
  }
  out["grades"] = std::move(grades);
  out["simples"] = std::move(simples);
  out["hom"] = summary.hom;

  ordered_json fusion = ordered_json::array();
  for (std::size_t i = 0; i < summary.fusion.size(); ++i)
    for (std::size_t j = 0; j < summary.fusion[i].size(); ++j)
      for (std::size_t k = 0; k < summary.fusion[i][j].size(); ++k)
        if (summary.fusion[i][j][k]) fusion.push_back({i, j, k, summary.fusion[i][j][k]});
  out["fusion"] = std::move(fusion);

  if (summary.orbits) {
    ordered_json orbits = ordered_json::array();
    for (const auto& o : summary.orbits->orbits) {
      ordered_json stab = ordered_json::array();
      for (int g : o.stabilizer) stab.push_back(s.group.name(g));
      orbits.push_back({{"members", o.members}, {"stabilizer", std::move(stab)}, {"irreps", o.irreps}});
    }
    out["orbits"] = {{"table", std::move(orbits)},
                     {"equivariant_count", summary.orbits->count},
                     {"assumption", summary.orbits->assumption}};
  }
  if (summary.braiding) {
    const auto& b = *summary.braiding;
    out["braiding"] = {{"bf0", clean(b.bf0)}, {"bf1", clean(b.bf1)}, {"bf2", clean(b.bf2)},
                       {"bf3", clean(b.bf3)}, {"checked", b.checked}};
  }
  return out;
}

std::vector<HalfBraiding> simples_from_json(const nlohmann::json& report, const TubeSetting& s) {
  return schema_guard([&] {
    const Calculus& calc = *s.calc;
    std::vector<HalfBraiding> out;
    for (const auto& entry : report.at("simples")) {
      HalfBraiding x;
      x.grade = s.group.index_of(entry.at("grade").get<std::string>());
      if (x.grade < 0 || x.grade >= s.grades()) throw ValidationError("schema", "unknown grade in center report");
      x.object = object_from_json(entry.at("object"), calc.rank());
      const auto& tw = s.twist[x.grade];
      for (const auto& e : entry.at("E")) {
        const int p = e.at("label").get<int>();
        if (p < 0 || p >= calc.rank()) throw ValidationError("schema", "label out of range in E data");
        x.E.emplace(p, morphism_from_json(e.at("matrix"), calc, tensor(x.object, Object::letter(p)),
                                          tensor(Object::letter(tw[p]), x.object)));
      }
      for (int p : s.tube_labels)
        if (!x.E.count(p)) throw ValidationError("schema", "center report lacks E data for a tube label");
      out.push_back(std::move(x));
    }
    return out;
  });
}

ordered_json braiding_json(const GBraidingData& br, std::uint64_t seed) {
  ordered_json out;
  out["format"] = "gct-braiding/1";
  out["seed"] = seed;
  out["reverse"] = br.reverse;
  ordered_json entries = ordered_json::array();
  for (const auto& [key, m] : br.E) entries.push_back({{"x", key.first}, {"y", key.second}, {"E", morphism_json(m)}});
  out["entries"] = std::move(entries);
  return out;
}

GBraidingData braiding_from_json(const nlohmann::json& j, const SimpleCatalog& cat) {
  return schema_guard([&] {
    const TubeSetting& s = cat.setting();
    GBraidingData out;
    out.reverse = j.value("reverse", false);
    const auto& entries = j.at("entries");
    if (entries.empty()) throw ValidationError("schema", "missing entries");
    for (const auto& e : entries) {
      const int i = e.at("x").get<int>(), k = e.at("y").get<int>();
      if (i < 0 || k < 0 || i >= cat.size() || k >= cat.size())
        throw ValidationError("schema", "braiding entry refers to a simple outside the center report");
      const Object& x = cat[i].object;
      const Object& y = cat[k].object;
      const Object tgt = out.reverse ? tensor(y, relabel(x, s.action[s.group.inv(cat[k].grade)]))
                                     : tensor(relabel(y, s.action[cat[i].grade]), x);
      out.E.emplace(std::pair{i, k}, morphism_from_json(e.at("E"), cat.calc(), tensor(x, y), tgt));
    }
    for (int i = 0; i < cat.size(); ++i)
      for (int k = 0; k < cat.size(); ++k)
        if (!out.E.count({i, k})) throw ValidationError("schema", "missing entries");
    return out;
  });
}

std::string render(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace gct
