#include "gct/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gct/errors.hpp"
#include "gct/report.hpp"

namespace gct {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct RunConfig {
  std::string file;
  std::string subcat = "degree0";
  std::string grade;
  std::string action;
  double tol = 1e-8;
  std::optional<std::uint64_t> seed;
  std::string json;
  std::string center;
  std::string braiding;
  std::string braiding_out;
};

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("GCT_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("cli", std::string("GCT_SEED is not an unsigned integer: ") + env);
    }
  }
  return kDefaultSeed;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string status(double residual, double tol) { return residual <= tol ? "pass" : "FAIL"; }

std::string object_name(const Category& cat, const Object& x) {
  std::vector<int> mult(cat.rank(), 0);
  std::string out;
  for (const auto& w : x.words) {
    if (w.size() == 1) {
      ++mult[w[0]];
      continue;
    }
    if (!out.empty()) out += " + ";
    for (int a : w) out += cat.labels[a];
  }
  for (int a = 0; a < cat.rank(); ++a) {
    if (!mult[a]) continue;
    if (!out.empty()) out += " + ";
    if (mult[a] > 1) out += std::to_string(mult[a]) + "*";
    out += cat.labels[a];
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("failed writing " + path);
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("schema", path + ": " + e.what());
  }
}

std::optional<GroupAction> chosen_action(const Category& cat, const RunConfig& cfg) {
  if (cfg.action.empty()) return std::nullopt;
  return cat.action(cfg.action);
}

// Grades to print; all of them unless --grade names one.
std::vector<int> grade_filter(const TubeSetting& s, const RunConfig& cfg) {
  std::vector<int> out;
  if (cfg.grade.empty()) {
    for (int g = 0; g < s.grades(); ++g) out.push_back(g);
    return out;
  }
  int g = -1;
  const auto& names = s.group.names();
  if (auto it = std::find(names.begin(), names.end(), cfg.grade); it != names.end())
    g = static_cast<int>(it - names.begin());
  else if (std::all_of(cfg.grade.begin(), cfg.grade.end(), ::isdigit))
    g = std::stoi(cfg.grade);
  if (g < 0 || g >= s.grades()) throw ValidationError("cli", "unknown grade '" + cfg.grade + "'");
  return {g};
}

std::vector<HalfBraiding> simples_of(const CenterData& center) {
  std::vector<HalfBraiding> out;
  for (const auto* x : center.all()) out.push_back(x->hb);
  return out;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Category cat = load_category(cfg.file);
  const PentagonReport pent = verify_pentagon(cat, cfg.tol);
  const Calculus calc(cat);
  bool ok = true;
  out << "category " << cat.name << ": rank " << cat.rank() << ", group of order " << cat.group.size() << "\n";
  out << "check                      residual    status\n";
  auto row = [&](const std::string& name, double r) {
    std::string padded = name;
    padded.resize(std::max<std::size_t>(padded.size(), 26), ' ');
    out << padded << " " << sci(r) << "  " << status(r, cfg.tol) << "\n";
    ok = ok && r <= cfg.tol;
  };
  row("pentagon (" + std::to_string(pent.checked) + ")", pent.residual);
  for (int a = 0; a < cat.rank(); ++a) row("conjugate " + cat.labels[a], calc.conjugate_solution(a).residual);
  const auto fp = fp_dimensions(cat);
  double dev = 0;
  for (int a = 0; a < cat.rank(); ++a) dev = std::max(dev, std::abs(fp[a] - cat.qdim[a]));
  row("qdim vs Perron-Frobenius", dev);
  for (const auto& act : cat.actions) {
    verify_action(cat, act, cfg.tol);
    row("action " + act.name, 0.0);
  }
  if (!cfg.json.empty()) {
    ordered_json j;
    j["format"] = "gct-verify/1";
    j["seed"] = resolve_seed(cfg);
    j["category"] = cat.name;
    j["pentagon"] = {{"residual", pent.residual}, {"checked", pent.checked}};
    ordered_json conj = ordered_json::object();
    for (int a = 0; a < cat.rank(); ++a) conj[cat.labels[a]] = calc.conjugate_solution(a).residual;
    j["conjugate"] = std::move(conj);
    j["pass"] = ok;
    write_file(cfg.json, render(j));
  }
  out << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 2;
}

int cmd_tube(const RunConfig& cfg, std::ostream& out) {
  const Category cat = load_category(cfg.file);
  const std::uint64_t seed = resolve_seed(cfg);
  const TubeSetting s = setting_from_subcat(cat, cfg.subcat, chosen_action(cat, cfg));
  const TubeAlgebra tube = build_tube(s);
  const AlgebraReport alg = verify_algebra(tube);
  std::vector<WedderburnData> blocks;
  out << "tube algebra of " << cat.name << " (" << s.kind_name() << "), seed " << seed << "\n";
  for (int g : grade_filter(s, cfg)) {
    const TubeComponent& comp = tube.components[g];
    out << "grade " << s.group.name(g) << ": dim " << comp.dim();
    if (comp.dim() == 0) {
      out << ", 0 blocks\n";
      continue;
    }
    blocks.push_back(decompose(tube, g, grade_seed(seed, g)));
    const auto& wd = blocks.back();
    out << ", " << wd.blocks.size() << " blocks, ranks [";
    int sq = 0;
    for (std::size_t b = 0; b < wd.blocks.size(); ++b) {
      out << (b ? " " : "") << wd.blocks[b].rank;
      sq += wd.blocks[b].rank * wd.blocks[b].rank;
    }
    out << "], simples " << wd.blocks.size() << "\n";
    if (sq != comp.dim()) throw InvariantError("block ranks do not fill the tube algebra");
  }
  const double worst = std::max({alg.associativity, alg.star_involution, alg.star_antimultiplicative,
                                 alg.trace_tracial, alg.unit});
  out << "algebra residual " << sci(worst) << ", trace min eigenvalue " << sci(alg.trace_min_eigenvalue) << "\n";
  if (!cfg.json.empty()) write_file(cfg.json, render(tube_json(tube, blocks, seed)));
  if (!alg.ok(cfg.tol)) throw InvariantError("tube algebra fails its *-algebra checks");
  return 0;
}

CenterSummary summarize(const SimpleCatalog& catalog) {
  const TubeSetting& s = catalog.setting();
  CenterSummary sum;
  const int n = catalog.size();
  sum.hom.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    sum.residuals.push_back(verify_half_braiding(s, catalog[i]).max());
    for (int j = 0; j < n; ++j) sum.hom[i][j] = static_cast<int>(hom_center(s, catalog[i], catalog[j]).size());
  }
  sum.fusion = catalog.fusion_rules();
  return sum;
}

void print_simples(std::ostream& out, const CenterData& center, const CenterSummary& sum, const SimpleCatalog& catalog,
                   const std::vector<int>& grades) {
  const TubeSetting& s = center.tube.setting;
  out << "  #  grade  qdim      residual    conj  object\n";
  const auto all = center.all();
  for (int i = 0; i < catalog.size(); ++i) {
    if (std::find(grades.begin(), grades.end(), catalog[i].grade) == grades.end()) continue;
    const int conj = catalog.index_of(conjugate_half_braiding(s, catalog[i]));
    char line[96];
    std::snprintf(line, sizeof line, "%3d  %-5s  %-8.4f  %s  %4d  ", i, s.group.name(catalog[i].grade).c_str(),
                  all[i]->qdim, sci(sum.residuals[i]).c_str(), conj);
    out << line << object_name(s.category(), catalog[i].object) << "\n";
  }
}

void print_fusion(std::ostream& out, const CenterSummary& sum) {
  out << "fusion of simples:\n";
  const int n = static_cast<int>(sum.fusion.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::string rhs;
      for (int k = 0; k < n; ++k) {
        const int m = sum.fusion[i][j][k];
        if (!m) continue;
        if (!rhs.empty()) rhs += " + ";
        if (m > 1) rhs += std::to_string(m) + "*";
        rhs += std::to_string(k);
      }
      out << "  " << i << " x " << j << " = " << rhs << "\n";
    }
}

int cmd_center(const RunConfig& cfg, std::ostream& out) {
  const Category cat = load_category(cfg.file);
  const std::uint64_t seed = resolve_seed(cfg);
  const TubeSetting s = setting_from_subcat(cat, cfg.subcat, chosen_action(cat, cfg));
  const CenterData center = compute_center(s, seed);
  const SimpleCatalog catalog(s, simples_of(center));
  CenterSummary sum = summarize(catalog);
  if (!cfg.action.empty()) sum.orbits = equivariant_count(catalog);
  if (s.group.size() == 1) sum.braiding = verify_G_braiding(catalog, build_G_braiding(catalog));

  out << "center of " << cat.name << " (" << s.kind_name() << "), seed " << seed << ": " << center.count()
      << " simples\n";
  for (const auto& cg : center.grades)
    out << "grade " << s.group.name(cg.grade) << ": " << cg.simples.size() << " simples\n";
  print_simples(out, center, sum, catalog, grade_filter(s, cfg));
  print_fusion(out, sum);
  if (sum.orbits)
    out << "equivariant count " << sum.orbits->count << " over " << sum.orbits->orbits.size() << " orbits ("
        << sum.orbits->assumption << ")\n";
  if (sum.braiding)
    out << "braiding residual " << sci(sum.braiding->max()) << " " << status(sum.braiding->max(), cfg.tol) << "\n";
  if (!cfg.json.empty()) write_file(cfg.json, render(center_json(center, sum)));

  const double worst = *std::max_element(sum.residuals.begin(), sum.residuals.end());
  if (worst > cfg.tol) throw InvariantError("extracted simple fails half-braiding verification (" + sci(worst) + ")");
  for (int i = 0; i < catalog.size(); ++i)
    for (int j = 0; j < catalog.size(); ++j)
      if (sum.hom[i][j] != (i == j ? 1 : 0)) throw InvariantError("extracted simples fail the Schur check");
  if (sum.braiding && sum.braiding->max() > cfg.tol) throw InvariantError("braiding fails its axioms");
  return 0;
}

int cmd_gcenter(const RunConfig& cfg, std::ostream& out) {
  const Category cat = load_category(cfg.file);
  const std::uint64_t seed = resolve_seed(cfg);
  if (cfg.action.empty() && cat.actions.empty())
    throw ValidationError("action", "gcenter needs --action and the category defines none");
  const GroupAction action = cfg.action.empty() ? cat.actions.front() : cat.action(cfg.action);
  const TubeSetting s = twisted_setting(cat, action);
  const CenterData center = compute_center(s, seed);
  const SimpleCatalog catalog(s, simples_of(center));
  CenterSummary sum = summarize(catalog);

  const GBraidingData br = build_G_braiding(catalog);
  sum.braiding = verify_G_braiding(catalog, br);
  const GBraidingData rev = reverse_braiding(catalog, br);
  const GBraidingReport rrep = verify_G_braiding(catalog, rev);
  const GBraidingData back = forward_from_reverse(catalog, rev);
  double roundtrip = 0;
  for (const auto& [key, e] : br.E) roundtrip = std::max(roundtrip, max_abs(e - back.E.at(key)));

  const Category crossed = build_crossed_extension(cat, action);
  std::vector<int> sheet(cat.rank());
  for (int a = 0; a < cat.rank(); ++a) sheet[a] = a;
  const IsoReport iso = twisted_untwisted_iso(center.tube, build_tube(relative_setting(crossed, sheet)));

  sum.orbits = equivariant_count(catalog);
  const int full_count = compute_center(full_setting(crossed), seed).count();
  const auto eq = equivariant_simples(catalog, *sum.orbits);
  double eq_residual = 0;
  std::vector<EquivariantObject> eq_objects;
  for (const auto& e : eq) {
    eq_residual = std::max(eq_residual, verify_equivariant(s, e.object).max());
    eq_objects.push_back(e.object);
  }
  const EquivariantBraidingReport ebr = verify_equivariant_braiding(s, eq_objects);

  out << "G-center of " << cat.name << " under action " << action.name << ", seed " << seed << "\n";
  for (const auto& cg : center.grades)
    out << "grade " << s.group.name(cg.grade) << ": " << cg.simples.size() << " simples\n";
  print_simples(out, center, sum, catalog, grade_filter(s, cfg));
  const auto& b = *sum.braiding;
  bool ok = true;
  auto row = [&](const std::string& name, double r) {
    std::string padded = name;
    padded.resize(std::max<std::size_t>(padded.size(), 34), ' ');
    out << padded << " " << sci(r) << "  " << status(r, cfg.tol) << "\n";
    ok = ok && r <= cfg.tol;
  };
  row("BF0 (slot and unitarity)", b.bf0);
  row("BF1 (second slot)", b.bf1);
  row("BF2 (first slot)", b.bf2);
  row("BF3 (equivariance)", b.bf3);
  row("reverse braiding", rrep.max());
  row("reverse of reverse", roundtrip);
  row("twisted/untwisted iso", iso.max_deviation);
  row("equivariant objects", eq_residual);
  row("equivariant braiding", ebr.max());
  out << "equivariant count " << sum.orbits->count << " (" << sum.orbits->assumption << "), center of "
      << crossed.name << ": " << full_count << " simples " << (sum.orbits->count == full_count ? "match" : "MISMATCH")
      << "\n";
  ok = ok && sum.orbits->count == full_count && static_cast<int>(eq.size()) == full_count;

  if (!cfg.json.empty()) {
    ordered_json j = center_json(center, sum);
    j["reverse"] = {{"max_residual", rrep.max()}, {"roundtrip", roundtrip}};
    j["iso_deviation"] = iso.max_deviation;
    j["crossed_extension_center"] = full_count;
    write_file(cfg.json, render(j));
  }
  if (!cfg.braiding_out.empty()) write_file(cfg.braiding_out, render(braiding_json(br, seed)));
  if (!ok) throw InvariantError("G-center checks failed");
  return 0;
}

int cmd_braid_check(const RunConfig& cfg, std::ostream& out) {
  const Category cat = load_category(cfg.file);
  if (cfg.center.empty() || cfg.braiding.empty())
    throw ValidationError("cli", "braid-check needs --center and --braiding");
  const nlohmann::json report = read_json(cfg.center);
  if (report.value("category", std::string()) != cat.name)
    throw ValidationError("schema", "center report belongs to a different category");
  if (!report.contains("setting")) throw ValidationError("schema", "center report has no setting");
  const TubeSetting s = setting_from_json(cat, report["setting"]);
  const SimpleCatalog catalog(s, simples_from_json(report, s));
  for (int i = 0; i < catalog.size(); ++i)
    if (verify_half_braiding(s, catalog[i]).max() > cfg.tol)
      throw ValidationError("schema", "center report simple " + std::to_string(i) + " is not a half-braiding");
  const GBraidingData br = braiding_from_json(read_json(cfg.braiding), catalog);
  const GBraidingReport rep = verify_G_braiding(catalog, br);
  out << "braiding check on " << catalog.size() << " simples (" << rep.checked << " instances)\n";
  out << "axiom  residual    status\n";
  const std::pair<const char*, double> rows[] = {{"BF0", rep.bf0}, {"BF1", rep.bf1}, {"BF2", rep.bf2}, {"BF3", rep.bf3}};
  for (const auto& [name, r] : rows) out << name << "    " << sci(r) << "  " << status(r, cfg.tol) << "\n";
  const bool ok = rep.max() <= cfg.tol;
  out << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 2;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relative Drinfeld centers of graded fusion categories", "gct"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", cfg.file, "category JSON file")->required();
    sub->add_option("--tol", cfg.tol, "pass/fail tolerance");
    sub->add_option("--seed", cfg.seed, "random seed (falls back to GCT_SEED)");
    sub->add_option("--json", cfg.json, "write a JSON report");
  };
  auto* verify = app.add_subcommand("verify", "validate a category file");
  common(verify);
  auto* tube = app.add_subcommand("tube", "build and decompose the tube algebra");
  common(tube);
  auto* center = app.add_subcommand("center", "compute the (relative) center");
  common(center);
  auto* gcenter = app.add_subcommand("gcenter", "G-center, G-braiding and equivariantization checks");
  common(gcenter);
  auto* braid = app.add_subcommand("braid-check", "verify braiding data against a center report");
  common(braid);
  for (auto* sub : {tube, center}) {
    sub->add_option("--subcat", cfg.subcat, "all, degree0 or a comma separated label list");
    sub->add_option("--action", cfg.action, "group action by name");
  }
  for (auto* sub : {tube, center, gcenter}) sub->add_option("--grade", cfg.grade, "restrict output to one grade");
  gcenter->add_option("--action", cfg.action, "group action by name (default: the first one in the file)");
  gcenter->add_option("--braiding-out", cfg.braiding_out, "write the G-braiding data");
  braid->add_option("--center", cfg.center, "center report from `gct center|gcenter --json`");
  braid->add_option("--braiding", cfg.braiding, "braiding data to check");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (tube->parsed()) return cmd_tube(cfg, out);
    if (center->parsed()) return cmd_center(cfg, out);
    if (gcenter->parsed()) return cmd_gcenter(cfg, out);
    return cmd_braid_check(cfg, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "validation failed [" << e.axiom() << "]: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gct
