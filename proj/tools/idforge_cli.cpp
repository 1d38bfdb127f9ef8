// idforge: command-line front end for building the matrix-model algebras,
// verifying identity suites, searching for new identities, and reproducing
// the published result tables.
//
// Exit codes: 0 success, 1 verification/reproduction mismatch, 2 usage
// error, 3 reconstruction failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idforge/algebra.hpp"
#include "idforge/catalog.hpp"
#include "idforge/models.hpp"
#include "idforge/search.hpp"

using namespace idforge;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitReconstruction = 3;

struct GlobalOpts {
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = all cores; parallelism never changes results
};

int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("IDFORGE_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 0;
}

json manifest(const std::string& command, const GlobalOpts& g) {
  return json{{"command", command}, {"seed", g.seed}, {"threads", effective_threads(g.threads)}};
}

QAlgebra build_family(const std::string& family, int n) {
  if (family == "ly") return build_LY(n);
  if (family == "ljy") return build_LJY(n);
  if (family == "ly3-transvection") return build_LY3_transvection();
  if (family == "ly4-tensor") return build_LY4_tensor();
  if (family == "jordan-h") return build_jordan_H(n);
  throw std::invalid_argument("unknown family: " + family);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

void write_output(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

/// The operations context matching an algebra's signature list.
OpsContext context_for(const std::vector<OperationSignature>& sigs, const std::string& name) {
  if (sigs.size() == 2 && sigs[1].arity == 3 && !sigs[1].generators.empty() &&
      sigs[1].generators[0].sign > 0)
    return ljy_context();
  if (sigs.size() == 2 && sigs[1].arity == 3) return ly_context();
  return OpsContext(sigs, name);
}

std::vector<std::string> identity_suite(const std::string& spec) {
  if (spec == "LY") return {"LY1", "LY2", "LY3", "LY4", "LY5", "LY6"};
  if (spec == "LieJordan") return {"Malcev", "FilippovH", "LieJordan-linking"};
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    if (comma > pos) names.push_back(spec.substr(pos, comma - pos));
    pos = comma + 1;
  }
  if (names.empty()) throw std::invalid_argument("empty identity list");
  return names;
}

// ---------------------------------------------------------------------------
// reproduce: expected-vs-computed comparison tables

struct Comparison {
  std::string label;
  std::string expected;
  std::string computed;
  bool ok;
};

void compare(std::vector<Comparison>& rows, const std::string& label, long long expected,
             long long computed) {
  rows.push_back({label, std::to_string(expected), std::to_string(computed),
                  expected == computed});
}

void compare_flag(std::vector<Comparison>& rows, const std::string& label, bool ok,
                  const std::string& expected = "yes", const std::string& bad = "no") {
  rows.push_back({label, expected, ok ? expected : bad, ok});
}

int emit_comparisons(const std::vector<Comparison>& rows, const std::string& out_dir,
                     const std::string& section) {
  std::size_t wl = 0, we = 0, wc = 0;
  for (const auto& r : rows) {
    wl = std::max(wl, r.label.size());
    we = std::max(we, r.expected.size());
    wc = std::max(wc, r.computed.size());
  }
  std::ostringstream table;
  bool all_ok = true;
  for (const auto& r : rows) {
    table << std::left;
    table.width(static_cast<std::streamsize>(wl));
    table << r.label << "  ";
    table.width(static_cast<std::streamsize>(we));
    table << r.expected << "  ";
    table.width(static_cast<std::streamsize>(wc));
    table << r.computed << "  " << (r.ok ? "ok" : "MISMATCH") << "\n";
    all_ok = all_ok && r.ok;
  }
  table << (all_ok ? "all values reproduced\n" : "some values did not reproduce\n");
  std::cout << table.str();
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / ("section-" + section + ".txt"));
    out << table.str();
  }
  return all_ok ? kExitOk : kExitMismatch;
}

std::map<int, std::vector<MultilinearPoly>> named(OpsContext& ctx,
                                                  std::vector<std::pair<int, std::string>> list,
                                                  int max_degree) {
  std::map<int, std::vector<MultilinearPoly>> known;
  for (const auto& [d, n] : list)
    if (d <= max_degree) known[d].push_back(catalog_identity(ctx, n));
  return known;
}

int reproduce_section5(const std::string& out_dir, bool extended, const GlobalOpts& g) {
  OpsContext ctx = ly_context();
  QAlgebra exq = build_LY(4);
  ModAlgebra alg = reduce_mod(exq, GfpField(103), sqrt2_residue(103));
  std::vector<Comparison> rows;
  SearchConfig cfg;
  cfg.seed = g.seed;

  {
    SearchSpace sp(ctx, 3, "mixed");
    FillResult fill = fill_and_reduce(alg, sp, cfg);
    compare(rows, "degree 3: rank", 5, fill.rank);
    compare(rows, "degree 3: nullspace dimension", 1,
            static_cast<long long>(fill.nullspace.size()));
  }
  {
    SearchSpace spb(ctx, 4, "binary");
    compare(rows, "degree 4: binary rank", 15, fill_and_reduce(alg, spb, cfg, false).rank);
    SearchSpace sp(ctx, 4, "mixed");
    IdentityReport rep = new_identities(alg, sp, cfg, named(ctx, ly_identity_names(), 3), &exq);
    compare(rows, "degree 4: mixed rank", 26, rep.fill_rank);
    compare(rows, "degree 4: nullspace dimension", 19, rep.nullity);
    compare(rows, "degree 4: lifted module dimension", 10, rep.lifted_dim);
    compare(rows, "degree 4: new generators", 2,
            static_cast<long long>(rep.new_generators.size()));
  }
  {
    SearchSpace spb(ctx, 5, "binary");
    compare(rows, "degree 5: binary rank", 105, fill_and_reduce(alg, spb, cfg, false).rank);
    SearchSpace spt(ctx, 5, "ternary");
    FillResult tf = fill_and_reduce(alg, spt, cfg, false);
    compare(rows, "degree 5: ternary rank", 60, tf.rank);
    SearchSpace sp(ctx, 5, "mixed");
    auto res = lifted_module(sp, 103, named(ctx, ly_identity_names(), 4));
    compare(rows, "degree 5: lifted module dimension", 280, res.rank);
    IdentityReport rep = new_identities(alg, sp, cfg, named(ctx, ly_identity_names(), 5), &exq);
    compare(rows, "degree 5: mixed rank", 214, rep.fill_rank);
    compare(rows, "degree 5: nullspace dimension", 296, rep.nullity);
    compare(rows, "degree 5: new generators", 0,
            static_cast<long long>(rep.new_generators.size()));
  }
  if (extended) {
    SearchSpace sp(ctx, 6, "mixed");
    compare(rows, "degree 6: normal monomials", 7245, sp.q());
    auto res = lifted_module(sp, 103, named(ctx, ly_identity_names(), 5));
    compare(rows, "degree 6: lifted module dimension", 5151, res.rank);
    SearchConfig c6 = cfg;
    c6.degree = 6;
    FillResult fill = fill_and_reduce(alg, sp, c6, false);
    compare(rows, "degree 6: rank", 2094, fill.rank);
  } else {
    std::cout << "note: degree 6 skipped; pass --extended to include it\n";
  }
  return emit_comparisons(rows, out_dir, "5");
}

int reproduce_section6(const std::string& out_dir, bool extended, const GlobalOpts& g) {
  OpsContext ctx = ljy_context();
  QAlgebra exq = build_LJY(3);
  ModAlgebra alg = reduce_mod(exq, GfpField(103), sqrt2_residue(103));
  std::vector<Comparison> rows;
  SearchConfig cfg;
  cfg.seed = g.seed;

  for (const auto& name : {"LJY3-deg5-1", "LJY3-deg5-2", "LJY3-deg5-3", "LJY3-deg6-1",
                           "LJY3-deg6-2", "LJY3-deg6-3"})
    compare_flag(rows, std::string("identity ") + name + " vanishes on LJY3",
                 verify_char0(catalog_identity(ctx, name), exq, ctx, 10, g.seed).pass);
  {
    auto known = named(ctx, ljy3_identity_names(), 5);
    known[5].resize(1);
    SearchSpace sp(ctx, 5, "mixed");
    IdentityReport rep = new_identities(alg, sp, cfg, known, &exq);
    compare(rows, "LJY3 degree 5: new generators beyond liftings", 3,
            static_cast<long long>(rep.new_generators.size()));
  }
  {
    SearchSpace sp(ctx, 6, "mixed");
    GfpField fld(103);
    ModuleBuilder mb(sp, 103);
    lifted_module(sp, 103, named(ctx, ljy3_identity_names(), 5), &mb);
    const std::pair<const char*, long long> chain[] = {
        {"LJY3-deg6-1", 2632}, {"LJY3-deg6-2", 2647}, {"LJY3-deg6-3", 2701}};
    for (const auto& [name, dim] : chain) {
      mb.absorb(sp.poly_row(catalog_identity(ctx, name), fld));
      compare(rows, std::string("LJY3 degree 6: cumulative module + ") + name, dim, mb.rank());
    }
    rows.push_back({"LJY3 degree 6: cumulative module (fourth generator)", "2732",
                    "unavailable: generator not published", false});
    rows.push_back({"LJY3 degree 6: cumulative module (fifth generator)", "2733",
                    "unavailable: generator not published", false});
  }
  {
    QAlgebra exq4 = build_LJY(4);
    ModAlgebra alg4 = reduce_mod(exq4, GfpField(103), sqrt2_residue(103));
    std::vector<int> degrees = {3, 4, 5};
    if (extended) degrees.push_back(6);
    for (int d : degrees) {
      SearchSpace sp(ctx, d, "mixed");
      SearchConfig c = cfg;
      c.degree = d;
      FillResult fill = fill_and_reduce(alg4, sp, c, false);
      compare(rows, "LJY4 degree " + std::to_string(d) + ": nullspace beyond symmetries", 0,
              sp.q() - fill.rank);
    }
    if (!extended) std::cout << "note: LJY4 degree 6 skipped; pass --extended to include it\n";
  }
  return emit_comparisons(rows, out_dir, "6");
}

// ---------------------------------------------------------------------------
// commands

int cmd_build(const std::string& family, int n, const std::string& field,
              const std::string& out, const GlobalOpts& g) {
  FieldSpec fs = parse_field_spec(field);
  QAlgebra alg = build_family(family, n);
  json j;
  if (fs.modular) {
    ModAlgebra m = reduce_mod(alg, GfpField(fs.p), fs.sqrt2());
    j = algebra_to_json(m, fs.str());
  } else {
    j = algebra_to_json(alg, fs.str());
  }
  j["manifest"] = manifest("build", g);
  j["manifest"]["family"] = family;
  j["manifest"]["n"] = n;
  j["manifest"]["field"] = fs.str();
  write_output(j, out);
  std::cerr << "built " << alg.name << " (dim " << alg.dim << ") over " << fs.str() << "\n";
  return kExitOk;
}

template <typename Alg>
int verify_on(const Alg& alg, const std::string& identities, const std::string& mode,
              const GlobalOpts& g) {
  OpsContext ctx = context_for(alg.sigs, alg.name);
  VerifyMode vm = mode == "exhaustive" ? VerifyMode::exhaustive : VerifyMode::random;
  auto results = verify_axioms(alg, ctx, identity_suite(identities), vm, 50, g.seed);
  bool all = true;
  for (const auto& r : results) {
    std::cout << r.name << ": " << (r.pass ? "pass" : "FAIL") << "\n";
    if (!r.pass) {
      all = false;
      std::cout << "  witness: " << r.witness << "\n";
    }
  }
  return all ? kExitOk : kExitMismatch;
}

int cmd_verify(const std::string& algebra_path, const std::string& identities,
               const std::string& mode, const GlobalOpts& g) {
  json j = load_json(algebra_path);
  FieldSpec fs = parse_field_spec(j.at("field").get<std::string>());
  if (fs.modular) return verify_on(mod_algebra_from_json(j), identities, mode, g);
  return verify_on(qalgebra_from_json(j), identities, mode, g);
}

int cmd_find(const std::string& algebra_path, int degree, const std::string& ops,
             std::uint64_t prime, int stabilize, const std::string& known_path,
             const std::string& out, const GlobalOpts& g) {
  json j = load_json(algebra_path);
  FieldSpec fs = parse_field_spec(j.at("field").get<std::string>());

  std::optional<QAlgebra> exact;
  ModAlgebra alg;
  if (fs.modular) {
    alg = mod_algebra_from_json(j);
    if (alg.fld.modulus() != prime)
      throw std::invalid_argument("algebra field does not match --prime");
  } else {
    exact = qalgebra_from_json(j);
    alg = reduce_mod(*exact, GfpField(prime), sqrt2_residue(prime));
  }
  OpsContext ctx = context_for(alg.sigs, alg.name);

  std::map<int, std::vector<MultilinearPoly>> known;
  if (!known_path.empty()) {
    for (const auto& e : load_json(known_path)) {
      MultilinearPoly f = poly_from_json(ctx, e);
      known[f.degree()].push_back(std::move(f));
    }
  } else if (ctx.name() == "ly") {
    known = named(ctx, ly_identity_names(), degree - 1);
  } else if (ctx.name() == "ljy") {
    known = named(ctx, ljy3_identity_names(), degree - 1);
  }

  SearchConfig cfg;
  cfg.p = prime;
  cfg.seed = g.seed;
  cfg.s = stabilize;
  cfg.degree = degree;
  cfg.opset = ops;
  SearchSpace sp(ctx, degree, ops);
  IdentityReport rep = new_identities(alg, sp, cfg, known, exact ? &*exact : nullptr);

  json out_json = rep.to_json(ctx);
  out_json["manifest"] = manifest("find", g);
  out_json["manifest"]["algebra"] = algebra_path;
  out_json["manifest"]["known"] = known_path.empty() ? "builtin-catalog" : known_path;
  write_output(out_json, out);
  std::cerr << "rank " << rep.fill_rank << " of " << rep.q << "; nullspace " << rep.nullity
            << "; lifted " << rep.lifted_dim << "; " << rep.new_generators.size()
            << " new generators\n";
  return rep.reconstruction_ok ? kExitOk : kExitReconstruction;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"idforge: identity search for Lie-Yamaguti style algebras"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for all randomness (recorded in every output)");
  app.add_option("--threads", g.threads,
                 "worker threads (0 = all cores; never changes results); env IDFORGE_THREADS "
                 "is the fallback");

  std::string family, field = "q-sqrt2", out, algebra, identities = "LY", mode = "random";
  std::string known_path, out_dir, section;
  int n = 3, degree = 3, stabilize = 10;
  std::uint64_t prime = 103;
  std::string ops = "mixed";
  bool extended = false;

  CLI::App* b = app.add_subcommand("build", "build an algebra and write its tables as JSON");
  b->add_option("--family", family, "ly | ljy | ly3-transvection | ly4-tensor | jordan-h")
      ->required();
  b->add_option("--n", n, "matrix size parameter");
  b->add_option("--field", field, "q-sqrt2 or gfp:P[:sqrt2=R]");
  b->add_option("--out", out, "output path (default: stdout)");

  CLI::App* v = app.add_subcommand("verify", "verify identity suites on an algebra file");
  v->add_option("--algebra", algebra, "algebra JSON file")->required()->check(CLI::ExistingFile);
  v->add_option("--identities", identities, "LY | LieJordan | comma-separated identity names");
  v->add_option("--mode", mode, "exhaustive | random")
      ->check(CLI::IsMember({"exhaustive", "random"}));

  CLI::App* f = app.add_subcommand("find", "search for new identities of an algebra");
  f->add_option("--algebra", algebra, "algebra JSON file")->required()->check(CLI::ExistingFile);
  f->add_option("--degree", degree, "multilinear degree")->required();
  f->add_option("--ops", ops, "binary | ternary | mixed")
      ->check(CLI::IsMember({"binary", "ternary", "mixed"}));
  f->add_option("--prime", prime, "modulus for the fill");
  f->add_option("--stabilize", stabilize, "rank-stable iterations before stopping");
  f->add_option("--known", known_path, "JSON list of lower-degree identities")
      ->check(CLI::ExistingFile);
  f->add_option("--out", out, "report path (default: stdout)");

  CLI::App* r = app.add_subcommand("reproduce", "recompute a published result table");
  r->add_option("--paper-section", section, "5 | 6")
      ->required()
      ->check(CLI::IsMember({"5", "6"}));
  r->add_option("--out-dir", out_dir, "directory for the pass/fail summary");
  r->add_flag("--extended", extended, "include the long-running degree-6 computations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (b->parsed()) return cmd_build(family, n, field, out, g);
    if (v->parsed()) return cmd_verify(algebra, identities, mode, g);
    if (f->parsed()) return cmd_find(algebra, degree, ops, prime, stabilize, known_path, out, g);
    if (r->parsed())
      return section == "5" ? reproduce_section5(out_dir, extended, g)
                            : reproduce_section6(out_dir, extended, g);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitUsage;
}
