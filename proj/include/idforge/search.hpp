#ifndef IDFORGE_SEARCH_HPP
#define IDFORGE_SEARCH_HPP

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "idforge/algebra.hpp"
#include "idforge/catalog.hpp"
#include "idforge/poly.hpp"
#include "idforge/prime_field.hpp"
#include "idforge/random.hpp"

namespace idforge {

struct SearchConfig {
  std::uint64_t p = 103;
  std::uint64_t root = 0;  // sqrt2 residue; 0 = derive the smaller root
  std::uint64_t seed = 1;
  int s = 10;              // stop after this many rank-stable fill iterations
  int degree = 3;
  std::string opset = "mixed";  // binary | ternary | mixed
  int cap = 200;                // fill iteration cap
  int char0_trials = 10;        // exact verification trials per new generator

  std::uint64_t sqrt2() const { return root ? root : sqrt2_residue(p, Sqrt2Root::smaller); }
};

namespace detail {

/// Barrett reduction: a mod p for any 64-bit a, without a hardware divide in
/// the elimination inner loops.
struct Barrett {
  std::uint64_t p, m;
  explicit Barrett(std::uint64_t prime) : p(prime), m(~std::uint64_t(0) / prime) {}
  std::uint64_t reduce(std::uint64_t a) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * m) >> 64);
    std::uint64_t r = a - q * p;
    while (r >= p) r -= p;
    return r;
  }
};

} // namespace detail

/// The free multilinear space of one degree and operation subset: the column
/// basis of normal monomials, conversions to/from coefficient rows over
/// GF(p), and the signed permutation action on columns.
class SearchSpace {
public:
  SearchSpace(OpsContext& ctx, int degree, std::string opset)
      : ctx_(&ctx), degree_(degree), opset_(std::move(opset)) {
    if (opset_ != "binary" && opset_ != "ternary" && opset_ != "mixed")
      throw std::invalid_argument("SearchSpace: opset must be binary, ternary or mixed");
    for (const auto& m : ctx.monomials(degree)) {
      const std::string& repr = ctx.types(degree)[m.type].repr;
      bool has_bin = repr.find('[') != std::string::npos;
      bool has_ter = repr.find('(') != std::string::npos;
      if (opset_ == "binary" && has_ter) continue;
      if (opset_ == "ternary" && has_bin) continue;
      index_[m] = static_cast<int>(cols_.size());
      cols_.push_back(m);
    }
    trees_.reserve(cols_.size());
    for (const auto& m : cols_) trees_.push_back(ctx.to_tree(m));
  }

  OpsContext& ctx() const { return *ctx_; }
  int degree() const { return degree_; }
  const std::string& opset() const { return opset_; }
  int q() const { return static_cast<int>(cols_.size()); }
  const std::vector<Monomial>& columns() const { return cols_; }
  const std::vector<MonoNode>& trees() const { return trees_; }
  int col_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::invalid_argument("SearchSpace: monomial outside the opset");
    return it->second;
  }

  std::vector<std::uint32_t> poly_row(const MultilinearPoly& f, const GfpField& fld) const {
    if (f.degree() != degree_ && !f.terms().empty())
      throw std::invalid_argument("SearchSpace: polynomial degree mismatch");
    std::vector<std::uint32_t> row(q(), 0);
    for (const auto& [m, c] : f.terms())
      row[col_of(m)] = static_cast<std::uint32_t>(to_field_coeff(fld, c, 0));
    return row;
  }

  /// Row as a polynomial with residue coefficients in [0, p).
  MultilinearPoly row_poly(const std::vector<std::uint32_t>& row) const {
    MultilinearPoly f(degree_);
    for (int j = 0; j < q(); ++j)
      if (row[j]) f.add_term(cols_[j], mpq_class(static_cast<long>(row[j])));
    return f;
  }

  /// All degree! permutations, lexicographic (1-based images).
  const std::vector<std::vector<int>>& permutations() {
    if (perms_.empty()) {
      std::vector<int> sigma(degree_);
      std::iota(sigma.begin(), sigma.end(), 1);
      do perms_.push_back(sigma);
      while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    return perms_;
  }

  /// Signed column action: actions()[s][j] = (column of sigma_s . m_j, sign).
  const std::vector<std::vector<std::pair<int, int>>>& actions() {
    if (actions_.empty()) {
      const auto& ps = permutations();
      actions_.resize(ps.size());
      for (std::size_t s = 0; s < ps.size(); ++s) {
        actions_[s].reserve(q());
        for (int j = 0; j < q(); ++j) {
          MonoNode t = trees_[j];
          relabel(t, ps[s]);
          auto [cm, sign] = ctx_->canonicalize(t);
          actions_[s].emplace_back(col_of(cm), sign);
        }
      }
    }
    return actions_;
  }

  /// Image of a coefficient row under one permutation action.
  std::vector<std::uint32_t> permute_row(const std::vector<std::uint32_t>& row, std::size_t s,
                                         const GfpField& fld) {
    const auto& act = actions()[s];
    std::vector<std::uint32_t> out(q(), 0);
    for (int j = 0; j < q(); ++j) {
      if (!row[j]) continue;
      auto [col, sign] = act[j];
      std::uint64_t v = sign == 1 ? row[j] : fld.neg(row[j]);
      out[col] = static_cast<std::uint32_t>(fld.add(out[col], v));
    }
    return out;
  }

private:
  static void relabel(MonoNode& t, const std::vector<int>& sigma) {
    if (t.op < 0) {
      t.var = sigma[t.var - 1];
      return;
    }
    for (auto& k : t.kids) relabel(k, sigma);
  }

  OpsContext* ctx_;
  int degree_;
  std::string opset_;
  std::vector<Monomial> cols_;
  std::vector<MonoNode> trees_;
  std::map<Monomial, int> index_;
  std::vector<std::vector<int>> perms_;
  std::vector<std::vector<std::pair<int, int>>> actions_;
};

/// Incremental row-echelon accumulator over GF(p): rows normalized to leading
/// coefficient 1, sorted by leading column, eliminated forward only.
class RowEchelon {
public:
  RowEchelon(std::uint64_t p, int cols) : fld_(p), bar_(p), cols_(cols) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const std::vector<std::vector<std::uint32_t>>& rows() const { return rows_; }
  const std::vector<int>& leads() const { return leads_; }

  /// Eliminate w against the current rows in place.
  void reduce(std::vector<std::uint32_t>& w) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      int c = leads_[i];
      if (!w[c]) continue;
      axpy(w, fld_.neg(w[c]), rows_[i], c);
    }
  }

  bool contains(std::vector<std::uint32_t> w) const {
    reduce(w);
    return std::all_of(w.begin(), w.end(), [](std::uint32_t x) { return x == 0; });
  }

  /// Returns true when the row was independent (rank increased).
  bool add(std::vector<std::uint32_t> w) {
    reduce(w);
    int lead = -1;
    for (int j = 0; j < cols_; ++j)
      if (w[j]) {
        lead = j;
        break;
      }
    if (lead < 0) return false;
    std::uint64_t inv = fld_.inv(w[lead]);
    for (int j = lead; j < cols_; ++j)
      w[j] = static_cast<std::uint32_t>(fld_.mul(w[j], inv));
    auto pos = std::upper_bound(leads_.begin(), leads_.end(), lead) - leads_.begin();
    leads_.insert(leads_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(w));
    return true;
  }

  /// The nullspace vector with value 1 at the given non-leading column and 0
  /// at every other non-leading column, by back-substitution.  The vectors
  /// are uniquely determined, so they agree with the canonical
  /// reduced-row-echelon extraction.
  std::vector<std::uint32_t> nullspace_vector(int free_col) const {
    std::vector<std::uint32_t> v(cols_, 0);
    v[free_col] = 1;
    for (int i = static_cast<int>(rows_.size()) - 1; i >= 0; --i) {
      int c = leads_[i];
      std::uint64_t acc = 0;
      const auto& r = rows_[i];
      for (int j = c + 1; j < cols_; ++j)
        if (r[j] && v[j]) acc = bar_.reduce(acc + static_cast<std::uint64_t>(r[j]) * v[j]);
      v[c] = static_cast<std::uint32_t>(fld_.neg(acc));
    }
    return v;
  }

  std::vector<int> free_columns() const {
    std::vector<bool> is_lead(cols_, false);
    for (int c : leads_) is_lead[c] = true;
    std::vector<int> free;
    for (int j = 0; j < cols_; ++j)
      if (!is_lead[j]) free.push_back(j);
    return free;
  }

  std::vector<std::vector<std::uint32_t>> nullspace_basis() const {
    std::vector<std::vector<std::uint32_t>> basis;
    for (int f : free_columns()) basis.push_back(nullspace_vector(f));
    return basis;
  }

  const GfpField& field() const { return fld_; }

private:
  void axpy(std::vector<std::uint32_t>& w, std::uint64_t mult,
            const std::vector<std::uint32_t>& r, int from) const {
    for (int j = from; j < cols_; ++j)
      if (r[j]) w[j] = static_cast<std::uint32_t>(bar_.reduce(w[j] + mult * r[j]));
  }

  GfpField fld_;
  detail::Barrett bar_;
  int cols_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<int> leads_;
};

/// Evaluates normal monomials on one assignment with subtree caching.
class MonomialEvaluator {
public:
  MonomialEvaluator(const ModAlgebra& alg, std::vector<std::vector<std::uint64_t>> assign)
      : alg_(&alg), assign_(std::move(assign)) {}

  const std::vector<std::uint64_t>& eval(const MonoNode& t) {
    key_.clear();
    node_key(t);
    auto it = cache_.find(key_);
    if (it != cache_.end()) return it->second;
    std::string key = key_;
    std::vector<std::uint64_t> v = compute(t);
    return cache_.emplace(std::move(key), std::move(v)).first->second;
  }

private:
  void node_key(const MonoNode& t) {
    if (t.op < 0) {
      key_ += static_cast<char>('a' + t.var - 1);
      return;
    }
    key_ += t.kids.size() == 2 ? '[' : '(';
    for (const auto& k : t.kids) node_key(k);
    key_ += t.kids.size() == 2 ? ']' : ')';
  }

  std::vector<std::uint64_t> compute(const MonoNode& t) {
    if (t.op < 0) return assign_[t.var - 1];
    std::vector<const std::vector<std::uint64_t>*> kids;
    for (const auto& k : t.kids) kids.push_back(&eval(k));
    const auto& f = alg_->fld;
    std::vector<std::uint64_t> out(alg_->dim, 0);
    if (kids.size() == 2) {
      for (int i = 0; i < alg_->dim; ++i) {
        if (!(*kids[0])[i]) continue;
        for (int j = 0; j < alg_->dim; ++j) {
          if (!(*kids[1])[j]) continue;
          alg_->add_binary(out, i, j, f.mul((*kids[0])[i], (*kids[1])[j]));
        }
      }
    } else {
      for (int i = 0; i < alg_->dim; ++i) {
        if (!(*kids[0])[i]) continue;
        for (int j = 0; j < alg_->dim; ++j) {
          if (!(*kids[1])[j]) continue;
          std::uint64_t ij = f.mul((*kids[0])[i], (*kids[1])[j]);
          for (int k = 0; k < alg_->dim; ++k) {
            if (!(*kids[2])[k]) continue;
            alg_->add_ternary(out, i, j, k, f.mul(ij, (*kids[2])[k]));
          }
        }
      }
    }
    return out;
  }

  const ModAlgebra* alg_;
  std::vector<std::vector<std::uint64_t>> assign_;
  std::map<std::string, std::vector<std::uint64_t>> cache_;
  std::string key_;
};

struct FillResult {
  int rank = 0;
  int iterations = 0;
  std::vector<std::vector<std::uint32_t>> nullspace;  // canonical basis rows
};

/// Fill-and-reduce: evaluate every normal monomial on pseudorandom vectors,
/// accumulate the coordinate rows, and stop once the rank has been stable
/// for cfg.s consecutive iterations.
inline RowEchelon fill_echelon(const ModAlgebra& alg, SearchSpace& sp, const SearchConfig& cfg,
                               int& iterations) {
  if (alg.fld.modulus() != cfg.p)
    throw std::invalid_argument("fill_and_reduce: algebra field does not match config");
  RowEchelon ech(cfg.p, sp.q());
  SplitMix64 rng(cfg.seed);
  int stable = 0;
  iterations = 0;
  while (stable < cfg.s) {
    if (iterations >= cfg.cap)
      throw std::runtime_error("fill_and_reduce: iteration cap exceeded before stabilization");
    ++iterations;
    std::vector<std::vector<std::uint64_t>> assign;
    for (int v = 0; v < sp.degree(); ++v) {
      std::vector<std::uint64_t> x(alg.dim);
      for (auto& c : x) c = rng.below(cfg.p);
      assign.push_back(std::move(x));
    }
    MonomialEvaluator ev(alg, std::move(assign));
    std::vector<std::vector<std::uint32_t>> block(
        alg.dim, std::vector<std::uint32_t>(sp.q(), 0));
    for (int j = 0; j < sp.q(); ++j) {
      const auto& val = ev.eval(sp.trees()[j]);
      for (int t = 0; t < alg.dim; ++t) block[t][j] = static_cast<std::uint32_t>(val[t]);
    }
    int before = ech.rank();
    for (auto& row : block) ech.add(std::move(row));
    stable = ech.rank() == before ? stable + 1 : 0;
  }
  return ech;
}

inline FillResult fill_and_reduce(const ModAlgebra& alg, SearchSpace& sp, const SearchConfig& cfg,
                                  bool want_nullspace = true) {
  FillResult res;
  RowEchelon ech = fill_echelon(alg, sp, cfg, res.iterations);
  res.rank = ech.rank();
  if (want_nullspace) res.nullspace = ech.nullspace_basis();
  return res;
}

/// S_d-submodule accumulator: membership tests cost one row; the full signed
/// orbit (d! rows) is absorbed only for rows that enlarge the module.
class ModuleBuilder {
public:
  ModuleBuilder(SearchSpace& sp, std::uint64_t p) : sp_(&sp), ech_(p, sp.q()) {}

  int rank() const { return ech_.rank(); }
  const RowEchelon& echelon() const { return ech_; }

  bool contains(const std::vector<std::uint32_t>& row) const { return ech_.contains(row); }

  /// Absorb the full orbit; returns true if the rank grew.
  bool absorb(const std::vector<std::uint32_t>& row) {
    int before = ech_.rank();
    for (std::size_t s = 0; s < sp_->permutations().size(); ++s)
      ech_.add(sp_->permute_row(row, s, ech_.field()));
    return ech_.rank() > before;
  }

  /// One-row membership shortcut: if the row is already in the module so is
  /// its whole orbit (the module is permutation-closed); otherwise absorb.
  bool add_candidate(const std::vector<std::uint32_t>& row) {
    if (contains(row)) return false;
    absorb(row);
    return true;
  }

private:
  SearchSpace* sp_;
  RowEchelon ech_;
};

struct ModuleResult {
  std::vector<int> generators;  // indices into the candidate list
  int rank = 0;
};

/// Greedy module-generator extraction over an optional seed module.
inline ModuleResult module_generators(SearchSpace& sp, std::uint64_t p,
                                      const std::vector<MultilinearPoly>& candidates,
                                      const std::vector<MultilinearPoly>& seed = {},
                                      ModuleBuilder* keep = nullptr) {
  ModuleBuilder local(sp, p);
  ModuleBuilder& mb = keep ? *keep : local;
  GfpField fld(p);
  for (const auto& f : seed) mb.absorb(sp.poly_row(f, fld));
  ModuleResult res;
  for (std::size_t k = 0; k < candidates.size(); ++k)
    if (mb.add_candidate(sp.poly_row(candidates[k], fld))) res.generators.push_back(static_cast<int>(k));
  res.rank = mb.rank();
  return res;
}

/// All liftings of the known lower-degree identities, absorbed into one
/// module; returns the generating subset and the module dimension.
inline ModuleResult lifted_module(SearchSpace& sp, std::uint64_t p,
                                  const std::map<int, std::vector<MultilinearPoly>>& known,
                                  ModuleBuilder* keep = nullptr) {
  std::vector<MultilinearPoly> candidates;
  for (const auto& [deg, polys] : known) {
    if (deg > sp.degree())
      throw std::invalid_argument("lifted_module: known identities must not exceed the target degree");
    for (const auto& f : polys)
      for (const auto& g : liftings(sp.ctx(), f, sp.degree()))
        if (!g.terms().empty()) candidates.push_back(g);
  }
  return module_generators(sp, p, candidates, {}, keep);
}

/// Integer reconstruction of a residue row: per-entry rational
/// reconstruction, clear denominators by their lcm, divide by the gcd.
inline std::optional<std::vector<long long>> reconstruct_row(const std::vector<std::uint32_t>& row,
                                                             std::uint64_t p) {
  std::vector<ReconstructedRational> rats(row.size());
  long long lcm = 1;
  for (std::size_t j = 0; j < row.size(); ++j) {
    auto r = rational_reconstruct(row[j], p);
    if (!r) return std::nullopt;
    rats[j] = *r;
    lcm = std::lcm(lcm, r->den);
  }
  std::vector<long long> out(row.size());
  long long g = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    out[j] = rats[j].num * (lcm / rats[j].den);
    g = std::gcd(g, out[j]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline std::optional<MultilinearPoly> reconstruct_identity(const MultilinearPoly& f,
                                                           std::uint64_t p) {
  MultilinearPoly out(f.degree());
  std::vector<ReconstructedRational> rats;
  std::vector<Monomial> monos;
  long long lcm = 1;
  for (const auto& [m, c] : f.terms()) {
    if (c.get_den() != 1 || c < 0 || c >= static_cast<long>(p))
      throw std::invalid_argument("reconstruct_identity: expected residue coefficients");
    auto r = rational_reconstruct(c.get_num().get_ui(), p);
    if (!r) return std::nullopt;
    rats.push_back(*r);
    monos.push_back(m);
    lcm = std::lcm(lcm, r->den);
  }
  std::vector<long long> ints(rats.size());
  long long g = 0;
  for (std::size_t i = 0; i < rats.size(); ++i) {
    ints[i] = rats[i].num * (lcm / rats[i].den);
    g = std::gcd(g, ints[i]);
  }
  for (std::size_t i = 0; i < rats.size(); ++i)
    out.add_term(monos[i], mpq_class(static_cast<long>(g > 1 ? ints[i] / g : ints[i])));
  return out;
}

struct Char0Result {
  bool pass = true;
  std::string witness;
};

/// Exact verification on seeded random elements with two-digit integer
/// coordinates.
inline Char0Result verify_char0(const MultilinearPoly& f, const QAlgebra& alg, OpsContext& ctx,
                                int trials = 10, std::uint64_t seed = 1) {
  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<QSqrt2>> assign;
    for (int v = 0; v < f.degree(); ++v) assign.push_back(random_element(alg, rng));
    for (const auto& x : evaluate(alg, ctx, f, assign))
      if (!x.is_zero())
        return {false, "nonzero value on trial " + std::to_string(t) + " (seed " +
                           std::to_string(seed) + ")"};
  }
  return {true, ""};
}

struct GeneratorInfo {
  MultilinearPoly modular{0};                  // residue coefficients
  std::optional<MultilinearPoly> reconstructed;
  long long squared_length = -1;               // -1 when reconstruction failed
  int term_count = 0;
  int rank_after = 0;                          // cumulative module dimension
  bool char0_checked = false;
  bool char0_pass = false;
};

struct IdentityReport {
  std::string algebra;
  int degree = 0;
  std::string opset;
  int q = 0;
  std::uint64_t p = 0, root = 0, seed = 0;
  int s = 0;
  int fill_rank = 0;
  int nullity = 0;
  int iterations = 0;
  int lifted_dim = 0;
  int lifted_generator_count = 0;
  std::vector<GeneratorInfo> new_generators;
  int final_rank = 0;
  bool reconstruction_ok = true;
  double fill_seconds = 0, module_seconds = 0;

  nlohmann::json to_json(OpsContext& ctx) const {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : new_generators) {
      nlohmann::json jg{{"terms", g.term_count},
                        {"squared_length", g.squared_length},
                        {"module_dimension", g.rank_after},
                        {"modular", poly_to_json(ctx, g.modular)}};
      if (g.reconstructed) jg["reconstructed"] = poly_to_json(ctx, *g.reconstructed);
      if (g.char0_checked) jg["char0_pass"] = g.char0_pass;
      gens.push_back(std::move(jg));
    }
    return nlohmann::json{{"algebra", algebra},
                          {"degree", degree},
                          {"opset", opset},
                          {"monomials", q},
                          {"prime", p},
                          {"sqrt2", root},
                          {"seed", seed},
                          {"stabilize", s},
                          {"rank", fill_rank},
                          {"nullity", nullity},
                          {"iterations", iterations},
                          {"lifted_dimension", lifted_dim},
                          {"lifted_generators", lifted_generator_count},
                          {"new_generators", gens},
                          {"final_rank", final_rank},
                          {"reconstruction_ok", reconstruction_ok},
                          {"fill_seconds", fill_seconds},
                          {"module_seconds", module_seconds}};
  }

  std::string render() const {
    std::string out = "degree " + std::to_string(degree) + " " + opset + ": " +
                      std::to_string(q) + " monomials; rank reaches " +
                      std::to_string(fill_rank) + " after " + std::to_string(iterations) +
                      " iterations; nullspace dimension " + std::to_string(nullity) +
                      "; lifted module dimension " + std::to_string(lifted_dim) + "; " +
                      std::to_string(new_generators.size()) + " new generators";
    for (const auto& g : new_generators)
      out += "\n  generator: " + std::to_string(g.term_count) + " terms, squared length " +
             std::to_string(g.squared_length) + ", module dimension " +
             std::to_string(g.rank_after) +
             (g.char0_checked ? (g.char0_pass ? ", char-0 verified" : ", CHAR-0 FAILURE") : "");
    if (!reconstruction_ok)
      out += "\n  reconstruction failed for at least one generator: rerun at a larger prime";
    return out;
  }
};

/// The degree driver: fill-and-reduce, lifted module of the known
/// identities, then greedy generator extraction over the nullspace basis
/// sorted by increasing squared reconstructed length.
inline IdentityReport new_identities(const ModAlgebra& alg, SearchSpace& sp,
                                     const SearchConfig& cfg,
                                     const std::map<int, std::vector<MultilinearPoly>>& known,
                                     const QAlgebra* exact = nullptr) {
  using clock = std::chrono::steady_clock;
  IdentityReport rep;
  rep.algebra = alg.name;
  rep.degree = sp.degree();
  rep.opset = sp.opset();
  rep.q = sp.q();
  rep.p = cfg.p;
  rep.root = cfg.sqrt2();
  rep.seed = cfg.seed;
  rep.s = cfg.s;

  auto t0 = clock::now();
  ModuleBuilder mb(sp, cfg.p);
  auto lifted = lifted_module(sp, cfg.p, known, &mb);
  rep.lifted_dim = lifted.rank;
  rep.lifted_generator_count = static_cast<int>(lifted.generators.size());
  auto t1 = clock::now();

  RowEchelon ech = fill_echelon(alg, sp, cfg, rep.iterations);
  rep.fill_rank = ech.rank();
  rep.nullity = sp.q() - ech.rank();
  auto t2 = clock::now();
  rep.fill_seconds = std::chrono::duration<double>(t2 - t1).count();

  if (rep.lifted_dim > rep.nullity)
    throw std::runtime_error("new_identities: lifted module exceeds the nullspace (modular rank undershoot)");
  // candidate scan is unnecessary when the lifted module already fills the
  // nullspace; this also skips the quadratic basis extraction at degree 6
  if (rep.lifted_dim < rep.nullity) {
    std::vector<std::vector<std::uint32_t>> nullspace = ech.nullspace_basis();
    // sort candidates by squared integer length after reconstruction;
    // failures last; ties by basis order
    struct Cand {
      std::vector<std::uint32_t> row;
      std::optional<std::vector<long long>> ints;
      long long len2 = -1;
      std::size_t pos;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < nullspace.size(); ++i) {
      Cand c{std::move(nullspace[i]), std::nullopt, -1, i};
      c.ints = reconstruct_row(c.row, cfg.p);
      if (c.ints) {
        c.len2 = 0;
        for (long long x : *c.ints) c.len2 += x * x;
      }
      cands.push_back(std::move(c));
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if ((a.len2 < 0) != (b.len2 < 0)) return b.len2 < 0;
      if (a.len2 != b.len2) return a.len2 < b.len2;
      return a.pos < b.pos;
    });
    GfpField fld(cfg.p);
    for (const auto& c : cands) {
      if (!mb.add_candidate(c.row)) continue;
      GeneratorInfo gi;
      gi.modular = sp.row_poly(c.row);
      gi.rank_after = mb.rank();
      if (c.ints) {
        MultilinearPoly rec(sp.degree());
        for (int j = 0; j < sp.q(); ++j)
          if ((*c.ints)[j]) rec.add_term(sp.columns()[j], mpq_class(static_cast<long>((*c.ints)[j])));
        gi.term_count = static_cast<int>(rec.term_count());
        gi.squared_length = c.len2;
        gi.reconstructed = std::move(rec);
        if (exact && cfg.char0_trials > 0) {
          gi.char0_checked = true;
          gi.char0_pass =
              verify_char0(*gi.reconstructed, *exact, sp.ctx(), cfg.char0_trials, cfg.seed).pass;
        }
      } else {
        gi.term_count = static_cast<int>(gi.modular.term_count());
        rep.reconstruction_ok = false;
      }
      rep.new_generators.push_back(std::move(gi));
    }
  }
  rep.final_rank = mb.rank();
  rep.module_seconds =
      std::chrono::duration<double>(clock::now() - t2).count() +
      std::chrono::duration<double>(t1 - t0).count();
  return rep;
}

} // namespace idforge

#endif
