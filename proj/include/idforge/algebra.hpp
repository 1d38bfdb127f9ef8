#ifndef IDFORGE_ALGEBRA_HPP
#define IDFORGE_ALGEBRA_HPP

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "idforge/catalog.hpp"
#include "idforge/poly.hpp"
#include "idforge/prime_field.hpp"
#include "idforge/qsqrt2.hpp"
#include "idforge/random.hpp"
#include "idforge/serialize.hpp"

namespace idforge {

/// Structure-constant algebra over Q(sqrt2) with sparse product tables.
/// bin[i*dim+j] / ter[(i*dim+j)*dim+k] list the nonzero coordinates of the
/// product of basis elements.
struct QAlgebra {
  std::string name;
  int n = 0;  // matrix-model parameter, 0 when not applicable
  int dim = 0;
  std::vector<OperationSignature> sigs;  // binary first, then ternary
  std::vector<std::vector<std::pair<int, QSqrt2>>> bin;
  std::vector<std::vector<std::pair<int, QSqrt2>>> ter;

  using Elem = QSqrt2;
  QSqrt2Field field() const { return {}; }

  void init(int d) {
    dim = d;
    bin.assign(static_cast<std::size_t>(d) * d, {});
    ter.assign(static_cast<std::size_t>(d) * d * d, {});
  }
  void set_bin(int i, int j, std::vector<std::pair<int, QSqrt2>> v) {
    bin[static_cast<std::size_t>(i) * dim + j] = std::move(v);
  }
  void set_ter(int i, int j, int k, std::vector<std::pair<int, QSqrt2>> v) {
    ter[(static_cast<std::size_t>(i) * dim + j) * dim + k] = std::move(v);
  }
  void add_binary(std::vector<QSqrt2>& out, int i, int j, const QSqrt2& scale) const {
    for (const auto& [k, c] : bin[static_cast<std::size_t>(i) * dim + j]) out[k] += scale * c;
  }
  void add_ternary(std::vector<QSqrt2>& out, int i, int j, int k, const QSqrt2& scale) const {
    for (const auto& [t, c] : ter[(static_cast<std::size_t>(i) * dim + j) * dim + k])
      out[t] += scale * c;
  }
  std::vector<QSqrt2> bin_row(int i, int j) const {
    std::vector<QSqrt2> v(dim);
    add_binary(v, i, j, QSqrt2(1));
    return v;
  }
  std::vector<QSqrt2> ter_row(int i, int j, int k) const {
    std::vector<QSqrt2> v(dim);
    add_ternary(v, i, j, k, QSqrt2(1));
    return v;
  }
};

/// The same algebra with coefficients reduced modulo p; dense tables for
/// fast evaluation in the searches.
struct ModAlgebra {
  std::string name;
  int n = 0;
  int dim = 0;
  GfpField fld{3};
  std::uint64_t root = 0;  // residue of sqrt(2)
  std::vector<OperationSignature> sigs;
  std::vector<std::uint64_t> bin;  // (i*dim+j)*dim + k
  std::vector<std::uint64_t> ter;  // ((i*dim+j)*dim+k)*dim + t

  using Elem = std::uint64_t;
  const GfpField& field() const { return fld; }

  void add_binary(std::vector<std::uint64_t>& out, int i, int j, std::uint64_t scale) const {
    const std::uint64_t* row = &bin[(static_cast<std::size_t>(i) * dim + j) * dim];
    for (int k = 0; k < dim; ++k)
      if (row[k]) out[k] = fld.add(out[k], fld.mul(scale, row[k]));
  }
  void add_ternary(std::vector<std::uint64_t>& out, int i, int j, int k, std::uint64_t scale) const {
    const std::uint64_t* row = &ter[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim];
    for (int t = 0; t < dim; ++t)
      if (row[t]) out[t] = fld.add(out[t], fld.mul(scale, row[t]));
  }
  std::vector<std::uint64_t> bin_row(int i, int j) const {
    auto b = bin.begin() + (static_cast<std::size_t>(i) * dim + j) * dim;
    return {b, b + dim};
  }
  std::vector<std::uint64_t> ter_row(int i, int j, int k) const {
    auto b = ter.begin() + ((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim;
    return {b, b + dim};
  }
};

inline ModAlgebra reduce_mod(const QAlgebra& a, const GfpField& f, std::uint64_t root) {
  ModAlgebra m;
  m.name = a.name;
  m.n = a.n;
  m.dim = a.dim;
  m.fld = f;
  m.root = root;
  m.sigs = a.sigs;
  m.bin.assign(static_cast<std::size_t>(a.dim) * a.dim * a.dim, 0);
  m.ter.assign(static_cast<std::size_t>(a.dim) * a.dim * a.dim * a.dim, 0);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (const auto& [k, c] : a.bin[static_cast<std::size_t>(i) * a.dim + j])
        m.bin[(static_cast<std::size_t>(i) * a.dim + j) * a.dim + k] = c.reduce_mod(f, root);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (int k = 0; k < a.dim; ++k)
        for (const auto& [t, c] :
             a.ter[(static_cast<std::size_t>(i) * a.dim + j) * a.dim + k])
          m.ter[((static_cast<std::size_t>(i) * a.dim + j) * a.dim + k) * a.dim + t] =
              c.reduce_mod(f, root);
  return m;
}

/// Evaluate a monomial tree at the given coordinate vectors (1-based leaf
/// variables index into `assign`).  Linear in each argument.
template <typename Alg>
std::vector<typename Alg::Elem> eval_tree(const Alg& alg, const MonoNode& t,
                                          const std::vector<std::vector<typename Alg::Elem>>& assign) {
  using Elem = typename Alg::Elem;
  auto field = alg.field();
  if (t.op < 0) {
    if (t.var < 1 || t.var > static_cast<int>(assign.size()))
      throw std::invalid_argument("assignment does not cover variable");
    return assign[t.var - 1];
  }
  std::vector<std::vector<Elem>> kids;
  for (const auto& k : t.kids) kids.push_back(eval_tree(alg, k, assign));
  std::vector<Elem> out(alg.dim, field.zero());
  if (kids.size() == 2) {
    for (int i = 0; i < alg.dim; ++i) {
      if (field.is_zero(kids[0][i])) continue;
      for (int j = 0; j < alg.dim; ++j) {
        if (field.is_zero(kids[1][j])) continue;
        alg.add_binary(out, i, j, field.mul(kids[0][i], kids[1][j]));
      }
    }
  } else {
    for (int i = 0; i < alg.dim; ++i) {
      if (field.is_zero(kids[0][i])) continue;
      for (int j = 0; j < alg.dim; ++j) {
        if (field.is_zero(kids[1][j])) continue;
        Elem ij = field.mul(kids[0][i], kids[1][j]);
        for (int k = 0; k < alg.dim; ++k) {
          if (field.is_zero(kids[2][k])) continue;
          alg.add_ternary(out, i, j, k, field.mul(ij, kids[2][k]));
        }
      }
    }
  }
  return out;
}

inline QSqrt2 to_field_coeff(const QSqrt2Field&, const mpq_class& c, std::uint64_t) {
  return QSqrt2(c);
}
inline std::uint64_t to_field_coeff(const GfpField& f, const mpq_class& c, std::uint64_t) {
  mpz_class num = c.get_num() % static_cast<long>(f.modulus());
  mpz_class den = c.get_den() % static_cast<long>(f.modulus());
  return f.div(f.from_int(num.get_si()), f.from_int(den.get_si()));
}

/// Evaluate a multilinear polynomial at the given coordinate vectors.
template <typename Alg>
std::vector<typename Alg::Elem> evaluate(const Alg& alg, OpsContext& ctx, const MultilinearPoly& f,
                                         const std::vector<std::vector<typename Alg::Elem>>& assign) {
  auto field = alg.field();
  std::vector<typename Alg::Elem> out(alg.dim, field.zero());
  for (const auto& [m, c] : f.terms()) {
    auto v = eval_tree(alg, ctx.to_tree(m), assign);
    auto fc = to_field_coeff(field, c, 0);
    for (int k = 0; k < alg.dim; ++k) out[k] = field.add(out[k], field.mul(fc, v[k]));
  }
  return out;
}

template <typename Alg>
std::vector<typename Alg::Elem> random_element(const Alg& alg, SplitMix64& rng);

inline std::vector<std::uint64_t> random_element(const ModAlgebra& alg, SplitMix64& rng) {
  std::vector<std::uint64_t> v(alg.dim);
  for (auto& x : v) x = rng.below(alg.fld.modulus());
  return v;
}
/// Q(sqrt2) random vectors use two-digit integer coordinates.
inline std::vector<QSqrt2> random_element(const QAlgebra& alg, SplitMix64& rng) {
  std::vector<QSqrt2> v(alg.dim);
  for (auto& x : v) x = QSqrt2(mpq_class(static_cast<long>(rng.below(199)) - 99));
  return v;
}

struct AxiomResult {
  std::string name;
  bool pass;
  std::string witness;  // empty when passing
};

enum class VerifyMode { exhaustive, random };

namespace detail {

template <typename Alg>
bool is_zero_vec(const Alg& alg, const std::vector<typename Alg::Elem>& v) {
  auto field = alg.field();
  for (const auto& x : v)
    if (!field.is_zero(x)) return false;
  return true;
}

// Complete check of the two skew-symmetry axioms directly on the tables
// (sufficient by bilinearity/trilinearity).
template <typename Alg>
AxiomResult check_skew_binary_table(const Alg& alg) {
  auto field = alg.field();
  for (int i = 0; i < alg.dim; ++i)
    for (int j = i; j < alg.dim; ++j) {
      auto vij = alg.bin_row(i, j);
      auto vji = alg.bin_row(j, i);
      for (int k = 0; k < alg.dim; ++k)
        if (!field.is_zero(field.add(vij[k], vji[k])))
          return {"LY1", false, "binary table not skew at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")"};
    }
  return {"LY1", true, ""};
}

template <typename Alg>
AxiomResult check_skew_ternary_table(const Alg& alg) {
  auto field = alg.field();
  for (int i = 0; i < alg.dim; ++i)
    for (int j = i; j < alg.dim; ++j)
      for (int k = 0; k < alg.dim; ++k) {
        auto vijk = alg.ter_row(i, j, k);
        auto vjik = alg.ter_row(j, i, k);
        for (int t = 0; t < alg.dim; ++t)
          if (!field.is_zero(field.add(vijk[t], vjik[t])))
            return {"LY2", false, "ternary table not skew in slots 1,2 at (" + std::to_string(i) +
                                      "," + std::to_string(j) + "," + std::to_string(k) + ")"};
      }
  return {"LY2", true, ""};
}

} // namespace detail

/// Verify named identities.  "LY1"/"LY2" are checked completely on the
/// tables; multilinear catalog identities are evaluated on all basis tuples
/// (exhaustive) or on seeded pseudorandom vectors.
template <typename Alg>
std::vector<AxiomResult> verify_axioms(const Alg& alg, OpsContext& ctx,
                                       const std::vector<std::string>& names, VerifyMode mode,
                                       int trials = 10, std::uint64_t seed = 1) {
  std::vector<AxiomResult> results;
  for (const auto& name : names) {
    if (name == "LY1") {
      results.push_back(detail::check_skew_binary_table(alg));
      continue;
    }
    if (name == "LY2") {
      results.push_back(detail::check_skew_ternary_table(alg));
      continue;
    }
    MultilinearPoly f = catalog_identity(ctx, name);
    int d = f.degree();
    AxiomResult res{name, true, ""};
    auto field = alg.field();
    if (mode == VerifyMode::exhaustive) {
      std::vector<int> idx(d, 0);
      while (res.pass) {
        std::vector<std::vector<typename Alg::Elem>> assign;
        for (int v : idx) {
          std::vector<typename Alg::Elem> e(alg.dim, field.zero());
          e[v] = field.one();
          assign.push_back(std::move(e));
        }
        if (!detail::is_zero_vec(alg, evaluate(alg, ctx, f, assign))) {
          res.pass = false;
          std::string w = "basis tuple (";
          for (int v : idx) w += std::to_string(v) + ",";
          w.back() = ')';
          res.witness = w;
        }
        int s = d;
        while (s > 0 && idx[s - 1] + 1 == alg.dim) idx[--s] = 0;
        if (s == 0) break;
        ++idx[s - 1];
      }
    } else {
      SplitMix64 rng(seed);
      for (int trial = 0; trial < trials && res.pass; ++trial) {
        std::vector<std::vector<typename Alg::Elem>> assign;
        for (int v = 0; v < d; ++v) assign.push_back(random_element(alg, rng));
        if (!detail::is_zero_vec(alg, evaluate(alg, ctx, f, assign))) {
          res.pass = false;
          res.witness = "random trial " + std::to_string(trial) + " (seed " +
                        std::to_string(seed) + ")";
        }
      }
    }
    results.push_back(std::move(res));
  }
  return results;
}

/// All signed slot permutations leaving the ternary table invariant.
template <typename Alg>
std::vector<std::pair<std::array<int, 3>, int>> detect_ternary_symmetry(const Alg& alg) {
  auto field = alg.field();
  std::vector<std::pair<std::array<int, 3>, int>> found;
  std::array<int, 3> perm{0, 1, 2};
  std::sort(perm.begin(), perm.end());
  do {
    for (int sign : {+1, -1}) {
      bool ok = true;
      for (int i = 0; i < alg.dim && ok; ++i)
        for (int j = 0; j < alg.dim && ok; ++j)
          for (int k = 0; k < alg.dim && ok; ++k) {
            std::array<int, 3> src{i, j, k};
            auto lhs = alg.ter_row(src[perm[0]], src[perm[1]], src[perm[2]]);
            auto rhs = alg.ter_row(i, j, k);
            for (int t = 0; t < alg.dim && ok; ++t) {
              auto r = sign == 1 ? rhs[t] : field.neg(rhs[t]);
              if (!(lhs[t] == r)) ok = false;
            }
          }
      if (ok) found.push_back({perm, sign});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

namespace detail {

inline nlohmann::json coeffs_json(const GfpField&, const std::vector<std::uint64_t>& v) {
  return nlohmann::json(v);
}
inline nlohmann::json coeffs_json(const QSqrt2Field&, const std::vector<QSqrt2>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(qsqrt2_to_json(x));
  return out;
}

inline nlohmann::json sigs_json(const std::vector<OperationSignature>& sigs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : sigs) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : s.generators) gens.push_back({g.i, g.j, g.sign});
    out.push_back({{"name", s.name}, {"arity", s.arity}, {"generators", gens}});
  }
  return out;
}

inline std::vector<OperationSignature> sigs_from_json(const nlohmann::json& j) {
  std::vector<OperationSignature> sigs;
  for (const auto& s : j) {
    OperationSignature sig;
    sig.name = s.at("name");
    sig.arity = s.at("arity");
    for (const auto& g : s.at("generators")) sig.generators.push_back({g.at(0), g.at(1), g.at(2)});
    sigs.push_back(std::move(sig));
  }
  return sigs;
}

// Canonical (lexicographically minimal) representative of an index tuple
// under the signature's signed slot group; returns sign, or 0 when the tuple
// is forced to zero.
inline std::pair<std::vector<int>, int> canonical_tuple(const OperationSignature& sig,
                                                        std::vector<int> tup) {
  auto group = signed_group(sig);
  std::vector<int> best = tup;
  int best_sign = 1;
  for (const auto& g : group) {
    std::vector<int> moved(tup.size());
    for (std::size_t s = 0; s < tup.size(); ++s) moved[s] = tup[g.perm[s]];
    if (moved < best) {
      best = moved;
      best_sign = g.sign;
    } else if (moved == best && g.sign != best_sign && !(moved == tup && g.sign == 1)) {
      // reachable with both signs: entry must vanish
      return {best, 0};
    }
  }
  // detect forced-zero fixed tuples (stabilized with sign -1)
  for (const auto& g : group) {
    std::vector<int> moved(tup.size());
    for (std::size_t s = 0; s < tup.size(); ++s) moved[s] = tup[g.perm[s]];
    if (moved == tup && g.sign == -1) return {best, 0};
  }
  return {best, best_sign};
}

} // namespace detail

template <typename Alg>
nlohmann::json algebra_to_json(const Alg& alg, const std::string& field_desc) {
  auto field = alg.field();
  nlohmann::json jbin = nlohmann::json::array();
  nlohmann::json jter = nlohmann::json::array();
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j) {
      auto [canon, sign] = detail::canonical_tuple(alg.sigs[0], {i, j});
      if (!(canon == std::vector<int>{i, j}) || sign == 0) continue;
      auto row = alg.bin_row(i, j);
      if (detail::is_zero_vec(alg, row)) continue;
      jbin.push_back({i, j, detail::coeffs_json(field, row)});
    }
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j)
      for (int k = 0; k < alg.dim; ++k) {
        auto [canon, sign] = detail::canonical_tuple(alg.sigs[1], {i, j, k});
        if (!(canon == std::vector<int>{i, j, k}) || sign == 0) continue;
        auto row = alg.ter_row(i, j, k);
        if (detail::is_zero_vec(alg, row)) continue;
        jter.push_back({i, j, k, detail::coeffs_json(field, row)});
      }
  std::string fd = field_desc;
  return nlohmann::json{{"name", alg.name}, {"n", alg.n},           {"dim", alg.dim},
                        {"field", fd},      {"binary", jbin},       {"ternary", jter},
                        {"signatures", detail::sigs_json(alg.sigs)}};
}

inline QAlgebra qalgebra_from_json(const nlohmann::json& j) {
  if (j.at("field").get<std::string>() != "q-sqrt2")
    throw std::invalid_argument("expected a q-sqrt2 algebra");
  QAlgebra a;
  a.name = j.at("name");
  a.n = j.at("n");
  a.sigs = detail::sigs_from_json(j.at("signatures"));
  a.init(j.at("dim").get<int>());
  auto expand = [&](const OperationSignature& sig, const std::vector<int>& tup,
                    const std::vector<QSqrt2>& row, auto&& setter) {
    for (const auto& g : signed_group(sig)) {
      std::vector<int> moved(tup.size());
      for (std::size_t s = 0; s < tup.size(); ++s) moved[s] = tup[g.perm[s]];
      std::vector<std::pair<int, QSqrt2>> sparse;
      for (int k = 0; k < a.dim; ++k)
        if (!row[k].is_zero()) sparse.emplace_back(k, g.sign == 1 ? row[k] : -row[k]);
      setter(moved, std::move(sparse));
    }
  };
  for (const auto& e : j.at("binary")) {
    std::vector<QSqrt2> row;
    for (const auto& x : e.at(2)) row.push_back(qsqrt2_from_json(x));
    expand(a.sigs[0], {e.at(0), e.at(1)}, row, [&](const std::vector<int>& t, auto&& sp) {
      a.set_bin(t[0], t[1], sp);
    });
  }
  for (const auto& e : j.at("ternary")) {
    std::vector<QSqrt2> row;
    for (const auto& x : e.at(3)) row.push_back(qsqrt2_from_json(x));
    expand(a.sigs[1], {e.at(0), e.at(1), e.at(2)}, row, [&](const std::vector<int>& t, auto&& sp) {
      a.set_ter(t[0], t[1], t[2], sp);
    });
  }
  return a;
}

inline ModAlgebra mod_algebra_from_json(const nlohmann::json& j) {
  FieldSpec fs = parse_field_spec(j.at("field").get<std::string>());
  if (!fs.modular) throw std::invalid_argument("expected a gfp algebra");
  ModAlgebra a;
  a.name = j.at("name");
  a.n = j.at("n");
  a.fld = GfpField(fs.p);
  a.root = fs.root ? *fs.root : 0;
  a.sigs = detail::sigs_from_json(j.at("signatures"));
  a.dim = j.at("dim").get<int>();
  a.bin.assign(static_cast<std::size_t>(a.dim) * a.dim * a.dim, 0);
  a.ter.assign(static_cast<std::size_t>(a.dim) * a.dim * a.dim * a.dim, 0);
  auto place = [&](const OperationSignature& sig, const std::vector<int>& tup,
                   const std::vector<std::uint64_t>& row, bool binary) {
    for (const auto& g : signed_group(sig)) {
      std::vector<int> t(tup.size());
      for (std::size_t s = 0; s < tup.size(); ++s) t[s] = tup[g.perm[s]];
      for (int k = 0; k < a.dim; ++k) {
        std::uint64_t v = g.sign == 1 ? row[k] : a.fld.neg(row[k]);
        if (binary)
          a.bin[(static_cast<std::size_t>(t[0]) * a.dim + t[1]) * a.dim + k] = v;
        else
          a.ter[((static_cast<std::size_t>(t[0]) * a.dim + t[1]) * a.dim + t[2]) * a.dim + k] = v;
      }
    }
  };
  for (const auto& e : j.at("binary"))
    place(a.sigs[0], {e.at(0), e.at(1)}, e.at(2).get<std::vector<std::uint64_t>>(), true);
  for (const auto& e : j.at("ternary"))
    place(a.sigs[1], {e.at(0), e.at(1), e.at(2)}, e.at(3).get<std::vector<std::uint64_t>>(), false);
  return a;
}

} // namespace idforge

#endif
