#ifndef IDFORGE_POLY_HPP
#define IDFORGE_POLY_HPP

#include <gmpxx.h>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "idforge/ops.hpp"

namespace idforge {

/// Multilinear polynomial: exact rational coefficients over canonical
/// monomials of one degree.  Zero coefficients are never stored.
class MultilinearPoly {
public:
  explicit MultilinearPoly(int degree = 0) : degree_(degree) {}

  int degree() const { return degree_; }
  const std::map<Monomial, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Monomial& m, const mpq_class& c) {
    if (m.degree != degree_) throw std::invalid_argument("degree mismatch in polynomial");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (c != 0) terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultilinearPoly& operator+=(const MultilinearPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultilinearPoly& operator-=(const MultilinearPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MultilinearPoly& operator*=(const mpq_class& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  MultilinearPoly operator+(const MultilinearPoly& o) const {
    MultilinearPoly r = *this;
    return r += o;
  }
  MultilinearPoly operator-(const MultilinearPoly& o) const {
    MultilinearPoly r = *this;
    return r -= o;
  }
  MultilinearPoly operator-() const {
    MultilinearPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  bool operator==(const MultilinearPoly& o) const {
    return degree_ == o.degree_ && terms_ == o.terms_;
  }

  /// Monic normal form (leading coefficient 1); zero stays zero.  Used for
  /// deduplication up to scalar multiples.
  MultilinearPoly monic() const {
    MultilinearPoly r = *this;
    if (!r.terms_.empty()) {
      mpq_class lead = r.terms_.begin()->second;
      for (auto& [m, c] : r.terms_) c /= lead;
    }
    return r;
  }

  /// Squared Euclidean length of the coefficient vector.
  mpq_class squared_length() const {
    mpq_class s = 0;
    for (const auto& [m, c] : terms_) s += c * c;
    return s;
  }

  /// Checks that every monomial uses variables 1..d exactly once.
  bool is_multilinear() const {
    for (const auto& [m, c] : terms_) {
      std::vector<int> sorted = m.vars;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < degree_; ++i)
        if (sorted[i] != i + 1) return false;
    }
    return true;
  }

private:
  int degree_;
  std::map<Monomial, mpq_class> terms_;
};

/// Expression under construction: a formal sum of raw monomial trees.
/// Finalized into a MultilinearPoly via canonicalization.
struct Expr {
  std::vector<std::pair<mpq_class, MonoNode>> terms;

  Expr operator+(const Expr& o) const {
    Expr r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r;
  }
  Expr operator-(const Expr& o) const {
    Expr r = *this;
    for (const auto& [c, n] : o.terms) r.terms.emplace_back(-c, n);
    return r;
  }
  Expr operator-() const {
    Expr r;
    for (const auto& [c, n] : terms) r.terms.emplace_back(-c, n);
    return r;
  }
};

inline Expr operator*(const mpq_class& s, const Expr& e) {
  Expr r;
  for (const auto& [c, n] : e.terms) r.terms.emplace_back(s * c, n);
  return r;
}

inline Expr ev(int var) { return Expr{{{1, MonoNode::leaf(var)}}}; }

/// Apply operation op_index to expression arguments, distributing over sums.
inline Expr eop(int op_index, const std::vector<Expr>& args) {
  Expr out;
  std::vector<std::size_t> idx(args.size(), 0);
  while (true) {
    mpq_class c = 1;
    std::vector<MonoNode> kids;
    for (std::size_t s = 0; s < args.size(); ++s) {
      c *= args[s].terms[idx[s]].first;
      kids.push_back(args[s].terms[idx[s]].second);
    }
    out.terms.emplace_back(c, MonoNode::apply(op_index, std::move(kids)));
    std::size_t s = args.size();
    while (s > 0 && idx[s - 1] + 1 == args[s - 1].terms.size()) idx[--s] = 0;
    if (s == 0) break;
    ++idx[s - 1];
  }
  return out;
}

inline Expr eb(const Expr& x, const Expr& y) { return eop(0, {x, y}); }
inline Expr et(const Expr& x, const Expr& y, const Expr& z) { return eop(1, {x, y, z}); }

inline MultilinearPoly finalize(OpsContext& ctx, const Expr& e, int degree) {
  MultilinearPoly p(degree);
  for (const auto& [c, n] : e.terms) {
    auto [mono, sign] = ctx.canonicalize(n);
    if (mono.degree != degree) throw std::invalid_argument("expression degree mismatch");
    p.add_term(mono, sign * c);
  }
  if (!p.is_multilinear()) throw std::invalid_argument("expression is not multilinear");
  return p;
}

/// Parse a monomial written in the bracket notation of the operation list:
/// "[x,y]" binary, "(x,y,z)" or "{x,y,z}" ternary; variables a..z map to
/// 1..26.  Whitespace ignored.
inline MonoNode parse_monomial(const std::string& s) {
  std::size_t pos = 0;
  std::function<void()> skip = [&] {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == ',')) ++pos;
  };
  std::function<MonoNode()> term = [&]() -> MonoNode {
    skip();
    if (pos >= s.size()) throw std::invalid_argument("truncated monomial: " + s);
    char c = s[pos];
    if (c >= 'a' && c <= 'z') {
      ++pos;
      return MonoNode::leaf(c - 'a' + 1);
    }
    int arity;
    char close;
    int op;
    if (c == '[') {
      arity = 2;
      close = ']';
      op = 0;
    } else if (c == '(' || c == '{') {
      arity = 3;
      close = c == '(' ? ')' : '}';
      op = 1;
    } else {
      throw std::invalid_argument("bad character in monomial: " + s);
    }
    ++pos;
    std::vector<MonoNode> kids;
    for (int k = 0; k < arity; ++k) kids.push_back(term());
    skip();
    if (pos >= s.size() || s[pos] != close)
      throw std::invalid_argument("unbalanced brackets in monomial: " + s);
    ++pos;
    return MonoNode::apply(op, std::move(kids));
  };
  MonoNode n = term();
  skip();
  if (pos != s.size()) throw std::invalid_argument("trailing input in monomial: " + s);
  return n;
}

/// Build a polynomial from (coefficient, monomial-string) pairs.
inline MultilinearPoly poly_from_terms(OpsContext& ctx, int degree,
                                       const std::vector<std::pair<long, std::string>>& terms) {
  Expr e;
  for (const auto& [c, str] : terms) e.terms.emplace_back(mpq_class(c), parse_monomial(str));
  return finalize(ctx, e, degree);
}

/// Relabel variables by sigma (1-based: x_i -> x_{sigma[i-1]}) and
/// re-canonicalize, folding signs into coefficients.
inline MultilinearPoly apply_permutation(OpsContext& ctx, const MultilinearPoly& f,
                                         const std::vector<int>& sigma) {
  MultilinearPoly out(f.degree());
  for (const auto& [m, c] : f.terms()) {
    MonoNode t = ctx.to_tree(m);
    std::function<void(MonoNode&)> relabel = [&](MonoNode& n) {
      if (n.op < 0) {
        n.var = sigma[n.var - 1];
        return;
      }
      for (auto& k : n.kids) relabel(k);
    };
    relabel(t);
    auto [mono, sign] = ctx.canonicalize(t);
    out.add_term(mono, sign * c);
  }
  return out;
}

namespace detail {

// Replace leaf x_i by the given subtree (whose own leaves are already final).
inline MonoNode substitute_var(const MonoNode& n, int var, const MonoNode& sub) {
  if (n.op < 0) return n.var == var ? sub : n;
  MonoNode out;
  out.op = n.op;
  for (const auto& k : n.kids) out.kids.push_back(substitute_var(k, var, sub));
  return out;
}

} // namespace detail

/// One lifting step of f through operation op_index: d substitution liftings
/// (x_i -> op(x_i, new vars)) plus arity embedding liftings (f in slot j, new
/// variables elsewhere ascending).  Nonzero duplicates up to scalar are
/// emitted once.
inline std::vector<MultilinearPoly> lift_one_step(OpsContext& ctx, const MultilinearPoly& f,
                                                  int op_index) {
  int d = f.degree();
  int r = ctx.ops()[op_index].arity;
  int D = d + r - 1;
  std::vector<MultilinearPoly> out;
  std::set<std::map<Monomial, mpq_class>> seen;
  auto emit = [&](const MultilinearPoly& p) {
    if (p.is_zero()) {
      out.push_back(p);
      return;
    }
    MultilinearPoly m1 = p.monic();
    if (seen.insert(m1.terms()).second) out.push_back(p);
  };
  // substitution liftings
  for (int i = 1; i <= d; ++i) {
    MultilinearPoly lifted(D);
    std::vector<MonoNode> args{MonoNode::leaf(i)};
    for (int k = 1; k < r; ++k) args.push_back(MonoNode::leaf(d + k));
    MonoNode sub = MonoNode::apply(op_index, args);
    for (const auto& [m, c] : f.terms()) {
      MonoNode t = detail::substitute_var(ctx.to_tree(m), i, sub);
      auto [mono, sign] = ctx.canonicalize(t);
      lifted.add_term(mono, sign * c);
    }
    emit(lifted);
  }
  // embedding liftings
  for (int j = 1; j <= r; ++j) {
    MultilinearPoly lifted(D);
    for (const auto& [m, c] : f.terms()) {
      std::vector<MonoNode> args;
      int next = d + 1;
      for (int k = 1; k <= r; ++k) {
        if (k == j)
          args.push_back(ctx.to_tree(m));
        else
          args.push_back(MonoNode::leaf(next++));
      }
      auto [mono, sign] = ctx.canonicalize(MonoNode::apply(op_index, args));
      lifted.add_term(mono, sign * c);
    }
    emit(lifted);
  }
  return out;
}

/// All liftings of f to degree D: every composition of single-step liftings
/// whose step sizes (arity - 1) sum to D - degree(f), deduplicated by monic
/// canonical form.
inline std::vector<MultilinearPoly> liftings(OpsContext& ctx, const MultilinearPoly& f, int D) {
  if (D < f.degree()) throw std::invalid_argument("target degree below polynomial degree");
  std::map<int, std::vector<MultilinearPoly>> by_degree;
  by_degree[f.degree()] = {f};
  for (int e = f.degree() + 1; e <= D; ++e) {
    std::vector<MultilinearPoly> level;
    std::set<std::map<Monomial, mpq_class>> seen;
    bool have_zero = false;
    auto emit = [&](const MultilinearPoly& p) {
      if (p.is_zero()) {
        if (!have_zero) {
          level.push_back(p);
          have_zero = true;
        }
        return;
      }
      if (seen.insert(p.monic().terms()).second) level.push_back(p);
    };
    for (std::size_t opi = 0; opi < ctx.ops().size(); ++opi) {
      int source = e - (ctx.ops()[opi].arity - 1);
      auto it = by_degree.find(source);
      if (it == by_degree.end()) continue;
      for (const auto& g : it->second)
        for (const auto& lifted : lift_one_step(ctx, g, static_cast<int>(opi))) emit(lifted);
    }
    by_degree[e] = std::move(level);
  }
  return by_degree[D];
}

/// Permutations sigma of {0..n-1} whose restriction to each block of the
/// composition is increasing; slot k receives element sigma[k] of the
/// ordered ground set.
inline std::vector<std::vector<int>> shuffle_permutations(const std::vector<int>& comp) {
  int n = 0;
  for (int b : comp) n += b;
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    int pos = 0;
    for (int b : comp) {
      for (int k = 1; k < b && ok; ++k)
        if (sigma[pos + k - 1] > sigma[pos + k]) ok = false;
      pos += b;
      if (!ok) break;
    }
    if (ok) out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

/// Sum of the template over all shuffles of the listed variables: in each
/// summand, shuffled_vars[k] is replaced by shuffled_vars[sigma[k]].  When
/// `signed_sum` is set each summand is weighted by the sign of sigma.
inline MultilinearPoly shuffle_sum(OpsContext& ctx, const std::vector<int>& comp,
                                   const MultilinearPoly& templ,
                                   const std::vector<int>& shuffled_vars,
                                   bool signed_sum = false) {
  MultilinearPoly out(templ.degree());
  std::vector<int> identity(templ.degree());
  std::iota(identity.begin(), identity.end(), 1);
  for (const auto& sigma : shuffle_permutations(comp)) {
    std::vector<int> relabel = identity;
    for (std::size_t k = 0; k < shuffled_vars.size(); ++k)
      relabel[shuffled_vars[k] - 1] = shuffled_vars[sigma[k]];
    MultilinearPoly term = apply_permutation(ctx, templ, relabel);
    if (signed_sum) {
      int inversions = 0;
      for (std::size_t i = 0; i < sigma.size(); ++i)
        for (std::size_t j = i + 1; j < sigma.size(); ++j)
          if (sigma[i] > sigma[j]) ++inversions;
      if (inversions % 2 != 0) term *= mpq_class(-1);
    }
    out += term;
  }
  return out;
}

inline nlohmann::json poly_to_json(OpsContext& ctx, const MultilinearPoly& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : f.terms()) {
    nlohmann::json t;
    t["type"] = ctx.types(m.degree)[m.type].repr;
    t["perm"] = m.vars;
    if (c.get_den() == 1)
      t["coeff"] = static_cast<long long>(c.get_num().get_si());
    else
      t["coeff"] = c.get_str();
    terms.push_back(std::move(t));
  }
  return nlohmann::json{{"degree", f.degree()}, {"ops", ctx.name()}, {"terms", std::move(terms)}};
}

inline MultilinearPoly poly_from_json(OpsContext& ctx, const nlohmann::json& j) {
  MultilinearPoly f(j.at("degree").get<int>());
  for (const auto& t : j.at("terms")) {
    Monomial m;
    m.degree = f.degree();
    m.type = ctx.type_index(f.degree(), t.at("type").get<std::string>());
    m.vars = t.at("perm").get<std::vector<int>>();
    mpq_class c;
    if (t.at("coeff").is_string())
      c = mpq_class(t.at("coeff").get<std::string>());
    else
      c = mpq_class(t.at("coeff").get<long>());
    c.canonicalize();
    f.add_term(m, c);
  }
  return f;
}

} // namespace idforge

#endif
