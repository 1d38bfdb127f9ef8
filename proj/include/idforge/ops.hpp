#ifndef IDFORGE_OPS_HPP
#define IDFORGE_OPS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace idforge {

/// A signed slot transposition: swapping arguments i and j multiplies the
/// monomial by sign.
struct SlotSwap {
  int i, j;  // 1-based slots
  int sign;  // +1 or -1
};

struct OperationSignature {
  std::string name;
  int arity;
  std::vector<SlotSwap> generators;
};

inline OperationSignature skew_binary() { return {"bracket", 2, {{1, 2, -1}}}; }
inline OperationSignature ly_ternary() { return {"angle", 3, {{1, 2, -1}}}; }
inline OperationSignature ljy_ternary() { return {"brace", 3, {{1, 3, +1}}}; }
inline OperationSignature symmetric_ternary() {
  return {"symbrace", 3, {{1, 2, +1}, {2, 3, +1}}};
}

/// Group of signed slot permutations generated by an operation's swaps.
struct SignedPerm {
  std::vector<int> perm;  // perm[slot] = source slot (0-based)
  int sign;
};

inline std::vector<SignedPerm> signed_group(const OperationSignature& op) {
  std::vector<SignedPerm> elems;
  std::vector<int> id(op.arity);
  std::iota(id.begin(), id.end(), 0);
  elems.push_back({id, +1});
  auto find = [&](const std::vector<int>& p) -> SignedPerm* {
    for (auto& e : elems)
      if (e.perm == p) return &e;
    return nullptr;
  };
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<SignedPerm> current = elems;
    for (const auto& e : current) {
      for (const auto& g : op.generators) {
        std::vector<int> p = e.perm;
        std::swap(p[g.i - 1], p[g.j - 1]);
        int s = e.sign * g.sign;
        if (SignedPerm* existing = find(p)) {
          if (existing->sign != s)
            throw std::invalid_argument("degenerate operation symmetry group");
        } else {
          elems.push_back({p, s});
          grew = true;
        }
      }
    }
  }
  return elems;
}

/// An association type: a planted tree with operation-labeled internal nodes,
/// in canonical form.  kids holds (degree, rank) of each child, rank being
/// the child's index among canonical types of its own degree.
struct TypeInfo {
  std::string repr;  // preorder string, e.g. "[[--]-]"
  int op;            // index into the context's operation list; -1 for leaf
  int degree;
  std::vector<std::pair<int, int>> kids;
};

/// A canonical multilinear monomial: association type plus the leaf variable
/// sequence in preorder (variables 1..d, each exactly once).
struct Monomial {
  int degree;
  int type;  // rank within the context's types of this degree
  std::vector<int> vars;

  bool operator<(const Monomial& o) const {
    if (degree != o.degree) return degree < o.degree;
    if (type != o.type) return type < o.type;
    return vars < o.vars;
  }
  bool operator==(const Monomial& o) const {
    return degree == o.degree && type == o.type && vars == o.vars;
  }
};

/// Raw (possibly non-canonical) monomial tree used as construction input.
struct MonoNode {
  int op = -1;  // -1 = leaf
  int var = 0;  // for leaves
  std::vector<MonoNode> kids;

  static MonoNode leaf(int v) {
    MonoNode n;
    n.var = v;
    return n;
  }
  static MonoNode apply(int op_index, std::vector<MonoNode> args) {
    MonoNode n;
    n.op = op_index;
    n.kids = std::move(args);
    return n;
  }
};

/// Enumeration and canonicalization context for a fixed operation list.
/// Types and monomial bases are cached per degree; the monomial list of
/// degree d labels matrix columns everywhere downstream.
class OpsContext {
public:
  explicit OpsContext(std::vector<OperationSignature> ops, std::string name = "custom")
      : ops_(std::move(ops)), name_(std::move(name)) {
    for (const auto& op : ops_) {
      if (op.arity != 2 && op.arity != 3)
        throw std::invalid_argument("only binary and ternary operations supported");
      groups_.push_back(signed_group(op));
    }
    types_.push_back({});  // degree 0 unused
    types_.push_back({TypeInfo{"-", -1, 1, {}}});
    type_index_.push_back({});
    type_index_.push_back({{"-", 0}});
  }

  const std::string& name() const { return name_; }
  const std::vector<OperationSignature>& ops() const { return ops_; }

  char open_bracket(int op) const { return ops_[op].arity == 2 ? '[' : '('; }
  char close_bracket(int op) const { return ops_[op].arity == 2 ? ']' : ')'; }

  const std::vector<TypeInfo>& types(int degree) {
    ensure_types(degree);
    return types_[degree];
  }

  int type_index(int degree, const std::string& repr) {
    ensure_types(degree);
    auto it = type_index_[degree].find(repr);
    if (it == type_index_[degree].end())
      throw std::logic_error("unknown association type " + repr);
    return it->second;
  }

  const std::vector<Monomial>& monomials(int degree) {
    ensure_monomials(degree);
    return monomial_basis_[degree];
  }

  int monomial_index(const Monomial& m) {
    ensure_monomials(m.degree);
    auto it = monomial_index_[m.degree].find(m);
    if (it == monomial_index_[m.degree].end())
      throw std::logic_error("monomial is not canonical");
    return it->second;
  }

  /// Canonical representative and accumulated sign of a raw monomial tree.
  std::pair<Monomial, int> canonicalize(const MonoNode& raw) {
    Canon c = canonicalize_node(raw);
    Monomial m;
    m.degree = c.degree;
    ensure_types(c.degree);
    m.type = type_index_[c.degree].at(c.repr);
    collect_vars(c.node, m.vars);
    return {std::move(m), c.sign};
  }

  /// Rebuild the tree form of a canonical monomial.
  MonoNode to_tree(const Monomial& m) {
    ensure_types(m.degree);
    std::size_t pos = 0;
    return build_tree(m.degree, m.type, m.vars, pos);
  }

private:
  struct Canon {
    MonoNode node;
    int sign;
    int degree;
    int rank;
    int minvar;
    std::string repr;
  };

  void ensure_types(int degree) {
    for (int d = static_cast<int>(types_.size()); d <= degree; ++d) {
      std::vector<TypeInfo> list;
      for (std::size_t opi = 0; opi < ops_.size(); ++opi) {
        int r = ops_[opi].arity;
        for (const auto& comp : compositions(d, r)) {
          // child rank tuples in ascending lexicographic order
          std::vector<int> idx(r, 0);
          bool any = true;
          for (int s = 0; s < r; ++s)
            if (types_[comp[s]].empty()) any = false;
          if (!any) continue;
          while (true) {
            std::vector<std::pair<int, int>> kids(r);
            for (int s = 0; s < r; ++s) kids[s] = {comp[s], idx[s]};
            if (is_canonical_kid_tuple(opi, kids)) {
              std::string repr(1, open_bracket(static_cast<int>(opi)));
              for (int s = 0; s < r; ++s) repr += types_[comp[s]][idx[s]].repr;
              repr += close_bracket(static_cast<int>(opi));
              list.push_back({repr, static_cast<int>(opi), d, kids});
            }
            int s = r - 1;
            while (s >= 0 && idx[s] + 1 == static_cast<int>(types_[comp[s]].size())) {
              idx[s] = 0;
              --s;
            }
            if (s < 0) break;
            ++idx[s];
          }
        }
      }
      types_.push_back(std::move(list));
      std::map<std::string, int> index;
      for (std::size_t i = 0; i < types_[d].size(); ++i) index[types_[d][i].repr] = static_cast<int>(i);
      type_index_.push_back(std::move(index));
    }
  }

  // Compositions of d into r positive parts, descending lexicographic order.
  static std::vector<std::vector<int>> compositions(int d, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r);
    struct Rec {
      int r;
      std::vector<std::vector<int>>& out;
      std::vector<int>& cur;
      void go(int slot, int remaining) {
        if (slot == r - 1) {
          cur[slot] = remaining;
          out.push_back(cur);
          return;
        }
        for (int v = remaining - (r - 1 - slot); v >= 1; --v) {
          cur[slot] = v;
          go(slot + 1, remaining - v);
        }
      }
    } rec{r, out, cur};
    rec.go(0, d);
    return out;
  }

  // A child tuple is canonical iff its (degree, rank) key sequence is
  // lexicographically maximal within its symmetry-group orbit.
  bool is_canonical_kid_tuple(std::size_t opi, const std::vector<std::pair<int, int>>& kids) const {
    for (const auto& g : groups_[opi]) {
      std::vector<std::pair<int, int>> moved(kids.size());
      for (std::size_t s = 0; s < kids.size(); ++s) moved[s] = kids[g.perm[s]];
      if (moved > kids) return false;
    }
    return true;
  }

  Canon canonicalize_node(const MonoNode& raw) {
    if (raw.op < 0) {
      if (raw.var < 1) throw std::invalid_argument("leaf variable must be >= 1");
      return {raw, +1, 1, 0, raw.var, "-"};
    }
    int r = ops_[raw.op].arity;
    if (static_cast<int>(raw.kids.size()) != r)
      throw std::invalid_argument("arity mismatch in monomial tree");
    std::vector<Canon> kids;
    int sign = +1, degree = 0;
    for (const auto& k : raw.kids) {
      kids.push_back(canonicalize_node(k));
      sign *= kids.back().sign;
      degree += kids.back().degree;
    }
    ensure_types(degree);
    // choose the group element maximizing the (degree, rank) key sequence,
    // breaking ties by the minimal per-slot least-variable sequence
    const SignedPerm* best = nullptr;
    std::vector<std::pair<int, int>> best_key;
    std::vector<int> best_mv;
    for (const auto& g : groups_[raw.op]) {
      std::vector<std::pair<int, int>> key(r);
      std::vector<int> mv(r);
      for (int s = 0; s < r; ++s) {
        key[s] = {kids[g.perm[s]].degree, kids[g.perm[s]].rank};
        mv[s] = kids[g.perm[s]].minvar;
      }
      if (!best || key > best_key || (key == best_key && mv < best_mv)) {
        best = &g;
        best_key = std::move(key);
        best_mv = std::move(mv);
      } else if (key == best_key && mv == best_mv && g.sign != best->sign) {
        throw std::logic_error("sign-ambiguous monomial (identically zero)");
      }
    }
    Canon out;
    out.node.op = raw.op;
    out.repr = std::string(1, open_bracket(raw.op));
    int minvar = kids[0].minvar;
    for (int s = 0; s < r; ++s) {
      const Canon& c = kids[best->perm[s]];
      out.node.kids.push_back(c.node);
      out.repr += c.repr;
      minvar = std::min(minvar, c.minvar);
    }
    out.repr += close_bracket(raw.op);
    out.sign = sign * best->sign;
    out.degree = degree;
    out.minvar = minvar;
    out.rank = type_index_[degree].at(out.repr);
    return out;
  }

  static void collect_vars(const MonoNode& n, std::vector<int>& out) {
    if (n.op < 0) {
      out.push_back(n.var);
      return;
    }
    for (const auto& k : n.kids) collect_vars(k, out);
  }

  MonoNode build_tree(int degree, int type, const std::vector<int>& vars, std::size_t& pos) {
    const TypeInfo& t = types_[degree][type];
    if (t.op < 0) return MonoNode::leaf(vars[pos++]);
    MonoNode n;
    n.op = t.op;
    for (const auto& [kd, kr] : t.kids) n.kids.push_back(build_tree(kd, kr, vars, pos));
    return n;
  }

  void ensure_monomials(int degree) {
    while (static_cast<int>(monomial_basis_.size()) <= degree) {
      int d = static_cast<int>(monomial_basis_.size());
      std::vector<Monomial> basis;
      if (d >= 1) {
        ensure_types(d);
        for (std::size_t ti = 0; ti < types_[d].size(); ++ti) {
          std::vector<int> vars(d);
          std::iota(vars.begin(), vars.end(), 1);
          do {
            Monomial cand{d, static_cast<int>(ti), vars};
            auto [canon, sign] = canonicalize(to_tree_raw(d, static_cast<int>(ti), vars));
            if (canon == cand && sign == +1) basis.push_back(cand);
          } while (std::next_permutation(vars.begin(), vars.end()));
        }
      }
      std::map<Monomial, int> index;
      for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
      monomial_basis_.push_back(std::move(basis));
      monomial_index_.push_back(std::move(index));
    }
  }

  MonoNode to_tree_raw(int degree, int type, const std::vector<int>& vars) {
    std::size_t pos = 0;
    return build_tree(degree, type, vars, pos);
  }

  std::vector<OperationSignature> ops_;
  std::string name_;
  std::vector<std::vector<SignedPerm>> groups_;
  std::vector<std::vector<TypeInfo>> types_;
  std::vector<std::map<std::string, int>> type_index_;
  std::vector<std::vector<Monomial>> monomial_basis_;
  std::vector<std::map<Monomial, int>> monomial_index_;
};

inline OpsContext ly_context() { return OpsContext({skew_binary(), ly_ternary()}, "ly"); }
inline OpsContext ljy_context() { return OpsContext({skew_binary(), ljy_ternary()}, "ljy"); }

} // namespace idforge

#endif
