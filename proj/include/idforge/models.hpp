#ifndef IDFORGE_MODELS_HPP
#define IDFORGE_MODELS_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "idforge/algebra.hpp"
#include "idforge/matrix.hpp"
#include "idforge/qsqrt2.hpp"

namespace idforge {

using QMatrix = ExactMatrix<QSqrt2Field>;

namespace detail {

inline QMatrix qzero(std::size_t r, std::size_t c) { return QMatrix(QSqrt2Field{}, r, c); }

inline QMatrix mat_mul(const QMatrix& A, const QMatrix& B) {
  QMatrix C = qzero(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      if (A.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
    }
  return C;
}

inline QMatrix mat_sub(const QMatrix& A, const QMatrix& B) {
  QMatrix C = A;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) C.at(i, j) -= B.at(i, j);
  return C;
}

inline QMatrix mat_add(const QMatrix& A, const QMatrix& B) {
  QMatrix C = A;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) C.at(i, j) += B.at(i, j);
  return C;
}

inline QMatrix mat_comm(const QMatrix& A, const QMatrix& B) {
  return mat_sub(mat_mul(A, B), mat_mul(B, A));
}

inline QMatrix mat_scale(const QSqrt2& s, const QMatrix& A) {
  QMatrix C = A;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) C.at(i, j) *= s;
  return C;
}

inline QMatrix mat_transpose(const QMatrix& A) {
  QMatrix C = qzero(A.cols(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) C.at(j, i) = A.at(i, j);
  return C;
}

inline QSqrt2 trace_prod(const QMatrix& A, const QMatrix& B) {
  QSqrt2 t;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) t += A.at(i, j) * B.at(j, i);
  return t;
}

inline QMatrix mat_inverse(const QMatrix& A) {
  QSqrt2Field f;
  std::size_t n = A.rows();
  QMatrix aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, n + i) = f.one();
  }
  if (aug.rref() != n) throw std::domain_error("mat_inverse: singular matrix");
  QMatrix inv = qzero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

inline std::vector<std::pair<int, QSqrt2>> sparsify(const std::vector<QSqrt2>& v) {
  std::vector<std::pair<int, QSqrt2>> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out.emplace_back(static_cast<int>(k), v[k]);
  return out;
}

} // namespace detail

/// Sparse skew matrix (all nonzero entries listed explicitly).
struct SparseSkew {
  int size = 0;
  std::vector<std::tuple<int, int, QSqrt2>> entries;

  QMatrix dense() const {
    QMatrix m = detail::qzero(size, size);
    for (const auto& [r, c, v] : entries) m.at(r, c) += v;  // entries may repeat a position
    return m;
  }
};

inline QSqrt2 trace_prod_sparse(const SparseSkew& A, const SparseSkew& B) {
  std::map<std::pair<int, int>, QSqrt2> bmap;
  for (const auto& [r, c, v] : B.entries) bmap[{r, c}] += v;
  QSqrt2 t;
  for (const auto& [r, c, v] : A.entries) {
    auto it = bmap.find({c, r});
    if (it != bmap.end()) t += v * it->second;
  }
  return t;
}

/// The orthonormal basis of the symmetric n x n matrices under the trace
/// form: E_ii (indices 0..n-1), then (1/sqrt2)(E_ij + E_ji) for i < j in
/// lexicographic order.
inline std::vector<QMatrix> symmetric_matrix_basis(int n) {
  std::vector<QMatrix> H;
  QSqrt2 half_sqrt2(mpq_class(0), mpq_class(1, 2));  // sqrt2/2 = 1/sqrt2
  for (int i = 0; i < n; ++i) {
    QMatrix m = detail::qzero(n, n);
    m.at(i, i) = QSqrt2(1);
    H.push_back(std::move(m));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      QMatrix m = detail::qzero(n, n);
      m.at(i, j) = half_sqrt2;
      m.at(j, i) = half_sqrt2;
      H.push_back(std::move(m));
    }
  return H;
}

/// Coordinates of a symmetric n x n matrix in symmetric_matrix_basis(n).
inline std::vector<QSqrt2> symmetric_coords(const QMatrix& S) {
  int n = static_cast<int>(S.rows());
  std::vector<QSqrt2> c;
  c.reserve(n * (n + 1) / 2);
  for (int i = 0; i < n; ++i) c.push_back(S.at(i, i));
  QSqrt2 sqrt2 = QSqrt2::sqrt2();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c.push_back(sqrt2 * S.at(i, j));
  return c;
}

/// so(n) embedded in so(N) acting on symmetric matrices, with M = L-perp.
/// U (the annihilator of the identity matrix, isomorphic to so(N-1)) is
/// realized as skew N x N matrices in the coordinates of the orthonormal
/// symmetric basis, spanned by w_a w_b^t - w_b w_a^t over a rational basis
/// {w} of the hyperplane orthogonal to the coordinates of I_n.
struct MatrixModel {
  int n = 0, N = 0;
  int dimL = 0, dimU = 0, dimM = 0;
  std::vector<QMatrix> H;                    // n x n symmetric, orthonormal
  std::vector<std::pair<int, int>> lpairs;   // (i,j) of E_ij - E_ji, i < j
  std::vector<SparseSkew> Limage;            // N x N, the action on H
  std::vector<SparseSkew> Ubasis;
  std::vector<std::vector<QSqrt2>> Mcoords;  // dimM rows over Ubasis
  std::vector<QSqrt2> iota;                  // coords of I_n

  QMatrix dense_L(int i) const { return Limage[i].dense(); }
  QMatrix dense_M(int i) const {
    QMatrix m = detail::qzero(N, N);
    for (int u = 0; u < dimU; ++u) {
      if (Mcoords[i][u].is_zero()) continue;
      for (const auto& [r, c, v] : Ubasis[u].entries) m.at(r, c) += Mcoords[i][u] * v;
    }
    return m;
  }
};

inline MatrixModel build_matrix_model(int n) {
  if (n < 3) throw std::invalid_argument("build_matrix_model: n must be at least 3");
  MatrixModel mm;
  mm.n = n;
  mm.N = n * (n + 1) / 2;
  int N = mm.N;
  mm.H = symmetric_matrix_basis(n);
  mm.iota.assign(N, QSqrt2());
  for (int i = 0; i < n; ++i) mm.iota[i] = QSqrt2(1);

  // action of E_ij - E_ji on the symmetric basis, as sparse skew N x N
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      QMatrix A = detail::qzero(n, n);
      A.at(i, j) = QSqrt2(1);
      A.at(j, i) = QSqrt2(-1);
      SparseSkew rho;
      rho.size = N;
      for (int k = 0; k < N; ++k) {
        auto col = symmetric_coords(detail::mat_comm(A, mm.H[k]));
        for (int r = 0; r < N; ++r)
          if (!col[r].is_zero()) rho.entries.emplace_back(r, k, col[r]);
      }
      mm.lpairs.emplace_back(i, j);
      mm.Limage.push_back(std::move(rho));
    }
  mm.dimL = static_cast<int>(mm.Limage.size());

  // rational basis of the hyperplane orthogonal to iota: e_a - e_{a+1} on
  // the diagonal slots, plain e_k elsewhere
  std::vector<std::vector<std::pair<int, QSqrt2>>> w;
  for (int a = 0; a + 1 < n; ++a)
    w.push_back({{a, QSqrt2(1)}, {a + 1, QSqrt2(-1)}});
  for (int k = n; k < N; ++k) w.push_back({{k, QSqrt2(1)}});

  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b) {
      SparseSkew X;
      X.size = N;
      for (const auto& [r, vr] : w[a])
        for (const auto& [c, vc] : w[b]) X.entries.emplace_back(r, c, vr * vc);
      for (const auto& [r, vr] : w[b])
        for (const auto& [c, vc] : w[a]) X.entries.emplace_back(r, c, -(vr * vc));
      mm.Ubasis.push_back(std::move(X));
    }
  mm.dimU = static_cast<int>(mm.Ubasis.size());

  // M = nullspace of the trace-form pairing of U against the image of L
  QSqrt2Field f;
  QMatrix P(f, mm.dimL, mm.dimU);
  for (int l = 0; l < mm.dimL; ++l)
    for (int u = 0; u < mm.dimU; ++u) P.at(l, u) = trace_prod_sparse(mm.Limage[l], mm.Ubasis[u]);
  std::size_t rank = P.rref();
  std::vector<int> pivot_col(rank);
  std::vector<bool> is_pivot(mm.dimU, false);
  {
    std::size_t col = 0;
    for (std::size_t r = 0; r < rank; ++r) {
      while (P.at(r, col).is_zero()) ++col;
      pivot_col[r] = static_cast<int>(col);
      is_pivot[col] = true;
    }
  }
  for (int free = 0; free < mm.dimU; ++free) {
    if (is_pivot[free]) continue;
    std::vector<QSqrt2> v(mm.dimU);
    v[free] = QSqrt2(1);
    for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -P.at(r, free);
    mm.Mcoords.push_back(std::move(v));
  }
  mm.dimM = static_cast<int>(mm.Mcoords.size());
  return mm;
}

/// Dense M and L bases together with the inverse Gram matrices needed for
/// the orthogonal projections onto L and M inside U.
struct ModelProjector {
  int N = 0;
  std::vector<QMatrix> L, M;
  QMatrix GLinv, GMinv;

  explicit ModelProjector(const MatrixModel& mm)
      : N(mm.N), GLinv(QSqrt2Field{}, 0, 0), GMinv(QSqrt2Field{}, 0, 0) {
    for (int i = 0; i < mm.dimL; ++i) L.push_back(mm.dense_L(i));
    for (int i = 0; i < mm.dimM; ++i) M.push_back(mm.dense_M(i));
    QSqrt2Field f;
    QMatrix GL(f, L.size(), L.size()), GM(f, M.size(), M.size());
    for (std::size_t i = 0; i < L.size(); ++i)
      for (std::size_t j = 0; j < L.size(); ++j) GL.at(i, j) = detail::trace_prod(L[i], L[j]);
    for (std::size_t i = 0; i < M.size(); ++i)
      for (std::size_t j = 0; j < M.size(); ++j) GM.at(i, j) = detail::trace_prod(M[i], M[j]);
    GLinv = detail::mat_inverse(GL);
    GMinv = detail::mat_inverse(GM);
  }

  std::vector<QSqrt2> pM_coords(const QMatrix& X) const {
    std::vector<QSqrt2> t(M.size());
    for (std::size_t i = 0; i < M.size(); ++i) t[i] = detail::trace_prod(X, M[i]);
    return GMinv.apply(t);
  }

  std::vector<QSqrt2> pL_coords(const QMatrix& X) const {
    std::vector<QSqrt2> t(L.size());
    for (std::size_t i = 0; i < L.size(); ++i) t[i] = detail::trace_prod(X, L[i]);
    return GLinv.apply(t);
  }

  QMatrix pL(const QMatrix& X) const {
    auto c = pL_coords(X);
    QMatrix out = detail::qzero(N, N);
    for (std::size_t i = 0; i < L.size(); ++i)
      if (!c[i].is_zero()) out = detail::mat_add(out, detail::mat_scale(c[i], L[i]));
    return out;
  }

  QMatrix pM(const QMatrix& X) const {
    auto c = pM_coords(X);
    QMatrix out = detail::qzero(N, N);
    for (std::size_t i = 0; i < M.size(); ++i)
      if (!c[i].is_zero()) out = detail::mat_add(out, detail::mat_scale(c[i], M[i]));
    return out;
  }
};

namespace detail {

// shared binary table [A,B] = p_M([A,B]_U) for the LY and LJY constructions
inline void fill_projection_binary(QAlgebra& alg, const ModelProjector& pr) {
  int dim = alg.dim;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      auto row = sparsify(pr.pM_coords(mat_comm(pr.M[i], pr.M[j])));
      alg.set_bin(i, j, row);
      for (auto& [k, v] : row) v = -v;
      alg.set_bin(j, i, row);
    }
}

} // namespace detail

/// LY algebra on M: [A,B] = p_M([A,B]_U), <A,B,C> = p_M([p_L([A,B]_U), C]_U).
inline QAlgebra build_LY(int n) {
  MatrixModel mm = build_matrix_model(n);
  ModelProjector pr(mm);
  QAlgebra alg;
  alg.name = "ly-" + std::to_string(n);
  alg.n = n;
  alg.sigs = {skew_binary(), ly_ternary()};
  alg.init(mm.dimM);
  detail::fill_projection_binary(alg, pr);
  for (int i = 0; i < alg.dim; ++i)
    for (int j = i + 1; j < alg.dim; ++j) {
      QMatrix P = pr.pL(detail::mat_comm(pr.M[i], pr.M[j]));
      for (int k = 0; k < alg.dim; ++k) {
        auto row = detail::sparsify(pr.pM_coords(detail::mat_comm(P, pr.M[k])));
        alg.set_ter(i, j, k, row);
        for (auto& [t, v] : row) v = -v;
        alg.set_ter(j, i, k, row);
      }
    }
  return alg;
}

/// LJY algebra on M: same binary product, ternary from the projected Jordan
/// triple product <A,B,C> = p_M(ABC + CBA).
inline QAlgebra build_LJY(int n) {
  MatrixModel mm = build_matrix_model(n);
  ModelProjector pr(mm);
  QAlgebra alg;
  alg.name = "ljy-" + std::to_string(n);
  alg.n = n;
  alg.sigs = {skew_binary(), ljy_ternary()};
  alg.init(mm.dimM);
  detail::fill_projection_binary(alg, pr);
  for (int i = 0; i < alg.dim; ++i) {
    for (int j = 0; j < alg.dim; ++j) {
      QMatrix P = detail::mat_mul(pr.M[i], pr.M[j]);
      for (int k = i; k < alg.dim; ++k) {
        // ABC + CBA = T - T^t for skew A, B, C with T = ABC
        QMatrix T = detail::mat_mul(P, pr.M[k]);
        auto row = detail::sparsify(pr.pM_coords(detail::mat_sub(T, detail::mat_transpose(T))));
        alg.set_ter(i, j, k, row);
        if (k != i) alg.set_ter(k, j, i, std::move(row));
      }
    }
  }
  return alg;
}

// ---------------------------------------------------------------------------
// Transvection model: 7-dimensional algebra on x^{6-i} y^i.

namespace detail {

// homogeneous bivariate polynomial of degree size()-1; index i holds the
// coefficient of x^{deg-i} y^i
using HPoly = std::vector<mpq_class>;

inline HPoly hp_dx(const HPoly& p) {
  long g = static_cast<long>(p.size()) - 1;
  if (g <= 0) return {mpq_class(0)};
  HPoly q(g);
  for (long i = 0; i < g; ++i) q[i] = (g - i) * p[i];
  return q;
}

inline HPoly hp_dy(const HPoly& p) {
  long g = static_cast<long>(p.size()) - 1;
  if (g <= 0) return {mpq_class(0)};
  HPoly q(g);
  for (long i = 0; i < g; ++i) q[i] = (i + 1) * p[i + 1];
  return q;
}

inline HPoly hp_deriv(HPoly p, int nx, int ny) {
  for (int t = 0; t < nx; ++t) p = hp_dx(p);
  for (int t = 0; t < ny; ++t) p = hp_dy(p);
  return p;
}

inline HPoly hp_mul(const HPoly& a, const HPoly& b) {
  HPoly c(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline HPoly hp_transvection(const HPoly& m1, const HPoly& m2, int k) {
  long binom = 1;
  HPoly out;
  for (int i = 0; i <= k; ++i) {
    HPoly term = hp_mul(hp_deriv(m1, k - i, i), hp_deriv(m2, i, k - i));
    long c = (i % 2 == 0 ? binom : -binom);
    if (out.empty()) out.assign(term.size(), mpq_class(0));
    for (std::size_t t = 0; t < term.size(); ++t) out[t] += c * term[t];
    binom = binom * (k - i) / (i + 1);
  }
  return out;
}

// (l m)_1 = (1/12)(dl/dx dm/dy - dl/dy dm/dx) for l of degree 2, m of degree 6
inline HPoly hp_bracket1(const HPoly& l, const HPoly& m) {
  HPoly a = hp_mul(hp_dx(l), hp_dy(m));
  HPoly b = hp_mul(hp_dy(l), hp_dx(m));
  HPoly out(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) out[t] = (a[t] - b[t]) / 12;
  return out;
}

} // namespace detail

/// Transvection oracle, exposed for tests: (m1 m2)_k by symbolic
/// differentiation on homogeneous polynomials in x, y.
inline std::vector<mpq_class> transvection(const std::vector<mpq_class>& m1,
                                           const std::vector<mpq_class>& m2, int k) {
  return detail::hp_transvection(m1, m2, k);
}

/// 7-dimensional LY algebra on the degree-6 binary forms x^{6-i} y^i with
/// m1.m2 = 10 (m1 m2)_3 and {m1,m2,m3} = 90 ((m1 m2)_5 m3)_1, where the
/// transvections carry the classical normalization
/// (fg)_k = ((m-k)!(n-k)!)/(m! n!) * sum_i ... for forms of degrees m, n
/// (the same prefactors as the 1/4 and 1/12 in the displayed first
/// transvections).  With raw transvections the ambient bracket fails the
/// Jacobi identity and the products fail the LY axioms; for degree-6 forms
/// the factors are 1/518400 at k=5 and 1/14400 at k=3.
inline QAlgebra build_LY3_transvection() {
  QAlgebra alg;
  alg.name = "ly3-transvection";
  alg.n = 0;
  alg.sigs = {skew_binary(), ly_ternary()};
  alg.init(7);
  auto basis = [](int i) {
    detail::HPoly p(7, mpq_class(0));
    p[i] = 1;
    return p;
  };
  auto coords = [](const detail::HPoly& p) {
    std::vector<std::pair<int, QSqrt2>> out;
    for (int t = 0; t < 7; ++t)
      if (p[t] != 0) out.emplace_back(t, QSqrt2(p[t]));
    return out;
  };
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      detail::HPoly prod = detail::hp_transvection(basis(i), basis(j), 3);
      for (auto& c : prod) c *= mpq_class(10, 14400);
      auto row = coords(prod);
      alg.set_bin(i, j, row);
      for (auto& [k, v] : row) v = -v;
      alg.set_bin(j, i, row);
    }
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      detail::HPoly l = detail::hp_transvection(basis(i), basis(j), 5);
      for (int k = 0; k < 7; ++k) {
        detail::HPoly t = detail::hp_bracket1(l, basis(k));
        for (auto& c : t) c *= mpq_class(90, 518400);
        auto row = coords(t);
        alg.set_ter(i, j, k, row);
        for (auto& [s, v] : row) v = -v;
        alg.set_ter(j, i, k, row);
      }
    }
  return alg;
}

// ---------------------------------------------------------------------------
// Tensor model: 30-dimensional algebra on (so3 x Sym0) + (Sym0 x so3).

namespace detail {

// basis of so(3): E12-E21, E13-E31, E23-E32
inline QMatrix so3_elem(int p) {
  static const int rc[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  QMatrix m = qzero(3, 3);
  m.at(rc[p][0], rc[p][1]) = QSqrt2(1);
  m.at(rc[p][1], rc[p][0]) = QSqrt2(-1);
  return m;
}

// basis of traceless symmetric 3x3: E11-E22, E22-E33, E12+E21, E13+E31, E23+E32
inline QMatrix sym0_elem(int q) {
  QMatrix m = qzero(3, 3);
  if (q == 0) {
    m.at(0, 0) = QSqrt2(1);
    m.at(1, 1) = QSqrt2(-1);
  } else if (q == 1) {
    m.at(1, 1) = QSqrt2(1);
    m.at(2, 2) = QSqrt2(-1);
  } else {
    static const int rc[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    m.at(rc[q - 2][0], rc[q - 2][1]) = QSqrt2(1);
    m.at(rc[q - 2][1], rc[q - 2][0]) = QSqrt2(1);
  }
  return m;
}

inline std::vector<QSqrt2> so3_coords(const QMatrix& X) {
  return {X.at(0, 1), X.at(0, 2), X.at(1, 2)};
}

inline std::vector<QSqrt2> sym0_coords(const QMatrix& Y) {
  return {Y.at(0, 0), Y.at(0, 0) + Y.at(1, 1), Y.at(0, 1), Y.at(0, 2), Y.at(1, 2)};
}

inline QSqrt2 mat_trace(const QMatrix& A) {
  QSqrt2 t;
  for (std::size_t i = 0; i < A.rows(); ++i) t += A.at(i, i);
  return t;
}

// anticommutator minus its trace part: ab + ba - (2/3) tr(ab) I
inline QMatrix jordan0(const QMatrix& A, const QMatrix& B) {
  QMatrix S = mat_add(mat_mul(A, B), mat_mul(B, A));
  QSqrt2 t = mat_trace(S) * QSqrt2(mpq_class(1, 3));
  for (int i = 0; i < 3; ++i) S.at(i, i) -= t;
  return S;
}

// accumulate scale * (skew X tensor sym0 Y) into the first (so3 x Sym0) sector
inline void add_U(std::vector<QSqrt2>& out, const QSqrt2& scale, const QMatrix& X,
                  const QMatrix& Y) {
  auto xc = so3_coords(X);
  auto yc = sym0_coords(Y);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 5; ++q) out[p * 5 + q] += scale * xc[p] * yc[q];
}

// accumulate scale * (sym0 Y tensor skew X) into the second (Sym0 x so3) sector
inline void add_Up(std::vector<QSqrt2>& out, const QSqrt2& scale, const QMatrix& Y,
                   const QMatrix& X) {
  auto yc = sym0_coords(Y);
  auto xc = so3_coords(X);
  for (int q = 0; q < 5; ++q)
    for (int p = 0; p < 3; ++p) out[15 + q * 3 + p] += scale * yc[q] * xc[p];
}

} // namespace detail

/// 30-dimensional LY algebra on (so3 tensor Sym0(3)) + (Sym0(3) tensor so3)
/// with the six explicit product families; mixed-sector ternary products
/// vanish.
inline QAlgebra build_LY4_tensor() {
  using namespace detail;
  QAlgebra alg;
  alg.name = "ly4-tensor";
  alg.n = 0;
  alg.sigs = {skew_binary(), ly_ternary()};
  alg.init(30);
  QSqrt2 half(mpq_class(1, 2)), third(mpq_class(1, 3));

  // first factor and second factor of a basis element, by sector
  auto first = [&](int idx) { return idx < 15 ? so3_elem(idx / 5) : sym0_elem((idx - 15) / 3); };
  auto second = [&](int idx) { return idx < 15 ? sym0_elem(idx % 5) : so3_elem((idx - 15) % 3); };
  auto in_U = [](int idx) { return idx < 15; };

  auto binary_direct = [&](int i, int j) -> std::vector<QSqrt2> {
    std::vector<QSqrt2> out(30);
    QMatrix A = first(i), S = second(i), B = first(j), T = second(j);
    if (in_U(i) == in_U(j)) {
      add_U(out, half, mat_comm(A, B), jordan0(S, T));
      add_Up(out, half, jordan0(A, B), mat_comm(S, T));
    } else {
      add_U(out, half, mat_add(mat_mul(A, B), mat_mul(B, A)), mat_comm(S, T));
      add_Up(out, half, mat_comm(A, B), mat_add(mat_mul(S, T), mat_mul(T, S)));
    }
    return out;
  };
  for (int i = 0; i < 30; ++i)
    for (int j = i + 1; j < 30; ++j) {
      std::vector<QSqrt2> out(30);
      if (!in_U(i) && in_U(j)) {
        out = binary_direct(j, i);
        for (auto& v : out) v = -v;
      } else {
        out = binary_direct(i, j);
      }
      auto row = sparsify(out);
      alg.set_bin(i, j, row);
      for (auto& [k, v] : row) v = -v;
      alg.set_bin(j, i, row);
    }

  // ternary products vanish unless the first two arguments are in the same
  // sector; both displayed families carry 1/3 trace factors
  auto ternary = [&](int i, int j, int k) -> std::vector<QSqrt2> {
    std::vector<QSqrt2> out(30);
    if (in_U(i) != in_U(j)) return out;
    QMatrix A = first(i), S = second(i), B = first(j), T = second(j);
    QMatrix C = first(k), U = second(k);
    // {P1 x Q1, P2 x Q2, P3 x Q3} = (1/3)tr(Q1 Q2)[[P1,P2],P3] x Q3
    //                             + (1/3)tr(P1 P2) P3 x [[Q1,Q2],Q3]
    // in both same-sector cases; the result lands in the third argument's
    // sector
    QSqrt2 trF = third * mat_trace(mat_mul(A, B));
    QSqrt2 trS = third * mat_trace(mat_mul(S, T));
    QMatrix dd1 = mat_comm(mat_comm(A, B), C);
    QMatrix dd2 = mat_comm(mat_comm(S, T), U);
    if (in_U(k)) {
      add_U(out, trS, dd1, U);
      add_U(out, trF, C, dd2);
    } else {
      add_Up(out, trS, dd1, U);
      add_Up(out, trF, C, dd2);
    }
    return out;
  };
  for (int i = 0; i < 30; ++i)
    for (int j = i + 1; j < 30; ++j)
      for (int k = 0; k < 30; ++k) {
        auto row = sparsify(ternary(i, j, k));
        alg.set_ter(i, j, k, row);
        for (auto& [t, v] : row) v = -v;
        alg.set_ter(j, i, k, row);
      }
  return alg;
}

// ---------------------------------------------------------------------------
// Jordan products on the symmetric matrices.

/// Jordan algebra on the orthonormal symmetric basis: a o b = ab + ba and
/// the Jordan triple product {a,b,c} = abc + cba.
inline QAlgebra build_jordan_H(int n) {
  if (n < 2) throw std::invalid_argument("build_jordan_H: n must be at least 2");
  QAlgebra alg;
  alg.name = "jordan-h-" + std::to_string(n);
  alg.n = n;
  alg.sigs = {OperationSignature{"circle", 2, {{1, 2, +1}}}, ljy_ternary()};
  int N = n * (n + 1) / 2;
  alg.init(N);
  auto H = symmetric_matrix_basis(n);
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      QMatrix S = detail::mat_add(detail::mat_mul(H[i], H[j]), detail::mat_mul(H[j], H[i]));
      auto row = detail::sparsify(symmetric_coords(S));
      alg.set_bin(i, j, row);
      if (j != i) alg.set_bin(j, i, std::move(row));
    }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      QMatrix P = detail::mat_mul(H[i], H[j]);
      QMatrix Pt = detail::mat_transpose(P);  // = H[j] H[i], the H's are symmetric
      for (int k = i; k < N; ++k) {
        QMatrix T = detail::mat_add(detail::mat_mul(P, H[k]), detail::mat_mul(H[k], Pt));
        auto row = detail::sparsify(symmetric_coords(T));
        alg.set_ter(i, j, k, row);
        if (k != i) alg.set_ter(k, j, i, std::move(row));
      }
    }
  return alg;
}

} // namespace idforge

#endif
