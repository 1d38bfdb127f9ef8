// Tests for the matrix models and structure-constant algebras: the so(n)
// projection construction, the transvection and tensor models, Jordan
// products on symmetric matrices, axiom verification, and serialization.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "idforge/algebra.hpp"
#include "idforge/catalog.hpp"
#include "idforge/models.hpp"

using namespace idforge;

namespace {

// build the expensive 30-dimensional algebras once per test binary
const QAlgebra& ly3_model() {
  static QAlgebra a = build_LY(3);
  return a;
}
const QAlgebra& ljy3_model() {
  static QAlgebra a = build_LJY(3);
  return a;
}
const QAlgebra& ly4_model() {
  static QAlgebra a = build_LY(4);
  return a;
}
const QAlgebra& ljy4_model() {
  static QAlgebra a = build_LJY(4);
  return a;
}
const QAlgebra& ly4t_model() {
  static QAlgebra a = build_LY4_tensor();
  return a;
}

bool all_pass(const std::vector<AxiomResult>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const AxiomResult& r) { return r.pass; });
}

// evaluate the LY axioms: skewness directly, higher degrees exhaustively for
// degree <= 3 and with seeded random trials above
template <typename Alg>
std::vector<AxiomResult> ly_suite(const Alg& alg, OpsContext& ctx, int trials) {
  auto low = verify_axioms(alg, ctx, {"LY1", "LY2", "LY3"}, VerifyMode::exhaustive);
  auto high = verify_axioms(alg, ctx, {"LY4", "LY5", "LY6"}, VerifyMode::random, trials, 42);
  low.insert(low.end(), high.begin(), high.end());
  return low;
}

} // namespace

TEST_CASE("matrix model dimensions and invariants") {
  // dim M = (n-2)(n-1)(n+1)(n+4)/8, the list 7, 30, 81, 175, ...
  std::vector<int> expected{7, 30, 81, 175};
  for (int n = 3; n <= 6; ++n) {
    MatrixModel mm = build_matrix_model(n);
    int N = n * (n + 1) / 2;
    CHECK(mm.N == N);
    CHECK(mm.dimL == n * (n - 1) / 2);
    CHECK(mm.dimU == (N - 1) * (N - 2) / 2);
    CHECK(mm.dimM == expected[n - 3]);
    CHECK(mm.dimM == (n - 2) * (n - 1) * (n + 1) * (n + 4) / 8);
    CHECK(mm.dimU == mm.dimL + mm.dimM);
  }
  CHECK_THROWS_AS(build_matrix_model(2), std::invalid_argument);

  MatrixModel mm = build_matrix_model(3);
  CHECK(mm.dimU == 10);
  CHECK(mm.dimL == 3);
  CHECK(mm.dimM == 7);

  // the symmetric basis is orthonormal under the trace form
  for (std::size_t i = 0; i < mm.H.size(); ++i)
    for (std::size_t j = 0; j < mm.H.size(); ++j) {
      QSqrt2 t = detail::trace_prod(mm.H[i], mm.H[j]);
      CHECK(t == (i == j ? QSqrt2(1) : QSqrt2()));
    }

  // images of L and the U basis are skew and annihilate the coordinates of I
  auto check_skew_ann = [&](const QMatrix& X) {
    for (std::size_t r = 0; r < X.rows(); ++r)
      for (std::size_t c = 0; c < X.cols(); ++c) CHECK(X.at(r, c) == -X.at(c, r));
    auto v = X.apply(mm.iota);
    for (const auto& x : v) CHECK(x.is_zero());
  };
  for (int l = 0; l < mm.dimL; ++l) check_skew_ann(mm.dense_L(l));
  for (int u = 0; u < mm.dimU; ++u) check_skew_ann(mm.Ubasis[u].dense());
  for (int m = 0; m < mm.dimM; ++m) check_skew_ann(mm.dense_M(m));

  // M is orthogonal to the image of L under the trace form
  for (int l = 0; l < mm.dimL; ++l)
    for (int m = 0; m < mm.dimM; ++m)
      CHECK(detail::trace_prod(mm.dense_L(l), mm.dense_M(m)).is_zero());
}

TEST_CASE("projections are complementary and the pair is reductive") {
  MatrixModel mm = build_matrix_model(3);
  ModelProjector pr(mm);
  // p_L + p_M = identity and p_L^2 = p_L on every U basis element
  for (int u = 0; u < mm.dimU; ++u) {
    QMatrix X = mm.Ubasis[u].dense();
    QMatrix PL = pr.pL(X);
    QMatrix PM = pr.pM(X);
    QMatrix sum = detail::mat_add(PL, PM);
    QMatrix PLL = pr.pL(PL);
    for (std::size_t r = 0; r < X.rows(); ++r)
      for (std::size_t c = 0; c < X.cols(); ++c) {
        CHECK(sum.at(r, c) == X.at(r, c));
        CHECK(PLL.at(r, c) == PL.at(r, c));
      }
  }
  // [L, M] lands in M exactly: zero L-projection and exact M-reconstruction
  for (int l = 0; l < mm.dimL; ++l)
    for (int m = 0; m < mm.dimM; ++m) {
      QMatrix X = detail::mat_comm(mm.dense_L(l), mm.dense_M(m));
      for (const auto& c : pr.pL_coords(X)) CHECK(c.is_zero());
      QMatrix back = pr.pM(X);
      for (std::size_t r = 0; r < X.rows(); ++r)
        for (std::size_t c = 0; c < X.cols(); ++c) CHECK(back.at(r, c) == X.at(r, c));
    }
}

TEST_CASE("transvection oracle values") {
  std::vector<mpq_class> x6(7, 0), y6(7, 0);
  x6[0] = 1;  // x^6
  y6[6] = 1;  // y^6

  // (x^6, y^6)_5 = 518400 xy: only the i=0 term survives, d^5 x^6/dx^5 = 720x
  auto t5 = transvection(x6, y6, 5);
  REQUIRE(t5.size() == 3);  // degree 2
  CHECK(t5[0] == 0);
  CHECK(t5[1] == 518400);
  CHECK(t5[2] == 0);

  // (x^6, y^6)_3 = 14400 x^3 y^3
  auto t3 = transvection(x6, y6, 3);
  REQUIRE(t3.size() == 7);  // degree 6
  for (int i = 0; i < 7; ++i) CHECK(t3[i] == (i == 3 ? 14400 : 0));

  // odd transvections are skew: (m,m)_5 = (m,m)_3 = 0
  std::vector<mpq_class> m{3, -1, 4, 1, -5, 9, 2};
  for (int k : {3, 5})
    for (const auto& c : transvection(m, m, k)) CHECK(c == 0);
}

TEST_CASE("both degree-7 models satisfy the LY axioms") {
  OpsContext ctx = ly_context();
  const QAlgebra transvection_model = build_LY3_transvection();
  for (const QAlgebra* alg : {&ly3_model(), &transvection_model}) {
    CHECK(alg->dim == 7);
    for (const auto& r : ly_suite(*alg, ctx, 50)) {
      INFO(alg->name, " axiom ", r.name, " witness ", r.witness);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("both 30-dimensional models satisfy the LY axioms") {
  OpsContext ctx = ly_context();
  for (const QAlgebra* alg : {&ly4_model(), &ly4t_model()}) {
    CHECK(alg->dim == 30);
    auto rs = verify_axioms(*alg, ctx, {"LY1", "LY2", "LY3", "LY4", "LY5", "LY6"},
                            VerifyMode::random, 10, 7);
    for (const auto& r : rs) {
      INFO(alg->name, " axiom ", r.name, " witness ", r.witness);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("tensor model sector products") {
  const QAlgebra& alg = ly4t_model();
  // mixed-sector ternary products vanish: first two arguments in different
  // sectors give zero rows, for any third argument
  for (int i = 0; i < 15; ++i)
    for (int j = 15; j < 30; ++j)
      for (int k : {0, 7, 20, 29}) {
        CHECK(alg.ter[(static_cast<std::size_t>(i) * 30 + j) * 30 + k].empty());
        CHECK(alg.ter[(static_cast<std::size_t>(j) * 30 + i) * 30 + k].empty());
      }
  // {a x s, b x t, c x u} = 0 whenever tr(st) = 0 and tr(ab) = 0: both terms
  // carry trace factors; a=E12-E21, b=E13-E31 and s=E11-E22, t=E12+E21 have
  // tr(ab) = tr(st) = 0.  Indices: a x s = 0*5+0, b x t = 1*5+2.
  for (int k = 0; k < 30; ++k)
    CHECK(alg.ter[(static_cast<std::size_t>(0) * 30 + 7) * 30 + k].empty());
}

TEST_CASE("LJY algebras: shared bilinear part and symmetric ternary") {
  const QAlgebra& ly = ly3_model();
  const QAlgebra& ljy = ljy3_model();
  CHECK(ljy.dim == 7);
  CHECK(ljy4_model().dim == 30);
  // the bilinear operation is retained from the LY construction
  REQUIRE(ly.dim == ljy.dim);
  for (int i = 0; i < ly.dim; ++i)
    for (int j = 0; j < ly.dim; ++j)
      CHECK(ly.bin[static_cast<std::size_t>(i) * ly.dim + j] ==
            ljy.bin[static_cast<std::size_t>(i) * ljy.dim + j]);
  // ternary symmetry t[i][j][k] = t[k][j][i]
  for (int i = 0; i < ljy.dim; ++i)
    for (int j = 0; j < ljy.dim; ++j)
      for (int k = 0; k < ljy.dim; ++k)
        CHECK(ljy.ter_row(i, j, k) == ljy.ter_row(k, j, i));
}

TEST_CASE("LJY bilinear part is Malcev and satisfies the h-identity") {
  OpsContext ctx = ljy_context();
  auto rs = verify_axioms(ljy3_model(), ctx, {"Malcev", "FilippovH"}, VerifyMode::random, 20, 3);
  for (const auto& r : rs) {
    INFO("axiom ", r.name, " witness ", r.witness);
    CHECK(r.pass);
  }
  // skewness of the shared binary product, exhaustively
  CHECK(all_pass(verify_axioms(ljy3_model(), ctx, {"LY1"}, VerifyMode::exhaustive)));
}

TEST_CASE("LJY catalog identities vanish exactly on the 7-dimensional model") {
  OpsContext ctx = ljy_context();
  const QAlgebra& alg = ljy3_model();
  SplitMix64 rng(23);
  for (const auto& name : {"LJY3-deg5-1", "LJY3-deg5-2", "LJY3-deg5-3",
                           "LJY3-deg6-1", "LJY3-deg6-2", "LJY3-deg6-3"}) {
    MultilinearPoly f = catalog_identity(ctx, name);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<std::vector<QSqrt2>> assign;
      for (int v = 0; v < f.degree(); ++v) assign.push_back(random_element(alg, rng));
      INFO("identity ", name);
      for (const auto& x : evaluate(alg, ctx, f, assign)) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("LJY ternary is not the linking of the binary") {
  OpsContext ctx = ljy_context();
  auto rs = verify_axioms(ljy3_model(), ctx, {"LieJordan-linking"}, VerifyMode::exhaustive);
  REQUIRE(rs.size() == 1);
  CHECK_FALSE(rs[0].pass);
  CHECK_FALSE(rs[0].witness.empty());
}

TEST_CASE("evaluate: structure constants, LY3 on models, zero algebra") {
  OpsContext ctx = ly_context();
  const QAlgebra& alg = ly3_model();
  QSqrt2Field f;
  // [x1, x2] at basis vectors returns the binary table row
  MultilinearPoly bracket = poly_from_terms(ctx, 2, {{1, "[a,b]"}});
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j) {
      std::vector<std::vector<QSqrt2>> assign(2, std::vector<QSqrt2>(alg.dim));
      assign[0][i] = f.one();
      assign[1][j] = f.one();
      CHECK(evaluate(alg, ctx, bracket, assign) == alg.bin_row(i, j));
    }
  // LY3 vanishes on random vectors of the 30-dimensional model
  MultilinearPoly ly3 = catalog_identity(ctx, "LY3");
  SplitMix64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<QSqrt2>> assign;
    for (int v = 0; v < 3; ++v) assign.push_back(random_element(ly4_model(), rng));
    for (const auto& x : evaluate(ly4_model(), ctx, ly3, assign)) CHECK(x.is_zero());
  }
  // the zero algebra satisfies everything and has a fully symmetric ternary
  QAlgebra zero;
  zero.name = "zero";
  zero.sigs = {skew_binary(), ly_ternary()};
  zero.init(3);
  CHECK(all_pass(verify_axioms(zero, ctx, {"LY1", "LY2", "LY3", "LY4", "LY5", "LY6"},
                               VerifyMode::random, 5, 1)));
  CHECK(detect_ternary_symmetry(zero).size() == 12);
}

TEST_CASE("ternary symmetry detection on the constructed algebras") {
  GfpField f(103);
  auto root = sqrt2_residue(103, Sqrt2Root::smaller);
  ModAlgebra ly = reduce_mod(ly4_model(), f, root);
  ModAlgebra ljy = reduce_mod(ljy4_model(), f, root);
  auto has = [](const std::vector<std::pair<std::array<int, 3>, int>>& set,
                std::array<int, 3> p, int s) {
    return std::find(set.begin(), set.end(), std::make_pair(p, s)) != set.end();
  };
  auto sly = detect_ternary_symmetry(ly);
  CHECK(sly.size() == 2);
  CHECK(has(sly, {0, 1, 2}, +1));
  CHECK(has(sly, {1, 0, 2}, -1));
  auto sljy = detect_ternary_symmetry(ljy);
  CHECK(has(sljy, {0, 1, 2}, +1));
  CHECK(has(sljy, {2, 1, 0}, +1));
  CHECK_FALSE(has(sljy, {1, 0, 2}, -1));
}

TEST_CASE("modular reduction preserves the axioms") {
  GfpField f(103);
  auto root = sqrt2_residue(103, Sqrt2Root::smaller);
  OpsContext ctx = ly_context();
  ModAlgebra m = reduce_mod(ly4_model(), f, root);
  CHECK(m.dim == 30);
  CHECK(all_pass(verify_axioms(m, ctx, {"LY1", "LY2", "LY3"}, VerifyMode::random, 10, 5)));
  CHECK(all_pass(verify_axioms(m, ctx, {"LY4", "LY5", "LY6"}, VerifyMode::random, 10, 5)));
  // LY3 vanishes identically over GF(103), checked on all basis tuples
  CHECK(all_pass(verify_axioms(m, ctx, {"LY3"}, VerifyMode::exhaustive)));
  // reduction agrees with reducing individual entries
  const QAlgebra& q = ly4_model();
  for (const auto& [k, c] : q.bin[1 * 30 + 2])
    CHECK(m.bin[(static_cast<std::size_t>(1) * 30 + 2) * 30 + k] == c.reduce_mod(f, root));
}

TEST_CASE("Jordan products on symmetric matrices") {
  QAlgebra alg = build_jordan_H(3);
  int N = alg.dim;
  CHECK(N == 6);
  QSqrt2Field f;

  // coordinates of the identity matrix: 1 on the diagonal slots
  std::vector<QSqrt2> iota(N);
  for (int i = 0; i < 3; ++i) iota[i] = f.one();

  // I o a = 2a
  for (int k = 0; k < N; ++k) {
    std::vector<QSqrt2> ek(N);
    ek[k] = f.one();
    std::vector<QSqrt2> out(N);
    for (int i = 0; i < N; ++i)
      if (!iota[i].is_zero()) alg.add_binary(out, i, k, iota[i]);
    for (int t = 0; t < N; ++t) CHECK(out[t] == (t == k ? QSqrt2(2) : QSqrt2()));
  }

  // trace-form associativity T(a o b, c) = T(a, b o c) on basis triples:
  // with an orthonormal basis T picks out coordinates
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) CHECK(alg.bin_row(i, j)[k] == alg.bin_row(j, k)[i]);

  // the ternary table is the Jordan triple product: symmetric in (1,3)
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) CHECK(alg.ter_row(i, j, k) == alg.ter_row(k, j, i));

  // inner maps d_{a,b} = [L_a, L_b]
  auto circle = [&](const std::vector<QSqrt2>& x, const std::vector<QSqrt2>& y) {
    std::vector<QSqrt2> out(N);
    for (int i = 0; i < N; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < N; ++j)
        if (!y[j].is_zero()) alg.add_binary(out, i, j, x[i] * y[j]);
    }
    return out;
  };
  auto braces = [&](const std::vector<QSqrt2>& x, const std::vector<QSqrt2>& y,
                    const std::vector<QSqrt2>& z) {
    std::vector<QSqrt2> out(N);
    for (int i = 0; i < N; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < N; ++j) {
        if (y[j].is_zero()) continue;
        for (int k = 0; k < N; ++k)
          if (!z[k].is_zero()) alg.add_ternary(out, i, j, k, x[i] * y[j] * z[k]);
      }
    }
    return out;
  };
  auto unit = [&](int k) {
    std::vector<QSqrt2> e(N);
    e[k] = f.one();
    return e;
  };
  auto inner = [&](int a, int b, const std::vector<QSqrt2>& x) {
    auto lhs = circle(unit(a), circle(unit(b), x));
    auto rhs = circle(unit(b), circle(unit(a), x));
    for (int t = 0; t < N; ++t) lhs[t] -= rhs[t];
    return lhs;
  };
  auto dot = [&](const std::vector<QSqrt2>& x, const std::vector<QSqrt2>& y) {
    QSqrt2 s;
    for (int t = 0; t < N; ++t) s += x[t] * y[t];
    return s;
  };
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      // d(I) = 0
      for (const auto& v : inner(a, b, iota)) CHECK(v.is_zero());
      for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
          // derivation of the binary product
          auto lhs = inner(a, b, circle(unit(x), unit(y)));
          auto rhs = circle(inner(a, b, unit(x)), unit(y));
          auto r2 = circle(unit(x), inner(a, b, unit(y)));
          for (int t = 0; t < N; ++t) CHECK(lhs[t] == rhs[t] + r2[t]);
          // trace-form invariance T(d(x), y) + T(x, d(y)) = 0
          CHECK((dot(inner(a, b, unit(x)), unit(y)) + dot(unit(x), inner(a, b, unit(y))))
                    .is_zero());
          // derivation of the triple product
          for (int z = 0; z < N; ++z) {
            auto l3 = inner(a, b, braces(unit(x), unit(y), unit(z)));
            auto p1 = braces(inner(a, b, unit(x)), unit(y), unit(z));
            auto p2 = braces(unit(x), inner(a, b, unit(y)), unit(z));
            auto p3 = braces(unit(x), unit(y), inner(a, b, unit(z)));
            for (int t = 0; t < N; ++t) CHECK(l3[t] == p1[t] + p2[t] + p3[t]);
          }
        }
    }
}

TEST_CASE("algebra JSON round-trips") {
  const QAlgebra& a = ly3_model();
  auto j = algebra_to_json(a, "q-sqrt2");
  CHECK(j.at("name") == "ly-3");
  CHECK(j.at("dim") == 7);
  QAlgebra back = qalgebra_from_json(j);
  CHECK(back.dim == a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j2 = 0; j2 < a.dim; ++j2) {
      CHECK(back.bin_row(i, j2) == a.bin_row(i, j2));
      for (int k = 0; k < a.dim; ++k) CHECK(back.ter_row(i, j2, k) == a.ter_row(i, j2, k));
    }

  GfpField f(103);
  auto root = sqrt2_residue(103, Sqrt2Root::smaller);
  ModAlgebra m = reduce_mod(a, f, root);
  auto jm = algebra_to_json(m, "gfp:103:sqrt2=" + std::to_string(root));
  ModAlgebra mb = mod_algebra_from_json(jm);
  CHECK(mb.dim == m.dim);
  CHECK(mb.fld.modulus() == 103);
  CHECK(mb.bin == m.bin);
  CHECK(mb.ter == m.ter);

  // jordan algebra: symmetric binary signature survives the round-trip
  QAlgebra jh = build_jordan_H(2);
  QAlgebra jhb = qalgebra_from_json(algebra_to_json(jh, "q-sqrt2"));
  CHECK(jhb.sigs[0].name == "circle");
  for (int i = 0; i < jh.dim; ++i)
    for (int j2 = 0; j2 < jh.dim; ++j2) CHECK(jhb.bin_row(i, j2) == jh.bin_row(i, j2));
}
