#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "idforge/matrix.hpp"
#include "idforge/prime_field.hpp"
#include "idforge/qsqrt2.hpp"
#include "idforge/random.hpp"
#include "idforge/serialize.hpp"

using namespace idforge;

namespace {

// Independent rank oracle: largest k such that some k x k minor has nonzero
// determinant (cofactor expansion).  Only usable for small matrices.
std::uint64_t minor_det(const ExactMatrix<GfpField>& m, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
  const GfpField& f = m.field();
  std::size_t k = rows.size();
  if (k == 1) return m.at(rows[0], cols[0]);
  std::uint64_t det = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> sub_rows;
    for (std::size_t r = 0; r < k; ++r)
      if (r != i) sub_rows.push_back(rows[r]);
    std::vector<std::size_t> sub_cols(cols.begin() + 1, cols.end());
    std::uint64_t term = f.mul(m.at(rows[i], cols[0]), minor_det(m, sub_rows, sub_cols));
    det = (i % 2 == 0) ? f.add(det, term) : f.sub(det, term);
  }
  return det;
}

bool has_nonzero_minor(const ExactMatrix<GfpField>& m, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  // enumerate k-subsets of rows and of columns
  std::vector<std::size_t> ri(k), ci(k);
  for (std::size_t i = 0; i < k; ++i) ri[i] = i;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) ci[i] = i;
    while (true) {
      if (minor_det(m, ri, ci) != 0) return true;
      std::size_t j = k;
      while (j > 0 && ci[j - 1] == m.cols() - k + (j - 1)) --j;
      if (j == 0) break;
      ++ci[j - 1];
      for (std::size_t t = j; t < k; ++t) ci[t] = ci[t - 1] + 1;
    }
    std::size_t j = k;
    while (j > 0 && ri[j - 1] == m.rows() - k + (j - 1)) --j;
    if (j == 0) break;
    ++ri[j - 1];
    for (std::size_t t = j; t < k; ++t) ri[t] = ri[t - 1] + 1;
  }
  return false;
}

std::size_t oracle_rank(const ExactMatrix<GfpField>& m) {
  std::size_t maxk = std::min(m.rows(), m.cols());
  for (std::size_t k = maxk; k >= 1; --k)
    if (has_nonzero_minor(m, k)) return k;
  return 0;
}

ExactMatrix<GfpField> random_gfp_matrix(GfpField f, std::size_t r, std::size_t c,
                                        SplitMix64& rng) {
  ExactMatrix<GfpField> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng.below(f.modulus());
  return m;
}

} // namespace

TEST_CASE("square roots of 2 modulo p") {
  CHECK(sqrt2_residue(103) == 38);
  CHECK(sqrt2_residue(103, Sqrt2Root::larger) == 65);
  CHECK(sqrt2_residue(100049) == 10948);
  CHECK_THROWS_AS(sqrt2_residue(3), std::domain_error);

  GfpField f103(103);
  CHECK(f103.mul(38, 38) == 2);
  GfpField big(100049);
  CHECK(big.mul(10948, 10948) == 2);
}

TEST_CASE("Tonelli-Shanks against exhaustive squares for small primes") {
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 101ull, 103ull}) {
    GfpField f(p);
    std::vector<bool> is_square(p, false);
    for (std::uint64_t x = 0; x < p; ++x) is_square[f.mul(x, x)] = true;
    for (std::uint64_t a = 0; a < p; ++a) {
      auto r = f.sqrt(a);
      if (is_square[a]) {
        REQUIRE(r.has_value());
        CHECK(f.mul(*r, *r) == a);
      } else {
        CHECK(!r.has_value());
      }
    }
  }
}

TEST_CASE("prime field basics") {
  GfpField f(103);
  CHECK(f.from_int(-1) == 102);
  CHECK(f.lift_signed(102) == -1);
  CHECK(f.lift_signed(51) == 51);
  CHECK(f.lift_signed(52) == -51);
  for (std::uint64_t a = 1; a < 103; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK_THROWS_AS(f.inv(0), std::domain_error);
  CHECK_THROWS_AS(GfpField(4), std::invalid_argument);
}

TEST_CASE("rref: trivial cases") {
  GfpField f(103);
  ExactMatrix<GfpField> id(f, 4, 4);
  for (std::size_t i = 0; i < 4; ++i) id.at(i, i) = 1;
  auto before = id.data();
  CHECK(id.rref() == 4);
  CHECK(id.data() == before);

  ExactMatrix<GfpField> zero(f, 3, 5);
  CHECK(zero.rref() == 0);
}

TEST_CASE("rref rank matches determinant-of-minors oracle") {
  GfpField f(103);
  SplitMix64 rng(12345);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = random_gfp_matrix(f, 5, 6, rng);
    // knock rank down sometimes by overwriting rows with combinations
    if (trial % 2 == 0)
      for (std::size_t j = 0; j < 6; ++j)
        m.at(4, j) = f.add(m.at(0, j), f.mul(2, m.at(1, j)));
    if (trial % 3 == 0)
      for (std::size_t j = 0; j < 6; ++j) m.at(3, j) = f.mul(5, m.at(2, j));
    CHECK(m.rank() == oracle_rank(m));
  }
}

TEST_CASE("rref is idempotent") {
  GfpField f(103);
  SplitMix64 rng(777);
  for (int trial = 0; trial < 5; ++trial) {
    auto m = random_gfp_matrix(f, 7, 9, rng);
    m.rref();
    auto once = m.data();
    m.rref();
    CHECK(m.data() == once);
  }
}

TEST_CASE("nullspace of the degree-3 relation matrix") {
  // Frozen 5x6 row canonical form over GF(103); nullspace encodes the
  // six-term mixed identity of degree 3 with coefficients +-1.
  GfpField f(103);
  long long entries[5][6] = {
      {1, 0, 0, 0, 0, 102},
      {0, 1, 0, 0, 0, 1},
      {0, 0, 1, 0, 0, 102},
      {0, 0, 0, 1, 0, 102},
      {0, 0, 0, 0, 1, 1},
  };
  ExactMatrix<GfpField> m(f, 5, 6);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 6; ++j) m.at(i, j) = f.from_int(entries[i][j]);
  auto basis = m.nullspace_basis();
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == std::vector<std::uint64_t>({1, 102, 1, 1, 102, 1}));
}

TEST_CASE("nullspace properties on random matrices") {
  GfpField f(103);
  SplitMix64 rng(424242);
  for (int trial = 0; trial < 6; ++trial) {
    auto m = random_gfp_matrix(f, 8, 12, rng);
    std::size_t rank = m.rank();
    auto basis = m.nullspace_basis();
    CHECK(basis.size() == 12 - rank);
    for (const auto& v : basis) {
      auto mv = m.apply(v);
      for (auto e : mv) CHECK(e == 0);
    }
    // independence: stack basis vectors, rank must equal count
    ExactMatrix<GfpField> b(f, basis.size(), 12);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < 12; ++j) b.at(i, j) = basis[i][j];
    CHECK(b.rank() == basis.size());
  }

  ExactMatrix<GfpField> full(f, 4, 4);
  for (std::size_t i = 0; i < 4; ++i) full.at(i, i) = f.from_int(7);
  CHECK(full.nullspace_basis().empty());
}

TEST_CASE("rational reconstruction") {
  auto r = rational_reconstruct(102, 103);
  REQUIRE(r);
  CHECK(r->num == -1);
  CHECK(r->den == 1);

  r = rational_reconstruct(0, 103);
  REQUIRE(r);
  CHECK(r->num == 0);
  CHECK(r->den == 1);

  r = rational_reconstruct(52, 103);
  REQUIRE(r);
  CHECK(r->num == 1);
  CHECK(r->den == 2);

  // round-trip everything inside the Wang bound floor(sqrt(103/2)) = 7
  GfpField f(103);
  for (long long a = -7; a <= 7; ++a) {
    for (long long b = 1; b <= 7; ++b) {
      long long x = a < 0 ? -a : a, y = b;
      while (y) { long long t = x % y; x = y; y = t; }
      if (x != 1) continue;
      std::uint64_t res = f.div(f.from_int(a), f.from_int(b));
      auto rec = rational_reconstruct(res, 103);
      REQUIRE(rec);
      CHECK(rec->num == a);
      CHECK(rec->den == b);
    }
  }
  CHECK_THROWS(rational_reconstruct(103, 103));
}

TEST_CASE("reconstruction fails at a small prime but succeeds at a larger one") {
  // -20/7 has no equivalent inside the bound for p = 103 (frozen by
  // enumerating all |a|,b <= 7 against residue 56) but reconstructs at
  // p = 100049, mirroring the move to a larger prime.
  GfpField small(103), big(100049);
  std::uint64_t r_small = small.div(small.from_int(-20), 7);
  REQUIRE(r_small == 56);
  std::uint64_t r_big = big.div(big.from_int(-20), 7);
  CHECK(!rational_reconstruct(r_small, 103).has_value());
  auto rec = rational_reconstruct(r_big, 100049);
  REQUIRE(rec);
  CHECK(rec->num == -20);
  CHECK(rec->den == 7);
}

TEST_CASE("Q(sqrt2) arithmetic") {
  QSqrt2 s2 = QSqrt2::sqrt2();
  CHECK(s2 * s2 == QSqrt2(2));
  QSqrt2 x(mpq_class(1), mpq_class(1));   // 1 + sqrt2
  QSqrt2 y(mpq_class(1), mpq_class(-1));  // 1 - sqrt2
  CHECK(x * y == QSqrt2(-1));
  CHECK(x * x.inverse() == QSqrt2(1));
  CHECK_THROWS_AS(QSqrt2().inverse(), std::domain_error);

  GfpField f(103);
  QSqrt2 half_s2(mpq_class(0), mpq_class(1, 2));
  std::uint64_t v = half_s2.reduce_mod(f, 38);
  CHECK(f.mul(v, 2) == 38);
}

TEST_CASE("Q(sqrt2) agrees with floating point on random expressions") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    QSqrt2 exact(mpq_class(static_cast<long>(rng.below(9)) - 4),
                 mpq_class(static_cast<long>(rng.below(9)) - 4));
    double approx = exact.to_double();
    for (int step = 0; step < 10; ++step) {
      QSqrt2 operand(mpq_class(static_cast<long>(rng.below(7)) - 3),
                     mpq_class(static_cast<long>(rng.below(7)) - 3));
      switch (rng.below(3)) {
        case 0: exact += operand; approx += operand.to_double(); break;
        case 1: exact -= operand; approx -= operand.to_double(); break;
        default: exact *= operand; approx *= operand.to_double(); break;
      }
    }
    CHECK(std::abs(exact.to_double() - approx) <= 1e-9 * (1.0 + std::abs(approx)));
  }
}

TEST_CASE("rref over Q(sqrt2)") {
  QSqrt2Field f;
  ExactMatrix<QSqrt2Field> m(f, 2, 3);
  m.at(0, 0) = QSqrt2::sqrt2();
  m.at(0, 1) = QSqrt2(2);
  m.at(0, 2) = QSqrt2(0);
  m.at(1, 0) = QSqrt2(1);
  m.at(1, 1) = QSqrt2::sqrt2();
  m.at(1, 2) = QSqrt2(1);
  // second row is sqrt2/2 times the first plus (0,0,1): rank 2
  CHECK(m.rref() == 2);
  CHECK(m.at(0, 0) == QSqrt2(1));
  CHECK(m.at(0, 1) == QSqrt2::sqrt2());
}

TEST_CASE("field spec parsing") {
  auto q = parse_field_spec("q-sqrt2");
  CHECK(!q.modular);
  CHECK(q.str() == "q-sqrt2");

  auto g = parse_field_spec("gfp:103");
  CHECK(g.modular);
  CHECK(g.p == 103);
  CHECK(g.sqrt2() == 38);

  auto g2 = parse_field_spec("gfp:103:sqrt2=65");
  REQUIRE(g2.root);
  CHECK(g2.sqrt2() == 65);

  CHECK_THROWS(parse_field_spec("gfp:103:sqrt2=7"));
  CHECK_THROWS(parse_field_spec("gf:103"));
}

TEST_CASE("matrix JSON round-trips") {
  GfpField f(103);
  SplitMix64 rng(5);
  auto m = random_gfp_matrix(f, 3, 4, rng);
  auto j = matrix_to_json(m);
  auto back = gfp_matrix_from_json(j);
  CHECK(back.data() == m.data());
  CHECK(j["field"] == "gfp:103");

  ExactMatrix<QSqrt2Field> q(QSqrt2Field{}, 2, 2);
  q.at(0, 0) = QSqrt2(mpq_class(1, 3), mpq_class(-2, 5));
  q.at(1, 1) = QSqrt2::sqrt2();
  auto jq = matrix_to_json(q);
  auto backq = qsqrt2_matrix_from_json(jq);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t jj = 0; jj < 2; ++jj) CHECK(backq.at(i, jj) == q.at(i, jj));
}
