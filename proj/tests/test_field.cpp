#include <gtest/gtest.h>

#include <random>

#include "bettilin/field.hpp"
#include "bettilin/sparse.hpp"

using namespace bettilin;

TEST(PrimeField, Arithmetic) {
  PrimeField f5(5);
  EXPECT_EQ(f5.mul(3, 2), 1u);
  EXPECT_EQ(f5.add(4, 3), 2u);
  EXPECT_EQ(f5.sub(1, 3), 3u);
  EXPECT_EQ(f5.neg(0), 0u);
  EXPECT_EQ(f5.from_int(-7), 3u);
  PrimeField f2(2);
  EXPECT_EQ(f2.add(1, 1), 0u);
  EXPECT_EQ(f2.name(), "GF(2)");
}

TEST(PrimeField, InverseOfEveryNonzero) {
  for (std::uint64_t p : {2ULL, 3ULL, 7ULL, 101ULL}) {
    PrimeField f(p);
    for (std::uint64_t a = 1; a < p; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  }
}

TEST(PrimeField, LargePrime) {
  const std::uint64_t p = 9223372036854775783ULL;  // largest prime below 2^63
  PrimeField f(p);
  std::uint64_t a = p - 2;
  EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.add(a, 5), 3u);
}

TEST(PrimeField, RejectsNonPrimes) {
  EXPECT_THROW(PrimeField(0), std::invalid_argument);
  EXPECT_THROW(PrimeField(1), std::invalid_argument);
  EXPECT_THROW(PrimeField(9), std::invalid_argument);
  EXPECT_THROW(PrimeField(561), std::invalid_argument);
  EXPECT_THROW(PrimeField(std::uint64_t{1} << 63), std::invalid_argument);
}

TEST(PrimeField, DivisionByZero) {
  PrimeField f(7);
  EXPECT_THROW(f.inv(0), std::domain_error);
  EXPECT_THROW(f.div(3, 0), std::domain_error);
}

TEST(RationalField, Arithmetic) {
  RationalField q;
  EXPECT_EQ(q.add(mpq_class(1, 3), mpq_class(1, 6)), mpq_class(1, 2));
  EXPECT_EQ(q.mul(mpq_class(2, 3), q.inv(mpq_class(2, 3))), q.one());
  EXPECT_TRUE(q.is_zero(q.add(mpq_class(5, 7), q.neg(mpq_class(5, 7)))));
  EXPECT_THROW(q.inv(q.zero()), std::domain_error);
  EXPECT_THROW(q.div(q.one(), q.zero()), std::domain_error);
  EXPECT_EQ(q.to_string(q.div(q.from_int(-4), q.from_int(6))), "-2/3");
}

TEST(WithField, Dispatch) {
  EXPECT_EQ(with_field(0, [](const auto& f) { return f.name(); }), "QQ");
  EXPECT_EQ(with_field(3, [](const auto& f) { return f.name(); }), "GF(3)");
}

template <class F>
SparseMatrix<F> random_matrix(const F& field, std::mt19937_64& rng, std::size_t r, std::size_t c, int density) {
  std::uniform_int_distribution<int> coin(0, 99), val(-3, 3);
  SparseMatrix<F> m(r, c);
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<std::pair<std::size_t, typename F::Element>> col;
    for (std::size_t i = 0; i < r; ++i) {
      if (coin(rng) < density) col.emplace_back(i, field.from_int(val(rng)));
    }
    m.set_column(j, make_sparse(field, std::move(col)));
  }
  return m;
}

TEST(Rank, SmallCases) {
  RationalField q;
  EXPECT_EQ(rank(q, SparseMatrix<RationalField>::identity(q, 2)), 2u);
  SparseMatrix<RationalField> zero(3, 4);
  EXPECT_EQ(rank(q, zero), 0u);
  EXPECT_EQ(kernel_basis(q, zero).size(), 4u);
  PrimeField f2(2);
  auto m = SparseMatrix<PrimeField>::from_dense(f2, {{1, 1}, {1, 1}});
  EXPECT_EQ(rank(f2, m), 1u);
  // rank depends on the characteristic
  auto m3 = SparseMatrix<PrimeField>::from_dense(f2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  EXPECT_EQ(rank(f2, m3), 2u);
  auto q3 = SparseMatrix<RationalField>::from_dense(q, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  EXPECT_EQ(rank(q, q3), 3u);
}

template <class F>
void check_rank_nullity(const F& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(0, 8);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    auto m = random_matrix(field, rng, r, c, 35);
    auto kernel = kernel_basis(field, m);
    EXPECT_EQ(rank(field, m) + kernel.size(), c);
    for (const auto& z : kernel) EXPECT_TRUE(m.apply(field, z).empty());
    SparseMatrix<F> k(c, kernel.size());
    for (std::size_t j = 0; j < kernel.size(); ++j) k.set_column(j, kernel[j]);
    EXPECT_EQ(rank(field, k), kernel.size());
  }
}

TEST(Rank, RankNullityRandom) {
  check_rank_nullity(RationalField{}, 1);
  check_rank_nullity(PrimeField{2}, 2);
  check_rank_nullity(PrimeField{7}, 3);
}

template <class F>
void check_solve(const F& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  std::uniform_int_distribution<int> val(-4, 4);
  int consistent = 0, inconsistent = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    auto m = random_matrix(field, rng, r, c, 40);
    std::vector<std::pair<std::size_t, typename F::Element>> b;
    for (std::size_t i = 0; i < r; ++i) b.emplace_back(i, field.from_int(val(rng)));
    auto rhs = make_sparse(field, b);
    auto x = solve(field, m, rhs);
    if (x) {
      ++consistent;
      EXPECT_EQ(m.apply(field, *x), rhs);
    } else {
      ++inconsistent;
      // rank of [M | b] exceeds rank of M
      SparseMatrix<F> aug(r, c + 1);
      for (std::size_t j = 0; j < c; ++j) aug.set_column(j, m.column(j));
      aug.set_column(c, rhs);
      EXPECT_EQ(rank(field, aug), rank(field, m) + 1);
    }
    // a right-hand side in the image is always solvable
    std::vector<std::pair<std::size_t, typename F::Element>> y;
    for (std::size_t j = 0; j < c; ++j) y.emplace_back(j, field.from_int(val(rng)));
    auto image = m.apply(field, make_sparse(field, y));
    auto z = solve(field, m, image);
    ASSERT_TRUE(z.has_value());
    EXPECT_EQ(m.apply(field, *z), image);
  }
  EXPECT_GT(consistent, 0);
  EXPECT_GT(inconsistent, 0);
}

TEST(Solve, RandomSystems) {
  check_solve(RationalField{}, 11);
  check_solve(PrimeField{3}, 12);
}

TEST(Echelon, TagsRecordColumnCombinations) {
  RationalField q;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_matrix(q, rng, 6, 6, 40);
    auto e = echelon_form(q, m);
    EXPECT_EQ(e.rank(), rank(q, m));
    for (std::size_t k = 0; k < e.rank(); ++k) EXPECT_EQ(m.apply(q, e.tags()[k]), e.columns()[k]);
  }
}

TEST(Sparse, MultiplyMatchesDense) {
  PrimeField f(11);
  std::mt19937_64 rng(9);
  auto a = random_matrix(f, rng, 4, 5, 50);
  auto b = random_matrix(f, rng, 5, 3, 50);
  auto c = a.multiply(f, b).to_dense(f);
  auto da = a.to_dense(f), db = b.to_dense(f);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < 5; ++k) s = f.add(s, f.mul(da[i][k], db[k][j]));
      EXPECT_EQ(c[i][j], s);
    }
  }
  EXPECT_THROW(a.multiply(f, a), std::invalid_argument);
}
