#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hcforce/gf_matrix.hpp"
#include "oracles.hpp"

namespace hcforce {
namespace {

GFMatrix M(Field f, const oracle::Dense& rows) { return GFMatrix::from_rows(f, rows); }

oracle::Dense dense(const GFMatrix& m) {
  oracle::Dense out(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.at(r, c);
  return out;
}

TEST(GF3Planes, AddMatchesModularArithmeticOnAllPairs) {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      GFMatrix x(Field::gf3, 2, 1), y(Field::gf3, 2, 1);
      x.set(0, 0, a);
      x.set(1, 0, b);
      x.add_row_multiple(0, 1, 1);
      EXPECT_EQ(x.at(0, 0), (a + b) % 3) << a << "+" << b;
      y.set(0, 0, a);
      y.set(1, 0, b);
      y.add_row_multiple(0, 1, 2);
      EXPECT_EQ(y.at(0, 0), (a + 2 * b) % 3) << a << "+2*" << b;
    }
}

TEST(Identity, Examples) {
  EXPECT_EQ(dense(identity(1, Field::gf3)), (oracle::Dense{{1}}));
  EXPECT_EQ(dense(identity(2, Field::gf3)), (oracle::Dense{{1, 0}, {0, 1}}));
  EXPECT_EQ(dense(identity(2, Field::gf2)), (oracle::Dense{{1, 0}, {0, 1}}));
  EXPECT_THROW(identity(0, Field::gf2), std::invalid_argument);
}

TEST(MatMul, Examples) {
  EXPECT_EQ(mat_mul(M(Field::gf3, {{1}}), M(Field::gf3, {{1}})), M(Field::gf3, {{1}}));
  const oracle::Dense a{{1, 2}, {2, 1}};
  const auto expected = oracle::mul(a, a, 3);
  ASSERT_EQ(expected, (oracle::Dense{{2, 1}, {1, 2}}));
  EXPECT_EQ(dense(mat_mul(M(Field::gf3, a), M(Field::gf3, a))), expected);
  const auto m = M(Field::gf3, {{1, 2, 0}, {0, 1, 1}});
  EXPECT_EQ(mat_mul(identity(2, Field::gf3), m), m);
}

TEST(MatMul, Errors) {
  EXPECT_THROW(mat_mul(identity(2, Field::gf3), identity(3, Field::gf3)), std::invalid_argument);
  EXPECT_THROW(mat_mul(identity(2, Field::gf3), identity(2, Field::gf2)), std::invalid_argument);
}

TEST(Rank, Examples) {
  for (std::size_t k : {1, 5, 64, 65, 130}) {
    EXPECT_EQ(rank(identity(k, Field::gf3)), k);
    EXPECT_EQ(rank(identity(k, Field::gf2)), k);
  }
  EXPECT_EQ(rank(M(Field::gf3, {{1, 1}, {1, 1}})), 1u);
  EXPECT_EQ(rank(M(Field::gf3, {{0, 0}, {0, 0}})), 0u);
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse(M(Field::gf3, {{1}})), M(Field::gf3, {{1}}));
  const oracle::Dense a{{2, 1}, {1, 1}}, b{{1, 2}, {2, 2}};
  ASSERT_EQ(oracle::mul(a, b, 3), (oracle::Dense{{1, 0}, {0, 1}}));
  EXPECT_EQ(inverse(M(Field::gf3, a)), M(Field::gf3, b));
  EXPECT_FALSE(inverse(M(Field::gf3, {{1, 1}, {1, 1}})).has_value());
  EXPECT_THROW(inverse(M(Field::gf3, {{1, 1}})), std::invalid_argument);
}

TEST(Det, Examples) {
  EXPECT_EQ(det(identity(7, Field::gf3)), 1);
  EXPECT_EQ(det(identity(7, Field::gf2)), 1);
  EXPECT_EQ(det(M(Field::gf3, {{2, 1}, {1, 1}})), 1);
  EXPECT_EQ(det(M(Field::gf3, {{1, 1}, {1, 1}})), 0);
  // A single row swap flips the sign.
  EXPECT_EQ(det(M(Field::gf3, {{0, 1}, {1, 0}})), 2);
  EXPECT_EQ(det(M(Field::gf3, {{2, 0}, {0, 1}})), 2);
}

TEST(Block2x2, Examples) {
  const auto one3 = M(Field::gf3, {{1}});
  EXPECT_EQ(block2x2(one3, one3, one3, one3), M(Field::gf3, {{1, 1}, {1, 1}}));
  EXPECT_EQ(block2x2(scalar_mul(2, one3), one3, one3, one3), M(Field::gf3, {{2, 1}, {1, 1}}));
  EXPECT_THROW(block2x2(one3, identity(2, Field::gf3), one3, one3), std::invalid_argument);
  EXPECT_THROW(block2x2(one3, one3, one3, identity(1, Field::gf2)), std::invalid_argument);
}

TEST(Block2x2, UnalignedOffsetsAcrossWords) {
  std::mt19937_64 rng(7);
  const auto tl = oracle::random_dense(rng, 70, 61, 3), tr = oracle::random_dense(rng, 70, 9, 3);
  const auto bl = oracle::random_dense(rng, 5, 61, 3), br = oracle::random_dense(rng, 5, 9, 3);
  const auto out = block2x2(M(Field::gf3, tl), M(Field::gf3, tr), M(Field::gf3, bl), M(Field::gf3, br));
  for (std::size_t r = 0; r < 75; ++r)
    for (std::size_t c = 0; c < 70; ++c) {
      const int want = r < 70 ? (c < 61 ? tl[r][c] : tr[r][c - 61]) : (c < 61 ? bl[r - 70][c] : br[r - 70][c - 61]);
      ASSERT_EQ(out.at(r, c), want) << r << "," << c;
    }
}

TEST(ScalarMul, Examples) {
  EXPECT_EQ(scalar_mul(2, M(Field::gf3, {{1}})), M(Field::gf3, {{2}}));
  const auto m = M(Field::gf3, {{1, 2}, {2, 2}});
  EXPECT_EQ(scalar_mul(1, m), m);
  EXPECT_EQ(scalar_mul(2, m), M(Field::gf3, {{2, 1}, {1, 1}}));
  EXPECT_EQ(scalar_mul(0, m), GFMatrix(Field::gf3, 2, 2));
  EXPECT_THROW(scalar_mul(2, identity(2, Field::gf2)), std::invalid_argument);
}

TEST(GFMatrix, RejectsOutOfRangeEntries) {
  GFMatrix m(Field::gf2, 2, 2);
  EXPECT_THROW(m.set(0, 0, 2), std::invalid_argument);
  EXPECT_THROW(m.at(2, 0), std::out_of_range);
  EXPECT_THROW(GFMatrix(Field::gf3, 0, 3), std::invalid_argument);
}

class FieldProperty : public ::testing::TestWithParam<Field> {};

TEST_P(FieldProperty, RankMatchesNaiveEliminationUpTo64) {
  const Field f = GetParam();
  const int p = static_cast<int>(modulus(f));
  std::mt19937_64 rng(1234 + p);
  std::uniform_int_distribution<std::size_t> dim(1, 64);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    auto d = oracle::random_dense(rng, r, c, p);
    // Force low rank sometimes by repeating rows.
    if (trial % 3 == 0)
      for (std::size_t i = 1; i < r; i += 2) d[i] = d[i - 1];
    ASSERT_EQ(rank(M(f, d)), oracle::rank(d, p)) << r << "x" << c;
  }
}

TEST_P(FieldProperty, PackUnpackRoundTrip) {
  const Field f = GetParam();
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 1 + rng() % 80, c = 1 + rng() % 150;
    std::vector<Element> entries(r * c);
    for (auto& e : entries) e = static_cast<Element>(rng() % modulus(f));
    const auto m = GFMatrix::from_entries(f, r, c, entries);
    ASSERT_EQ(m.entries(), entries);
    ASSERT_EQ(parse_matrix(to_string(m)), m);
  }
}

TEST_P(FieldProperty, MulAssociativeAndIdentityIsUnit) {
  const Field f = GetParam();
  const int p = static_cast<int>(modulus(f));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t a = 1 + rng() % 70, b = 1 + rng() % 70, c = 1 + rng() % 70, d = 1 + rng() % 70;
    const auto x = M(f, oracle::random_dense(rng, a, b, p));
    const auto y = M(f, oracle::random_dense(rng, b, c, p));
    const auto z = M(f, oracle::random_dense(rng, c, d, p));
    ASSERT_EQ(mat_mul(mat_mul(x, y), z), mat_mul(x, mat_mul(y, z)));
    ASSERT_EQ(dense(mat_mul(x, y)), oracle::mul(dense(x), dense(y), p));
    ASSERT_EQ(mat_mul(identity(a, f), x), x);
    ASSERT_EQ(mat_mul(x, identity(b, f)), x);
  }
}

TEST_P(FieldProperty, DetMultiplicativeAndMatchesLeibniz) {
  const Field f = GetParam();
  const int p = static_cast<int>(modulus(f));
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto a = oracle::random_dense(rng, n, n, p), b = oracle::random_dense(rng, n, n, p);
    ASSERT_EQ(det(M(f, a)), oracle::det(a, p));
    ASSERT_EQ(det(mat_mul(M(f, a), M(f, b))), field_mul(f, det(M(f, a)), det(M(f, b))));
  }
}

TEST_P(FieldProperty, FullRankIffInvertibleIffNonzeroDet) {
  const Field f = GetParam();
  const int p = static_cast<int>(modulus(f));
  std::mt19937_64 rng(31);
  int singular = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    const auto m = M(f, oracle::random_dense(rng, n, n, p));
    const bool full = rank(m) == n;
    const auto inv = inverse(m);
    ASSERT_EQ(full, inv.has_value());
    ASSERT_EQ(full, det(m) != 0);
    if (inv) {
      ASSERT_EQ(mat_mul(m, *inv), identity(n, f));
      ASSERT_EQ(mat_mul(*inv, m), identity(n, f));
    } else {
      ++singular;
    }
  }
  EXPECT_GT(singular, 0);
}

INSTANTIATE_TEST_SUITE_P(GF2AndGF3, FieldProperty, ::testing::Values(Field::gf2, Field::gf3),
                         [](const auto& info) { return info.param == Field::gf2 ? "gf2" : "gf3"; });

TEST(MatrixText, ExactFormat) {
  EXPECT_EQ(to_string(M(Field::gf3, {{1, 2, 0}, {0, 0, 1}})), "gfp 3 2 3\n120\n001\n");
}

TEST(MatrixText, RejectsMalformedInput) {
  EXPECT_THROW(parse_matrix(""), std::invalid_argument);
  EXPECT_THROW(parse_matrix("gfp 5 1 1\n1\n"), std::invalid_argument);
  EXPECT_THROW(parse_matrix("gfp 2 1 2\n12\n"), std::invalid_argument);
  EXPECT_THROW(parse_matrix("gfp 3 2 2\n12\n"), std::invalid_argument);
  EXPECT_THROW(parse_matrix("gfp 3 1 2\n1\n"), std::invalid_argument);
  EXPECT_THROW(parse_matrix("gfq 3 1 1\n1\n"), std::invalid_argument);
  EXPECT_THROW(parse_matrix("gfp 3 1 1 extra\n1\n"), std::invalid_argument);
}

}  // namespace
}  // namespace hcforce
