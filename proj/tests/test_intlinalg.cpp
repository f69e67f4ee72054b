#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rforms/intlinalg.hpp"

using namespace rforms;

TEST(Checked, OverflowThrows)
{
  EXPECT_THROW(checked::add(INT64_MAX, 1), std::overflow_error);
  EXPECT_THROW(checked::mul(INT64_MAX / 2 + 1, 2), std::overflow_error);
  EXPECT_THROW(checked::sub(INT64_MIN, 1), std::overflow_error);
  EXPECT_EQ(checked::mul(-3, 7), -21);
}

TEST(Checked, FloorDivAndMod)
{
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, -2), -4);
  EXPECT_EQ(mod_floor(-7, 2), 1);
  EXPECT_EQ(mod_floor(7, 3), 1);
}

TEST(Rat, NormalizesAndOrders)
{
  Rat a(2, -4);
  EXPECT_EQ(a.num(), -1);
  EXPECT_EQ(a.den(), 2);
  EXPECT_EQ(a.frac(), Rat(1, 2));
  EXPECT_EQ(Rat(1, 3) + Rat(1, 6), Rat(1, 2));
  EXPECT_EQ(Rat(3, 4) * Rat(2, 3), Rat(1, 2));
  EXPECT_EQ(Rat(1, 2) / Rat(1, 4), Rat(2));
  EXPECT_LT(Rat(1, 3), Rat(1, 2));
  EXPECT_EQ(Rat(-7, 2).floor(), -4);
  EXPECT_EQ(Rat(5, 10).str(), "1/2");
  EXPECT_EQ(Rat(4, 2).str(), "2");
  EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
}

TEST(RatVecModZ, ReducesIntoUnitInterval)
{
  RatVecModZ v(RatVec{Rat(-1, 4), Rat(5, 2), Rat(3)});
  EXPECT_EQ(v.str(), "(3/4,1/2,0)");
  EXPECT_TRUE((v + v + v + v).is_zero());
  RatVecModZ w(RatVec{Rat(1, 4), Rat(1, 2), Rat(0)});
  EXPECT_TRUE((v + w).is_zero());
  EXPECT_EQ((v - w).str(), "(1/2,0,0)");
}

TEST(IntMatrix, Basics)
{
  IntMatrix a{{1, 2}, {3, 4}};
  IntMatrix b{{0, 1}, {1, 0}};
  EXPECT_EQ((a * b), (IntMatrix{{2, 1}, {4, 3}}));
  EXPECT_EQ(a.transpose(), (IntMatrix{{1, 3}, {2, 4}}));
  EXPECT_EQ(a.det(), -2);
  EXPECT_EQ((IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}).det(), 4);
  EXPECT_TRUE((b * b).is_identity());
}

static IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound)
{
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = d(rng);
  return m;
}

TEST(Smith, FactorizationAndDivisibility)
{
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m = random_matrix(rng, r, c, 4);
    SmithForm s = smith_normal_form(m);
    ASSERT_EQ(s.u * m * s.v, s.d);
    ASSERT_TRUE((s.u * s.uinv).is_identity());
    ASSERT_TRUE((s.v * s.vinv).is_identity());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j)
          ASSERT_EQ(s.d(i, j), 0);
    IntVec dg = s.diag();
    for (std::size_t k = 0; k < s.rank; ++k) {
      ASSERT_GT(dg[k], 0);
      if (k + 1 < s.rank)
        ASSERT_EQ(dg[k + 1] % dg[k], 0);
    }
    for (std::size_t k = s.rank; k < dg.size(); ++k)
      ASSERT_EQ(dg[k], 0);
    if (r == c)
      ASSERT_EQ(std::abs(m.det()), s.rank == r ? [&] {
        std::int64_t p = 1;
        for (auto x : dg)
          p *= x;
        return p;
      }()
                                                : 0);
  }
}

/// brute force: all c in (1/N)Z^k / Z^k with a c = b mod 1
static std::set<RatVec> brute_solutions(const IntMatrix& a, const RatVec& b, std::int64_t N)
{
  std::set<RatVec> out;
  const std::size_t k = a.cols();
  std::vector<std::int64_t> digit(k, 0);
  for (;;) {
    RatVec c(k);
    for (std::size_t i = 0; i < k; ++i)
      c[i] = Rat(digit[i], N);
    RatVec ac = a.apply(c);
    bool ok = true;
    for (std::size_t i = 0; i < ac.size(); ++i)
      if (!(ac[i] - b[i]).is_integer())
        ok = false;
    if (ok)
      out.insert(RatVecModZ(c).entries());
    std::size_t i = 0;
    while (i < k && ++digit[i] == N)
      digit[i++] = 0;
    if (i == k)
      break;
  }
  return out;
}

TEST(SolveMod1, MatchesBruteForce)
{
  std::mt19937_64 rng(11);
  int checked_cases = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t k = 1 + rng() % 2, m = k + rng() % 2;
    IntMatrix a = random_matrix(rng, m, k, 3);
    if (smith_normal_form(a).rank != k)
      continue;
    RatVec b(m);
    for (auto& x : b)
      x = Rat(static_cast<std::int64_t>(rng() % 4), 4);
    ModSolution s = solve_mod1(a, b);
    // every solution has denominator dividing 4 * (product of elementary divisors)
    std::int64_t N = 4;
    for (auto d : smith_normal_form(a).diag())
      if (d)
        N *= d;
    if (N > 200)
      continue;
    auto brute = brute_solutions(a, b, N);
    ASSERT_EQ(s.solvable, !brute.empty());
    if (!s.solvable)
      continue;
    std::set<RatVec> mine;
    for (auto& c : s.enumerate()) {
      mine.insert(c.entries());
      IntVec co = s.coords(c);
      ASSERT_EQ(co.size(), s.gens.size());
    }
    ASSERT_EQ(mine, brute);
    ++checked_cases;
  }
  EXPECT_GT(checked_cases, 100);
}

TEST(SolveMod1, ReportsInfiniteAndUnsolvable)
{
  IntMatrix a{{2, 0}};
  ModSolution s = solve_mod1(a, RatVec{Rat(1, 2)});
  EXPECT_TRUE(s.solvable);
  EXPECT_FALSE(s.finite);
  IntMatrix z{{0}};
  EXPECT_FALSE(solve_mod1(z, RatVec{Rat(1, 2)}).solvable);
}

TEST(F2, RankAndQuotient)
{
  F2Basis b(4);
  EXPECT_TRUE(b.add(0b0011));
  EXPECT_TRUE(b.add(0b0110));
  EXPECT_FALSE(b.add(0b0101));
  EXPECT_TRUE(b.contains(0b0101));
  EXPECT_FALSE(b.contains(0b1000));
  EXPECT_EQ(b.rank(), 2u);
  EXPECT_EQ(b.quotient_dim(), 2u);
  EXPECT_EQ(two_group_quotient({0b1, 0b1, 0b10}, 3).quotient_dim(), 1u);
  EXPECT_EQ(mod2_mask(IntVec{2, -1, 3, 0}), 0b0110u);
}
