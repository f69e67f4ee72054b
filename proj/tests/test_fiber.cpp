#include <gtest/gtest.h>

#include <random>

#include "rforms/fiber.hpp"
#include "rforms/kgb.hpp"

using namespace rforms;

TEST(TorusSignature, BasicInvolutions)
{
  EXPECT_EQ(torus_signature(IntMatrix{{1}}), (TorusSignature{0, 1, 0}));
  EXPECT_EQ(torus_signature(IntMatrix{{-1}}), (TorusSignature{1, 0, 0}));
  EXPECT_EQ(torus_signature(IntMatrix{{0, 1}, {1, 0}}), (TorusSignature{0, 0, 1}));
  EXPECT_EQ(torus_signature(IntMatrix{{1, 0}, {0, -1}}), (TorusSignature{1, 1, 0}));
  EXPECT_EQ(torus_signature(IntMatrix{{0, 1}, {1, 0}}).name(), "C*");
  EXPECT_EQ(torus_signature(IntMatrix{{1, 0}, {0, -1}}).name(), "S1xR*");
  EXPECT_EQ(torus_signature(IntMatrix::identity(3)).name(), "S1^3");
  EXPECT_THROW(torus_signature(IntMatrix{{2}}), NotAnInvolution);
  EXPECT_THROW(torus_signature(IntMatrix{{0, 1}, {-1, 0}}), NotAnInvolution);
}

TEST(TorusSignature, RanksAddUpAndDualitySwaps)
{
  for (auto [t, spec] : {std::pair{"C3", "c"}, std::pair{"A3", "u"}, std::pair{"A3", "c"}, std::pair{"G2", "c"}}) {
    for (auto iso : {Isogeny::sc, Isogeny::ad}) {
      InnerClass ic = make_inner_class(from_type(t, iso), spec);
      TwistedInvolutions ti(ic);
      for (std::size_t i = 0; i < ti.size(); ++i) {
        IntMatrix th = theta_matrix(ic, ti[i].w);
        TorusSignature s = torus_signature(th);
        EXPECT_EQ(s.a + s.b + 2 * s.c, ic.rd().rank());
        // -theta^t describes the dual torus: circles and lines trade places
        TorusSignature d = torus_signature(-th.transpose());
        EXPECT_EQ(d.a, s.b);
        EXPECT_EQ(d.b, s.a);
        EXPECT_EQ(d.c, s.c);
      }
    }
  }
}

static std::vector<RatVec> lambdas(const KGBSpace& X, std::size_t tau)
{
  std::vector<RatVec> out;
  auto [b, e] = X.fiber_range(tau);
  for (std::size_t id = b; id < e; ++id)
    out.push_back(RatVecModZ(X.lambda(id)).entries());
  return out;
}

TEST(Fiber, SL2Contents)
{
  InnerClass ic = make_inner_class(from_type("A1", Isogeny::sc), "c");
  KGBSpace X(ic);
  const auto& ti = X.twisted_involutions();
  ASSERT_EQ(ti.size(), 2u);
  // over e: Id, -Id (square Id) and t, -t (square -Id), lambda in (1/4) Z / Z
  auto e = lambdas(X, 0);
  std::sort(e.begin(), e.end());
  EXPECT_EQ(e, (std::vector<RatVec>{{Rat(0)}, {Rat(1, 4)}, {Rat(1, 2)}, {Rat(3, 4)}}));
  // over s: the single element n, with square -Id
  auto [b, end] = X.fiber_range(1);
  ASSERT_EQ(end - b, 1u);
  EXPECT_EQ(X[b].square, RatVecModZ(RatVec{Rat(1, 2)}));
  const Fiber& fe = X.fiber(0);
  EXPECT_EQ(fe.square(fe.coord(RatVec{Rat(1, 4)})), RatVecModZ(RatVec{Rat(1, 2)}));
  EXPECT_EQ(fe.square(fe.coord(RatVec{Rat(1, 2)})), RatVecModZ(RatVec{Rat(0)}));
  EXPECT_EQ(X.fiber(1).points_with_square(RatVecModZ(RatVec{Rat(0)})).solvable, false);
}

TEST(Fiber, PGL2Contents)
{
  InnerClass ic = make_inner_class(from_type("A1", Isogeny::ad), "c");
  KGBSpace X(ic);
  auto e = lambdas(X, 0);
  EXPECT_EQ(e, (std::vector<RatVec>{{Rat(0)}, {Rat(1, 2)}}));
  EXPECT_EQ(X.fiber_range(1).second - X.fiber_range(1).first, 1u);
  for (std::size_t id = 0; id < X.size(); ++id)
    EXPECT_TRUE(X[id].square.is_zero());
}

TEST(Fiber, SlicesArePowersOfTwo)
{
  for (auto [t, spec] : {std::pair{"C3", "c"}, std::pair{"A3", "u"}, std::pair{"D4", "c"}, std::pair{"A2", "c"}}) {
    for (auto iso : {Isogeny::sc, Isogeny::ad}) {
      InnerClass ic = make_inner_class(from_type(t, iso), spec);
      TitsGroup g = TitsGroup::of_datum(ic.W(), ic.rd());
      TwistedInvolutions ti(ic);
      auto centers = center_elements(ic.rd());
      for (std::size_t i = 0; i < ti.size(); ++i) {
        Fiber f(ic, g, ti[i].w);
        std::size_t total = 0;
        for (auto& z : centers) {
          ModSolution s = f.points_with_square(z);
          if (!s.solvable)
            continue;
          std::size_t n = s.enumerate().size();
          EXPECT_EQ(n, std::size_t(1) << f.signature().b);
          for (auto& c : s.enumerate())
            EXPECT_EQ(f.square(c), z);
          total += n;
        }
        EXPECT_EQ(total, f.all_points().enumerate().size());
        EXPECT_GT(total, 0u);
      }
    }
  }
}

TEST(Fiber, RepresentativeRoundTrip)
{
  InnerClass ic = make_inner_class(from_type("B3", Isogeny::sc), "c");
  TitsGroup g = TitsGroup::of_datum(ic.W(), ic.rd());
  TwistedInvolutions ti(ic);
  std::mt19937_64 rng(2);
  for (std::size_t i = 0; i < ti.size(); ++i) {
    Fiber f(ic, g, ti[i].w);
    for (int k = 0; k < 20; ++k) {
      RatVec lam(3);
      for (auto& x : lam)
        x = Rat(static_cast<std::int64_t>(rng() % 8), 8);
      RatVecModZ c = f.coord(lam);
      EXPECT_EQ(f.coord(f.representative(c)), c);
      // lambda and lambda + (1 - theta) mu are torus conjugate
      RatVec mu(3);
      for (auto& x : mu)
        x = Rat(static_cast<std::int64_t>(rng() % 6), 3);
      RatVec shifted = lam;
      RatVec tmu = f.theta_coX().apply(mu);
      for (std::size_t j = 0; j < 3; ++j)
        shifted[j] += mu[j] - tmu[j];
      EXPECT_EQ(f.coord(shifted), c);
    }
  }
}

TEST(Fiber, BaseFiberSpace)
{
  // GL(2)-like swap: unequal rank A1 x A1, the twist exchanges the factors
  InnerClass ic = make_inner_class(from_type("A1.A1", Isogeny::sc), "u");
  TitsGroup g = TitsGroup::of_datum(ic.W(), ic.rd());
  auto centers = center_elements(ic.rd());
  FiberSpace fs = fiber_space(ic, g, ic.W().identity(), centers);
  EXPECT_EQ(fs.dim, 0u);
  std::size_t nonempty = 0;
  for (auto& sl : fs.slices) {
    if (!sl.base_point)
      continue;
    ++nonempty;
    EXPECT_EQ(sl.points.size(), 1u);
    EXPECT_EQ(twist_center(ic, sl.z), sl.z);
  }
  // only the twist-fixed central elements (1,1) and (-1,-1) occur
  EXPECT_EQ(nonempty, 2u);

  InnerClass c2 = make_inner_class(from_type("C2", Isogeny::sc), "c");
  TitsGroup g2 = TitsGroup::of_datum(c2.W(), c2.rd());
  FiberSpace f2 = fiber_space(c2, g2, c2.W().identity(), center_elements(c2.rd()));
  EXPECT_EQ(f2.dim, 2u);
  for (auto& sl : f2.slices) {
    ASSERT_TRUE(sl.base_point.has_value());
    EXPECT_EQ(sl.points.size(), 4u);
    EXPECT_EQ(sl.points.front(), *sl.base_point);
  }
}

TEST(Fiber, InfiniteCenterIsRefused)
{
  InnerClass ic = make_inner_class(from_type("A1.T1", Isogeny::sc), "c");
  EXPECT_THROW(KGBSpace X(ic), InfiniteCenterFixedPoints);
  // restricting to one square makes the space finite
  KGBSpace Y(ic, KGBOptions{std::vector<RatVecModZ>{RatVecModZ(2)}, true, 1});
  EXPECT_GT(Y.size(), 0u);
}
