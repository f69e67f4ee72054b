#pragma once

#include <optional>
#include <vector>

#include "rforms/tits.hpp"

namespace rforms {

class InfiniteCenterFixedPoints : public std::runtime_error {
public:
  InfiniteCenterFixedPoints()
      : std::runtime_error("the fixed points of the twist on the center are infinite; "
                           "restrict to a central square")
  {
  }
};

class NotAnInvolution : public std::runtime_error {
public:
  NotAnInvolution() : std::runtime_error("matrix is not an involution") {}
};

/// (a, b, c): numbers of R^x, S^1 and C^x factors of the real torus whose
/// Cartan involution acts on X-check by theta.
struct TorusSignature {
  std::size_t a = 0, b = 0, c = 0;
  friend bool operator==(const TorusSignature&, const TorusSignature&) = default;
  std::string str() const
  {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }
  std::string name() const
  {
    std::string s;
    auto part = [&](std::size_t k, const char* f) {
      if (k == 0)
        return;
      if (!s.empty())
        s += "x";
      s += f;
      if (k > 1)
        s += "^" + std::to_string(k);
    };
    part(b, "S1");
    part(a, "R*");
    part(c, "C*");
    return s.empty() ? "1" : s;
  }
};

inline std::size_t f2_rank(const IntMatrix& m)
{
  F2Basis b(m.rows() <= 64 ? m.rows() : 64);
  if (m.rows() > 64)
    throw std::invalid_argument("F2 rank of a matrix with more than 64 rows");
  for (std::size_t j = 0; j < m.cols(); ++j)
    b.add(mod2_mask(m.col(j)));
  return b.rank();
}

inline TorusSignature torus_signature(const IntMatrix& theta)
{
  const std::size_t n = theta.rows();
  if (theta.cols() != n || !(theta * theta).is_identity())
    throw NotAnInvolution();
  IntMatrix one = IntMatrix::identity(n);
  std::size_t rplus = rank(one + theta), rminus = rank(one - theta);
  std::size_t c = f2_rank(one + theta);
  return TorusSignature{rminus - c, rplus - c, c};
}

/// theta_tau = (action of tau) o gamma, as a matrix on X-check
inline IntMatrix theta_matrix(const InnerClass& ic, const WeylElt& tau)
{
  return ic.theta_X(tau).transpose();
}

/// Structure of the fiber over one twisted involution tau.  Points of the
/// fiber are exp(2 pi i lambda) sigma_tau delta modulo torus conjugation;
/// such a class is determined by (1+theta) lambda modulo (1+theta) X-check,
/// which we encode by a vector c in (Q/Z)^{r+}.
class Fiber {
public:
  Fiber() = default;
  Fiber(const InnerClass& ic, const TitsGroup& tits, const WeylElt& tau) : tau_(tau)
  {
    const RootDatum& rd = ic.rd();
    const std::size_t n = rd.rank();
    theta_coX_ = theta_matrix(ic, tau);
    snf_ = smith_normal_form(IntMatrix::identity(n) + theta_coX_);
    rplus_ = snf_.rank;
    b2_ = IntMatrix(n, rplus_);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < rplus_; ++k)
        b2_(i, k) = checked::mul(snf_.uinv(i, k), snf_.d(k, k));
    // (sigma_tau delta)^2 = sigma_tau sigma_{gamma(tau)}
    TitsElt sq = tits.mul(tits.lift(tau), tits.lift(ic.twist(tau)));
    if (!sq.w.is_identity())
      throw std::logic_error("not a twisted involution");
    t_tau_ = sq.t;
    half_t_.assign(n, Rat(0));
    for (std::size_t k = 0; k < n; ++k)
      if ((t_tau_ >> k) & 1)
        half_t_[k] = Rat(1, 2);
    roots_ = rd.simple_root_matrix();
    signature_ = torus_signature(theta_coX_);
  }

  const WeylElt& tau() const { return tau_; }
  const IntMatrix& theta_coX() const { return theta_coX_; }
  std::size_t rplus() const { return rplus_; }
  std::uint64_t tits_square() const { return t_tau_; }
  const TorusSignature& signature() const { return signature_; }

  RatVecModZ coord(const RatVec& lambda) const
  {
    RatVec y = snf_.vinv.apply(lambda);
    y.resize(rplus_);
    return RatVecModZ(y);
  }
  RatVec representative(const RatVecModZ& c) const
  {
    RatVec y(theta_coX_.rows(), Rat(0));
    for (std::size_t k = 0; k < rplus_; ++k)
      y[k] = c[k];
    return snf_.v.apply(y);
  }
  /// the central element x^2, as a point of X-check (x) Q / X-check
  RatVecModZ square(const RatVecModZ& c) const
  {
    RatVec z = b2_.apply(c.entries());
    for (std::size_t k = 0; k < z.size(); ++k)
      z[k] += half_t_[k];
    return RatVecModZ(z);
  }

  /// all points of the fiber with central square
  ModSolution all_points() const
  {
    IntMatrix nmat = roots_ * b2_;
    RatVec rhs = roots_.apply(half_t_);
    for (auto& x : rhs)
      x = -x;
    ModSolution s = solve_mod1(nmat, rhs);
    if (s.solvable && !s.finite)
      throw InfiniteCenterFixedPoints();
    return s;
  }
  /// the points with square z
  ModSolution points_with_square(const RatVecModZ& z) const
  {
    RatVec rhs(z.size());
    for (std::size_t k = 0; k < z.size(); ++k)
      rhs[k] = z[k] - half_t_[k];
    return solve_mod1(b2_, rhs);
  }
  /// the group H_{-tau}/A_tau acting on each nonempty slice
  ModSolution fiber_group() const
  {
    return solve_mod1(b2_, RatVec(b2_.rows(), Rat(0)));
  }

private:
  WeylElt tau_;
  IntMatrix theta_coX_;
  SmithForm snf_;
  std::size_t rplus_ = 0;
  IntMatrix b2_, roots_;
  std::uint64_t t_tau_ = 0;
  RatVec half_t_;
  TorusSignature signature_;
};

/// Per-slice description used by fiber_space().
struct FiberSpace {
  WeylElt tau;
  std::size_t dim = 0;                   // F2 dimension of the fiber group
  std::vector<RatVec> basis;             // representatives in (1/2)X-check
  struct Slice {
    RatVecModZ z;
    std::optional<RatVec> base_point;   // lambda, or empty
    std::vector<RatVec> points;         // lambda's, ordered by fiber coordinate
  };
  std::vector<Slice> slices;
};

/// Base points and slices over the given central elements.
inline FiberSpace fiber_space(const InnerClass& ic, const TitsGroup& tits, const WeylElt& tau,
                              const std::vector<RatVecModZ>& centrals)
{
  Fiber f(ic, tits, tau);
  FiberSpace fs;
  fs.tau = tau;
  ModSolution g = f.fiber_group();
  fs.dim = g.gens.size();
  for (auto& gen : g.gens) {
    // representative (1+theta)lambda/2 of each generator
    RatVec lam = f.representative(gen);
    RatVec img = (IntMatrix::identity(lam.size()) + f.theta_coX()).apply(lam);
    for (auto& x : img)
      x = x / Rat(2);
    fs.basis.push_back(RatVecModZ(img).entries());
  }
  for (auto& z : centrals) {
    FiberSpace::Slice sl;
    sl.z = z;
    ModSolution s = f.points_with_square(z);
    if (s.solvable) {
      auto pts = s.enumerate();
      std::sort(pts.begin(), pts.end());
      IntVec base_coords = s.coords(pts.front());
      std::vector<std::pair<std::uint64_t, RatVecModZ>> keyed;
      for (auto& p : pts) {
        IntVec cc = s.coords(p);
        std::uint64_t key = 0;
        for (std::size_t k = 0; k < cc.size(); ++k)
          key |= std::uint64_t(mod_floor(cc[k] - base_coords[k], s.orders[k]) & 1) << k;
        keyed.emplace_back(key, p);
      }
      std::sort(keyed.begin(), keyed.end());
      sl.base_point = RatVecModZ(f.representative(pts.front())).entries();
      for (auto& [k, p] : keyed)
        sl.points.push_back(RatVecModZ(f.representative(p)).entries());
    }
    fs.slices.push_back(std::move(sl));
  }
  return fs;
}

} // namespace rforms
