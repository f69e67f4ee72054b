#pragma once

#include <memory>

#include "rforms/kgb.hpp"

namespace rforms {

class NoMatch : public std::logic_error {
public:
  NoMatch() : std::logic_error("no twisted involution of the dual inner class matches") {}
};

/// Maps twisted involutions of an inner class to those of its dual, so that
/// theta of the image is minus the transpose of theta.
class DualTau {
public:
  DualTau(const TwistedInvolutions& ti, const TwistedInvolutions& dti) : ti_(&ti), dti_(&dti)
  {
    const InnerClass& ic = ti.inner_class();
    const InnerClass& dic = dti.inner_class();
    const WeylElt w0 = ic.W().longest();
    map_.resize(ti.size());
    for (std::size_t i = 0; i < ti.size(); ++i) {
      // theta_check(tau w0) = -theta(tau)^t
      std::vector<std::uint8_t> word = ti[i].w.word;
      word.insert(word.end(), w0.word.begin(), w0.word.end());
      long j = dti.index_of(dic.W().normal_form(word));
      if (j < 0 || !matches(i, static_cast<std::size_t>(j)))
        j = search(i);
      map_[i] = static_cast<std::size_t>(j);
    }
  }

  std::size_t operator()(std::size_t tau) const { return map_[tau]; }

  bool matches(std::size_t i, std::size_t j) const
  {
    IntMatrix a = ti_->theta_X(i);
    IntMatrix b = dti_->theta_X(j);
    return (b + a.transpose()) == IntMatrix(a.rows(), a.cols(), 0);
  }

private:
  long search(std::size_t i) const
  {
    for (std::size_t j = 0; j < dti_->size(); ++j)
      if (matches(i, j))
        return static_cast<long>(j);
    throw NoMatch();
  }

  const TwistedInvolutions* ti_;
  const TwistedInvolutions* dti_;
  std::vector<std::size_t> map_;
};

/// brute-force oracle: all (i, j) with theta_check(j) = -theta(i)^t
inline std::vector<std::pair<std::size_t, std::size_t>> dual_tau_brute(const TwistedInvolutions& ti,
                                                                       const TwistedInvolutions& dti)
{
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < ti.size(); ++i)
    for (std::size_t j = 0; j < dti.size(); ++j) {
      IntMatrix a = ti.theta_X(i), b = dti.theta_X(j);
      if ((b + a.transpose()) == IntMatrix(a.rows(), a.cols(), 0))
        out.emplace_back(i, j);
    }
  return out;
}

/// Whether rho lies in X. When it does not, representation counts are
/// those of the rho-cover.
inline bool rho_in_lattice(const RootDatum& rd)
{
  for (const Rat& x : rd.rho())
    if (!x.is_integer())
      return false;
  return true;
}

/// Central square selectors: "1", "-1" (meaning exp(2 pi i rho-check)),
/// "*" (no restriction) or an explicit vector "(a,b,...)" in X-check
/// coordinates.
inline std::optional<RatVecModZ> parse_square(const RootDatum& rd, const std::string& spec)
{
  if (spec == "*")
    return std::nullopt;
  if (spec == "1")
    return RatVecModZ(rd.rank());
  if (spec == "-1")
    return RatVecModZ(rd.rho_check());
  if (spec.size() >= 2 && spec.front() == '(' && spec.back() == ')') {
    RatVec v;
    std::string body = spec.substr(1, spec.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto slash = item.find('/');
      try {
        if (slash == std::string::npos)
          v.push_back(Rat(std::stoll(item)));
        else
          v.push_back(Rat(std::stoll(item.substr(0, slash)), std::stoll(item.substr(slash + 1))));
      } catch (const std::logic_error&) {
        throw std::invalid_argument("bad central element '" + spec + "'");
      }
    }
    if (v.size() != rd.rank())
      throw std::invalid_argument("central element '" + spec + "' has the wrong length");
    if (!is_central(rd, v))
      throw std::invalid_argument("'" + spec + "' is not central");
    return RatVecModZ(v);
  }
  throw std::invalid_argument("bad central element '" + spec + "' (use 1, -1, * or (a,b,...))");
}

struct ZPair {
  std::size_t x = 0, y = 0;  // ids in the two KGB spaces
  std::size_t tau = 0, dual_tau = 0;
  RatVecModZ x_square, y_square;
};

struct ZBlock {
  std::size_t tau = 0, dual_tau = 0;
  std::size_t nx = 0, ny = 0;
  std::size_t size() const { return nx * ny; }
};

/// The two-sided space Z(G, gamma), optionally restricted in x^2 and y^2.
class ZSpace {
public:
  ZSpace(InnerClass&&, std::optional<RatVecModZ> = std::nullopt, std::optional<RatVecModZ> = std::nullopt,
         bool = true, unsigned = 1) = delete;
  ZSpace(const InnerClass& ic, std::optional<RatVecModZ> xsq = std::nullopt,
         std::optional<RatVecModZ> ysq = std::nullopt, bool links = true, unsigned threads = 1)
      : ic_(&ic), dic_(ic.dual())
  {
    KGBOptions xo{std::nullopt, links, threads};
    if (xsq)
      xo.squares = std::vector<RatVecModZ>{*xsq};
    KGBOptions yo{std::nullopt, links, threads};
    if (ysq)
      yo.squares = std::vector<RatVecModZ>{*ysq};
    X_ = std::make_unique<KGBSpace>(ic, xo);
    Y_ = std::make_unique<KGBSpace>(dic_, yo);
    dual_ = std::make_unique<DualTau>(X_->twisted_involutions(), Y_->twisted_involutions());
    const TwistedInvolutions& ti = X_->twisted_involutions();
    for (std::size_t t = 0; t < ti.size(); ++t) {
      ZBlock b;
      b.tau = t;
      b.dual_tau = (*dual_)(t);
      auto [x0, x1] = X_->fiber_range(t);
      auto [y0, y1] = Y_->fiber_range(b.dual_tau);
      b.nx = x1 - x0;
      b.ny = y1 - y0;
      blocks_.push_back(b);
      for (std::size_t x = x0; x < x1; ++x)
        for (std::size_t y = y0; y < y1; ++y)
          pairs_.push_back(ZPair{x, y, t, b.dual_tau, (*X_)[x].square, (*Y_)[y].square});
    }
  }

  const InnerClass& inner_class() const { return *ic_; }
  const InnerClass& dual_inner_class() const { return dic_; }
  const KGBSpace& X() const { return *X_; }
  const KGBSpace& Y() const { return *Y_; }
  const DualTau& dual_tau() const { return *dual_; }
  const std::vector<ZPair>& pairs() const { return pairs_; }
  const std::vector<ZBlock>& blocks() const { return blocks_; }
  std::size_t size() const { return pairs_.size(); }

private:
  const InnerClass* ic_;
  InnerClass dic_;
  std::unique_ptr<KGBSpace> X_, Y_;
  std::unique_ptr<DualTau> dual_;
  std::vector<ZPair> pairs_;
  std::vector<ZBlock> blocks_;
};

/// Per-tau block sizes of Z computed from fiber sizes alone.
inline std::vector<ZBlock> count_Z_blocks(const InnerClass& ic, std::optional<RatVecModZ> xsq,
                                          std::optional<RatVecModZ> ysq, unsigned threads = 1)
{
  InnerClass dic = ic.dual();
  TwistedInvolutions ti(ic), dti(dic);
  TitsGroup tg = TitsGroup::of_datum(ic.W(), ic.rd());
  TitsGroup dtg = TitsGroup::of_datum(dic.W(), dic.rd());
  DualTau dual(ti, dti);
  auto count = [](const InnerClass& c, const TitsGroup& g, const WeylElt& w,
                  const std::optional<RatVecModZ>& z) -> std::size_t {
    Fiber f(c, g, w);
    return z ? f.points_with_square(*z).size() : f.all_points().size();
  };
  std::vector<ZBlock> blocks(ti.size());
  parallel_for(ti.size(), threads, [&](std::size_t t) {
    ZBlock& b = blocks[t];
    b.tau = t;
    b.dual_tau = dual(t);
    b.nx = count(ic, tg, ti[t].w, xsq);
    b.ny = b.nx ? count(dic, dtg, dti[b.dual_tau].w, ysq) : 0;
  });
  return blocks;
}

inline std::size_t count_Z(const InnerClass& ic, std::optional<RatVecModZ> xsq, std::optional<RatVecModZ> ysq,
                           unsigned threads = 1)
{
  std::size_t n = 0;
  for (auto& b : count_Z_blocks(ic, std::move(xsq), std::move(ysq), threads))
    n += b.size();
  return n;
}

/// |Z| for Sp(2n) with x^2 = -I and y^2 = I
inline std::size_t sp2n_count(std::size_t n, unsigned threads = 1)
{
  if (n == 0 || n > 8)
    throw std::invalid_argument("sp2n_count: n must be between 1 and 8");
  RootDatum rd = from_type("C" + std::to_string(n), Isogeny::sc);
  InnerClass ic = make_inner_class(rd, "c");
  return count_Z(ic, RatVecModZ(rd.rho_check()), RatVecModZ(rd.rank()), threads);
}

/// Number of pairs with x in the given form, by y^2.
inline std::map<RatVecModZ, std::size_t> langlands_count(const ZSpace& Z, std::size_t form)
{
  std::map<RatVecModZ, std::size_t> out;
  for (auto& p : Z.pairs())
    if (Z.X().form_of(p.x) == form)
      ++out[p.y_square];
  return out;
}

/// sum over Cartan classes of |W / W(K,H)| * |H(R)/H(R)^0|
inline std::size_t langlands_formula(const KGBSpace& X, std::size_t form)
{
  std::size_t n = 0;
  const std::uint64_t w = X.inner_class().W().order();
  for (auto& c : cartans_for(X, form))
    n += static_cast<std::size_t>(w / real_weyl(X, c.representative).order) << c.signature.a;
  return n;
}

struct DualityReport {
  std::size_t size = 0, dual_size = 0;
  bool totals_match = false;
  bool blocks_transpose = false;
  bool swap_bijective = false;  // only checked when the double dual is literally the same
  bool swap_checked = false;
  bool ok() const { return totals_match && blocks_transpose && (!swap_checked || swap_bijective); }
};

inline DualityReport duality_check(const InnerClass& ic, unsigned threads = 1)
{
  DualityReport r;
  ZSpace Z(ic, std::nullopt, std::nullopt, false, threads);
  const InnerClass& dic = Z.dual_inner_class();
  ZSpace Zd(dic, std::nullopt, std::nullopt, false, threads);
  r.size = Z.size();
  r.dual_size = Zd.size();
  r.totals_match = r.size == r.dual_size;

  const TwistedInvolutions& dti = Zd.X().twisted_involutions();
  const TwistedInvolutions& ddti = Zd.Y().twisted_involutions();
  r.blocks_transpose = Z.blocks().size() == Zd.blocks().size();
  for (auto& b : Z.blocks()) {
    // the block of the dual side sitting over the matching twisted involution
    const ZBlock& d = Zd.blocks()[b.dual_tau];
    const WeylElt& back = ddti[d.dual_tau].w;
    if (!(d.nx == b.ny && d.ny == b.nx && back == Z.X().twisted_involutions()[b.tau].w &&
          dti[b.dual_tau].w == Z.Y().twisted_involutions()[b.dual_tau].w))
      r.blocks_transpose = false;
  }

  const InnerClass& ddic = Zd.dual_inner_class();
  if (ddic.rd() == ic.rd() && ddic.gamma() == ic.gamma()) {
    r.swap_checked = true;
    using Key = std::pair<std::vector<std::uint8_t>, RatVec>;
    auto key = [](const KGBSpace& X, std::size_t id) {
      return Key{X.tau_word(id).word, X[id].coord.entries()};
    };
    std::vector<std::pair<Key, Key>> a, b;
    for (auto& p : Z.pairs())
      a.emplace_back(key(Z.X(), p.x), key(Z.Y(), p.y));
    for (auto& p : Zd.pairs())
      b.emplace_back(key(Zd.Y(), p.y), key(Zd.X(), p.x));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    r.swap_bijective = a == b && std::adjacent_find(a.begin(), a.end()) == a.end();
  }
  return r;
}

} // namespace rforms
