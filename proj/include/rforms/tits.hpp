#pragma once

#include <cstdint>
#include <vector>

#include "rforms/weyl.hpp"

namespace rforms {

/// sigma_w * exp(pi i t), t an F2 vector in coweight coordinates.
struct TitsElt {
  WeylElt w;
  std::uint64_t t = 0;

  friend bool operator==(const TitsElt& a, const TitsElt& b) { return a.w == b.w && a.t == b.t; }
};

/// Tits extension of a Weyl group by the two-torsion of a torus.  The torus
/// is given by its cocharacter lattice Z^n; simple roots are functionals on
/// it and simple coroots are vectors in it.
class TitsGroup {
public:
  TitsGroup() = default;
  TitsGroup(const WeylGroup& W, const std::vector<IntVec>& roots, const std::vector<IntVec>& coroots,
            std::size_t n)
      : W_(&W), n_(n)
  {
    if (n > 64)
      throw std::invalid_argument("torus rank above 64");
    for (auto& a : roots)
      root_mask_.push_back(mod2_mask(a));
    for (auto& c : coroots)
      coroot_mask_.push_back(mod2_mask(c));
  }

  /// the Tits group of G itself, on X-check
  static TitsGroup of_datum(const WeylGroup& W, const RootDatum& rd)
  {
    return TitsGroup(W, rd.simple_roots(), rd.simple_coroots(), rd.rank());
  }
  /// the Tits group of the simply connected cover of the derived group
  static TitsGroup simply_connected(const WeylGroup& W)
  {
    const IntMatrix& c = W.cartan();
    const std::size_t r = c.rows();
    std::vector<IntVec> roots, coroots;
    for (std::size_t i = 0; i < r; ++i) {
      roots.push_back(c.row(i));
      IntVec e(r, 0);
      e[i] = 1;
      coroots.push_back(e);
    }
    return TitsGroup(W, roots, coroots, r);
  }

  std::size_t torus_rank() const { return n_; }
  const WeylGroup& weyl() const { return *W_; }

  std::uint64_t m_alpha_simple(std::size_t s) const { return coroot_mask_[s]; }

  std::uint64_t act_simple(std::size_t s, std::uint64_t t) const
  {
    return (__builtin_popcountll(root_mask_[s] & t) & 1) ? t ^ coroot_mask_[s] : t;
  }
  std::uint64_t act(const WeylElt& w, std::uint64_t t) const
  {
    for (std::size_t k = w.word.size(); k-- > 0;)
      t = act_simple(w.word[k], t);
    return t;
  }
  std::uint64_t act_inverse(const WeylElt& w, std::uint64_t t) const
  {
    for (auto s : w.word)
      t = act_simple(s, t);
    return t;
  }

  TitsElt lift(const WeylElt& w) const { return TitsElt{w, 0}; }
  TitsElt sigma(std::size_t s) const { return TitsElt{W_->generator(s), 0}; }
  TitsElt sigma_inverse(std::size_t s) const { return TitsElt{W_->generator(s), coroot_mask_[s]}; }
  TitsElt torus(std::uint64_t t) const { return TitsElt{W_->identity(), t}; }

  TitsElt mul(const TitsElt& a, const TitsElt& b) const
  {
    // sigma_a sigma_b, one letter of b at a time; y tracks v^{-1}(rho)
    IntVec y = W_->act(std::vector<std::uint8_t>(a.w.word.rbegin(), a.w.word.rend()), W_->rho());
    std::uint64_t acc = 0;
    for (auto s : b.w.word) {
      bool descent = y[s] < 0;
      acc = act_simple(s, acc);
      if (descent)
        acc ^= coroot_mask_[s];
      W_->apply_simple(s, y);
    }
    WeylElt v = W_->inverse(W_->from_key(y));
    return TitsElt{v, acc ^ act_inverse(b.w, a.t) ^ b.t};
  }

  /// product of the sigma's along an arbitrary word
  TitsElt from_word(const std::vector<std::uint8_t>& word) const
  {
    TitsElt r = torus(0);
    for (auto s : word)
      r = mul(r, sigma(s));
    return r;
  }

  TitsElt inverse(const TitsElt& a) const
  {
    TitsElt r = torus(0);
    for (std::size_t k = a.w.word.size(); k-- > 0;)
      r = mul(r, sigma_inverse(a.w.word[k]));
    // exp(pi i t) sigma_u = sigma_u exp(pi i u^{-1} t)
    r.t ^= act_inverse(r.w, a.t);
    return r;
  }

  /// image under a diagram automorphism fixing the pinning
  TitsElt twist(const TitsElt& a, const std::vector<std::size_t>& perm,
                const std::vector<std::uint64_t>& torus_image_of_bit) const
  {
    TitsElt r{W_->twist(a.w, perm), 0};
    for (std::size_t k = 0; k < n_; ++k)
      if ((a.t >> k) & 1)
        r.t ^= torus_image_of_bit[k];
    return r;
  }

private:
  const WeylGroup* W_ = nullptr;
  std::size_t n_ = 0;
  std::vector<std::uint64_t> root_mask_, coroot_mask_;
};

/// m_alpha = alpha-check(-1) as an F2 vector
inline std::uint64_t m_alpha(const RootDatum& rd, std::size_t root_index)
{
  return mod2_mask(rd.coroot(root_index));
}

/// sigma_alpha for a positive root alpha = w(alpha_s), as w~ sigma_s w~^{-1};
/// w is found by descending alpha to a simple root, lowest index first
inline TitsElt sigma_root(const TitsGroup& g, const RootDatum& rd, std::size_t root)
{
  if (!rd.is_positive(root))
    throw std::invalid_argument("sigma_root needs a positive root");
  std::vector<std::uint8_t> word;
  for (;;) {
    for (std::size_t j = 0; j < rd.semisimple_rank(); ++j)
      if (rd.simple_root_index(j) == root) {
        TitsElt w = g.from_word(word);
        return g.mul(g.mul(w, g.sigma(j)), g.inverse(w));
      }
    std::size_t s = 0;
    while (dot(rd.root(root), rd.simple_coroots()[s]) <= 0)
      ++s;
    word.push_back(static_cast<std::uint8_t>(s));
    root = rd.reflect_root(s, root);
  }
}

} // namespace rforms
