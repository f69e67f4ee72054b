#pragma once

#include <cstdint>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rforms/rootdatum.hpp"

namespace rforms {

/// Weyl group element as its shortlex-minimal reduced word (0-based letters).
struct WeylElt {
  std::vector<std::uint8_t> word;

  std::size_t length() const { return word.size(); }
  bool is_identity() const { return word.empty(); }

  friend bool operator==(const WeylElt& a, const WeylElt& b) { return a.word == b.word; }
  friend bool operator<(const WeylElt& a, const WeylElt& b)
  {
    if (a.word.size() != b.word.size())
      return a.word.size() < b.word.size();
    return a.word < b.word;
  }

  /// 1-based comma separated, empty for the identity
  std::string str() const
  {
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i)
        s += ",";
      s += std::to_string(word[i] + 1);
    }
    return s;
  }
};

struct IntVecHash {
  std::size_t operator()(const IntVec& v) const noexcept
  {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

std::uint64_t weyl_group_order(const IntMatrix& cartan);

/// Coxeter arithmetic driven by a Cartan matrix.  Elements are encoded by
/// the image w(rho) in fundamental weight coordinates.
class WeylGroup {
public:
  WeylGroup() = default;
  explicit WeylGroup(const IntMatrix& cartan) : c_(cartan), r_(cartan.rows()) {}

  std::size_t rank() const { return r_; }
  const IntMatrix& cartan() const { return c_; }

  void apply_simple(std::size_t s, IntVec& v) const
  {
    std::int64_t vs = v[s];
    if (vs == 0)
      return;
    for (std::size_t j = 0; j < r_; ++j)
      v[j] -= vs * c_(s, j);
  }

  /// w applied to a weight given in fundamental weight coordinates
  IntVec act(const std::vector<std::uint8_t>& word, IntVec v) const
  {
    for (std::size_t k = word.size(); k-- > 0;)
      apply_simple(word[k], v);
    return v;
  }

  IntVec rho() const { return IntVec(r_, 1); }
  IntVec key(const WeylElt& w) const { return act(w.word, rho()); }
  IntVec key_of_word(const std::vector<std::uint8_t>& word) const { return act(word, rho()); }

  /// element whose rho-image is v
  WeylElt from_key(IntVec v) const
  {
    WeylElt w;
    for (;;) {
      std::size_t s = r_;
      for (std::size_t j = 0; j < r_; ++j)
        if (v[j] < 0) {
          s = j;
          break;
        }
      if (s == r_)
        break;
      w.word.push_back(static_cast<std::uint8_t>(s));
      apply_simple(s, v);
    }
    return w;
  }

  WeylElt normal_form(const std::vector<std::uint8_t>& word) const
  {
    return from_key(key_of_word(word));
  }
  WeylElt identity() const { return WeylElt{}; }
  WeylElt generator(std::size_t s) const { return WeylElt{{static_cast<std::uint8_t>(s)}}; }

  WeylElt mul(const WeylElt& a, const WeylElt& b) const
  {
    std::vector<std::uint8_t> w = a.word;
    w.insert(w.end(), b.word.begin(), b.word.end());
    return normal_form(w);
  }
  WeylElt inverse(const WeylElt& a) const
  {
    return normal_form(std::vector<std::uint8_t>(a.word.rbegin(), a.word.rend()));
  }
  WeylElt left_mul(std::size_t s, const WeylElt& w) const
  {
    IntVec v = key(w);
    apply_simple(s, v);
    return from_key(v);
  }
  WeylElt right_mul(const WeylElt& w, std::size_t s) const
  {
    auto word = w.word;
    word.push_back(static_cast<std::uint8_t>(s));
    return normal_form(word);
  }
  bool is_left_descent(std::size_t s, const WeylElt& w) const { return key(w)[s] < 0; }
  bool is_right_descent(const WeylElt& w, std::size_t s) const
  {
    return is_left_descent(s, inverse(w));
  }

  WeylElt longest() const
  {
    IntVec v(r_, -1);
    return from_key(v);
  }

  /// image of a word under a permutation of the simple reflections
  WeylElt twist(const WeylElt& w, const std::vector<std::size_t>& perm) const
  {
    std::vector<std::uint8_t> word(w.word.size());
    for (std::size_t k = 0; k < word.size(); ++k)
      word[k] = static_cast<std::uint8_t>(perm[w.word[k]]);
    return normal_form(word);
  }

  /// a random reduced word for w, choosing left descents at random
  template <class Rng>
  std::vector<std::uint8_t> random_reduced_word(const WeylElt& w, Rng& rng) const
  {
    IntVec v = key(w);
    std::vector<std::uint8_t> out;
    for (;;) {
      std::vector<std::size_t> desc;
      for (std::size_t j = 0; j < r_; ++j)
        if (v[j] < 0)
          desc.push_back(j);
      if (desc.empty())
        break;
      std::size_t s = desc[rng() % desc.size()];
      out.push_back(static_cast<std::uint8_t>(s));
      apply_simple(s, v);
    }
    return out;
  }

  /// brute force listing, for test oracles only
  std::vector<WeylElt> enumerate(std::size_t cap = 2000000) const
  {
    std::unordered_map<IntVec, std::size_t, IntVecHash> seen;
    std::vector<IntVec> queue{rho()};
    seen.emplace(rho(), 0);
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (std::size_t s = 0; s < r_; ++s) {
        IntVec v = queue[q];
        apply_simple(s, v);
        if (seen.emplace(v, queue.size()).second) {
          queue.push_back(v);
          if (queue.size() > cap)
            throw std::length_error("Weyl group too large for brute force enumeration");
        }
      }
    std::vector<WeylElt> out;
    out.reserve(queue.size());
    for (auto& v : queue)
      out.push_back(from_key(v));
    return out;
  }

  std::uint64_t order() const { return weyl_group_order(c_); }

private:
  IntMatrix c_;
  std::size_t r_ = 0;
};

/// Order of the Weyl group of a finite-type Cartan matrix, by classification
/// of its connected components.
inline std::uint64_t weyl_group_order(const IntMatrix& cartan)
{
  const std::size_t r = cartan.rows();
  std::vector<int> comp(r, -1);
  int nc = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (comp[i] >= 0)
      continue;
    std::vector<std::size_t> st{i};
    comp[i] = nc;
    while (!st.empty()) {
      std::size_t a = st.back();
      st.pop_back();
      for (std::size_t b = 0; b < r; ++b)
        if (comp[b] < 0 && cartan(a, b) != 0) {
          comp[b] = nc;
          st.push_back(b);
        }
    }
    ++nc;
  }
  auto fact = [](std::uint64_t n) {
    std::uint64_t f = 1;
    for (std::uint64_t k = 2; k <= n; ++k)
      f *= k;
    return f;
  };
  std::uint64_t total = 1;
  for (int c = 0; c < nc; ++c) {
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < r; ++i)
      if (comp[i] == c)
        nodes.push_back(i);
    const std::size_t n = nodes.size();
    IntMatrix sub(n, n);
    bool simply_laced = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        sub(a, b) = cartan(nodes[a], nodes[b]);
        if (a != b && sub(a, b) < -1)
          simply_laced = false;
      }
    std::vector<IntVec> roots, coroots;
    for (std::size_t a = 0; a < n; ++a) {
      roots.push_back(sub.row(a));
      IntVec e(n, 0);
      e[a] = 1;
      coroots.push_back(e);
    }
    std::uint64_t npos = RootDatum(roots, coroots, n).num_pos();
    std::uint64_t w = 0;
    if (simply_laced) {
      if (npos == n * (n + 1) / 2)
        w = fact(n + 1);
      else if (n >= 4 && npos == n * (n - 1))
        w = (std::uint64_t(1) << (n - 1)) * fact(n);
      else if (n == 6 && npos == 36)
        w = 51840;
      else if (n == 7 && npos == 63)
        w = 2903040;
      else if (n == 8 && npos == 120)
        w = 696729600;
    } else {
      if (npos == n * n)
        w = (std::uint64_t(1) << n) * fact(n);
      else if (n == 4 && npos == 24)
        w = 1152;
      else if (n == 2 && npos == 6)
        w = 12;
    }
    if (w == 0)
      throw std::logic_error("unrecognized Cartan matrix component");
    total *= w;
  }
  return total;
}

class InnerClassError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using RatMatrix = std::vector<RatVec>;

/// x with a*x = b for square invertible a (rational)
inline RatMatrix rat_solve(RatMatrix a, RatMatrix b)
{
  const std::size_t n = a.size();
  const std::size_t m = n ? b[0].size() : 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].num() == 0)
      ++p;
    if (p == n)
      throw InnerClassError("singular basis matrix");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    Rat piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j)
      a[c][j] = a[c][j] / piv;
    for (std::size_t j = 0; j < m; ++j)
      b[c][j] = b[c][j] / piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].num() == 0)
        continue;
      Rat f = a[i][c];
      for (std::size_t j = 0; j < n; ++j)
        a[i][j] -= f * a[c][j];
      for (std::size_t j = 0; j < m; ++j)
        b[i][j] -= f * b[c][j];
    }
  }
  return b;
}

} // namespace detail

/// Based root datum together with an involutive automorphism gamma of X
/// preserving the simple roots.
class InnerClass {
public:
  InnerClass() = default;

  InnerClass(RootDatum rd, IntMatrix gamma) : rd_(std::move(rd)), gamma_(std::move(gamma))
  {
    const std::size_t n = rd_.rank(), r = rd_.semisimple_rank();
    if (gamma_.rows() != n || gamma_.cols() != n)
      throw InnerClassError("twist matrix has the wrong shape");
    if (!(gamma_ * gamma_).is_identity())
      throw InnerClassError("twist is not an involution");
    perm_.resize(r);
    IntMatrix gt = gamma_.transpose();
    for (std::size_t i = 0; i < r; ++i) {
      long j = -1;
      IntVec img = gamma_.apply(rd_.simple_roots()[i]);
      for (std::size_t k = 0; k < r; ++k)
        if (rd_.simple_roots()[k] == img)
          j = static_cast<long>(k);
      if (j < 0)
        throw InnerClassError("twist does not permute the simple roots");
      if (gt.apply(rd_.simple_coroots()[i]) != rd_.simple_coroots()[j])
        throw InnerClassError("twist does not permute the simple coroots compatibly");
      perm_[i] = static_cast<std::size_t>(j);
    }
    W_ = WeylGroup(rd_.cartan_matrix());
    root_perm_.resize(rd_.num_roots());
    for (std::size_t i = 0; i < rd_.num_roots(); ++i)
      root_perm_[i] = static_cast<std::size_t>(rd_.root_index(gamma_.apply(rd_.root(i))));
  }

  /// gamma acting on the span of the roots by the diagram permutation and
  /// trivially on the annihilator of the coroots
  static InnerClass from_permutation(const RootDatum& rd, const std::vector<std::size_t>& perm)
  {
    const std::size_t n = rd.rank(), r = rd.semisimple_rank();
    if (perm.size() != r)
      throw InnerClassError("permutation has the wrong length");
    std::vector<bool> hit(r, false);
    for (auto p : perm) {
      if (p >= r || hit[p])
        throw InnerClassError("not a permutation");
      hit[p] = true;
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (rd.cartan_matrix()(i, j) != rd.cartan_matrix()(perm[i], perm[j]))
          throw InnerClassError("permutation is not a diagram automorphism");
    std::vector<IntVec> basis, image;
    for (std::size_t i = 0; i < r; ++i) {
      basis.push_back(rd.simple_roots()[i]);
      image.push_back(rd.simple_roots()[perm[i]]);
    }
    if (r < n) {
      SmithForm s = smith_normal_form(rd.simple_coroot_matrix());
      for (std::size_t k = s.rank; k < n; ++k) {
        basis.push_back(s.v.col(k));
        image.push_back(s.v.col(k));
      }
    }
    // gamma * B = B'  <=>  B^T gamma^T = B'^T
    detail::RatMatrix bt(n, RatVec(n)), bpt(n, RatVec(n));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t t = 0; t < n; ++t) {
        bt[k][t] = Rat(basis[k][t]);
        bpt[k][t] = Rat(image[k][t]);
      }
    auto gt = detail::rat_solve(bt, bpt);
    IntMatrix gamma(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!gt[j][i].is_integer())
          throw InnerClassError("diagram permutation does not lift to the lattice");
        gamma(i, j) = gt[j][i].num();
      }
    return InnerClass(rd, gamma);
  }

  const RootDatum& rd() const { return rd_; }
  const IntMatrix& gamma() const { return gamma_; }
  const std::vector<std::size_t>& diagram_perm() const { return perm_; }
  const WeylGroup& W() const { return W_; }
  std::size_t gamma_root(std::size_t i) const { return root_perm_[i]; }
  bool is_equal_rank() const { return gamma_.is_identity(); }

  WeylElt twist(const WeylElt& w) const { return W_.twist(w, perm_); }

  /// w acting on a root index
  std::size_t act_root(const WeylElt& w, std::size_t i) const
  {
    for (std::size_t k = w.word.size(); k-- > 0;)
      i = rd_.reflect_root(w.word[k], i);
    return i;
  }
  IntMatrix weyl_matrix_X(const WeylElt& w) const
  {
    IntMatrix m = IntMatrix::identity(rd_.rank());
    for (auto s : w.word)
      m = m * rd_.reflection_X(s);
    return m;
  }
  IntMatrix weyl_matrix_coX(const WeylElt& w) const
  {
    IntMatrix m = IntMatrix::identity(rd_.rank());
    for (auto s : w.word)
      m = m * rd_.reflection_coX(s);
    return m;
  }
  RatVec act_coX(const WeylElt& w, RatVec v) const
  {
    for (std::size_t k = w.word.size(); k-- > 0;)
      v = rd_.reflect_coX(w.word[k], v);
    return v;
  }

  /// theta = w o gamma on X
  IntMatrix theta_X(const WeylElt& w) const { return weyl_matrix_X(w) * gamma_; }

  /// the dual inner class, twisted by -w0 gamma^t
  InnerClass dual() const
  {
    RootDatum d = rd_.dual();
    IntMatrix g = -(weyl_matrix_coX(W_.longest()) * gamma_.transpose());
    return InnerClass(d, g);
  }

private:
  RootDatum rd_;
  IntMatrix gamma_;
  std::vector<std::size_t> perm_;
  WeylGroup W_;
  std::vector<std::size_t> root_perm_;
};

/// Involutive diagram automorphisms, found by backtracking.
inline std::vector<std::vector<std::size_t>> diagram_involutions(const IntMatrix& c)
{
  const std::size_t r = c.rows();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> p(r);
  std::vector<bool> used(r, false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == r) {
      for (std::size_t k = 0; k < r; ++k)
        if (p[p[k]] != k)
          return;
      out.push_back(p);
      return;
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (used[j] || c(i, i) != c(j, j))
        continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k)
        ok = c(i, k) == c(j, p[k]) && c(k, i) == c(p[k], j);
      if (!ok)
        continue;
      used[j] = true;
      p[i] = j;
      rec(i + 1);
      used[j] = false;
    }
  };
  rec(0);
  return out;
}

/// "c" (identity), "u" (the distinguished nontrivial involution), or an
/// explicit 1-based permutation such as "2,1".
inline InnerClass make_inner_class(const RootDatum& rd, const std::string& spec)
{
  const std::size_t r = rd.semisimple_rank();
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  if (spec == "c" || spec == "C")
    return InnerClass::from_permutation(rd, perm);
  if (spec == "u" || spec == "U") {
    WeylGroup W(rd.cartan_matrix());
    WeylElt w0 = W.longest();
    InnerClass trivial = InnerClass::from_permutation(rd, perm);
    std::vector<std::size_t> opp(r);
    for (std::size_t s = 0; s < r; ++s) {
      std::size_t img = trivial.act_root(w0, rd.simple_root_index(s));
      std::size_t neg = rd.negative(img);
      for (std::size_t t = 0; t < r; ++t)
        if (rd.simple_root_index(t) == neg)
          opp[s] = t;
    }
    if (opp != perm)
      return InnerClass::from_permutation(rd, opp);
    auto invs = diagram_involutions(rd.cartan_matrix());
    std::vector<std::vector<std::size_t>> nontrivial;
    for (auto& p : invs)
      if (p != perm)
        nontrivial.push_back(p);
    if (nontrivial.size() == 1)
      return InnerClass::from_permutation(rd, nontrivial[0]);
    if (nontrivial.empty())
      throw InnerClassError("no nontrivial diagram involution exists");
    throw InnerClassError("several diagram involutions exist; give an explicit permutation");
  }
  std::vector<std::size_t> p;
  std::size_t i = 0;
  while (i < spec.size()) {
    std::size_t j = i;
    while (j < spec.size() && std::isdigit(static_cast<unsigned char>(spec[j])))
      ++j;
    if (j == i)
      throw InnerClassError("cannot parse inner class \"" + spec + "\"");
    std::size_t v = std::stoul(spec.substr(i, j - i));
    if (v == 0)
      throw InnerClassError("permutation entries are 1-based");
    p.push_back(v - 1);
    i = j;
    if (i < spec.size()) {
      if (spec[i] != ',')
        throw InnerClassError("cannot parse inner class \"" + spec + "\"");
      ++i;
    }
  }
  return InnerClass::from_permutation(rd, p);
}

enum class RootKind : char { imaginary = 'i', real = 'r', complex = 'C' };

struct RootClassification {
  std::vector<RootKind> kind;             // per root index
  std::vector<std::size_t> pos_imaginary, pos_real, pos_complex;
  std::vector<std::size_t> simple_imaginary;  // simple system of the imaginary roots
  std::vector<std::size_t> simple_real;
  RatVec rho_i;        // X coordinates
  RatVec rho_check_r;  // X-check coordinates
  std::vector<std::size_t> delta_C;  // roots orthogonal to rho_i and rho_check_r
  std::uint64_t W_i_order = 1, W_r_order = 1;
};

namespace detail {

/// simple system of a closed subsystem given by its positive roots
inline std::vector<std::size_t> subsystem_simple(const RootDatum& rd,
                                                 const std::vector<std::size_t>& pos)
{
  std::vector<bool> in(rd.num_roots(), false);
  for (auto i : pos)
    in[i] = true;
  std::vector<std::size_t> simple;
  for (auto i : pos) {
    bool decomposable = false;
    for (auto j : pos) {
      if (j == i)
        continue;
      IntVec d = rd.root(i);
      for (std::size_t k = 0; k < d.size(); ++k)
        d[k] -= rd.root(j)[k];
      long idx = rd.root_index(d);
      if (idx >= 0 && in[idx]) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable)
      simple.push_back(i);
  }
  return simple;
}

inline std::uint64_t subsystem_weyl_order(const RootDatum& rd, const std::vector<std::size_t>& simple)
{
  const std::size_t m = simple.size();
  if (m == 0)
    return 1;
  IntMatrix c(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      c(a, b) = dot(rd.root(simple[a]), rd.coroot(simple[b]));
  return weyl_group_order(c);
}

} // namespace detail

inline RootClassification classify_roots(const InnerClass& ic, const WeylElt& tau)
{
  const RootDatum& rd = ic.rd();
  RootClassification rc;
  rc.kind.resize(rd.num_roots());
  for (std::size_t i = 0; i < rd.num_roots(); ++i) {
    std::size_t t = ic.act_root(tau, ic.gamma_root(i));
    if (t == i)
      rc.kind[i] = RootKind::imaginary;
    else if (t == rd.negative(i))
      rc.kind[i] = RootKind::real;
    else
      rc.kind[i] = RootKind::complex;
  }
  for (std::size_t i = 0; i < rd.num_pos(); ++i) {
    if (rc.kind[i] == RootKind::imaginary)
      rc.pos_imaginary.push_back(i);
    else if (rc.kind[i] == RootKind::real)
      rc.pos_real.push_back(i);
    else
      rc.pos_complex.push_back(i);
  }
  rc.simple_imaginary = detail::subsystem_simple(rd, rc.pos_imaginary);
  rc.simple_real = detail::subsystem_simple(rd, rc.pos_real);
  rc.W_i_order = detail::subsystem_weyl_order(rd, rc.simple_imaginary);
  rc.W_r_order = detail::subsystem_weyl_order(rd, rc.simple_real);
  const std::size_t n = rd.rank();
  rc.rho_i.assign(n, Rat(0));
  rc.rho_check_r.assign(n, Rat(0));
  for (auto i : rc.pos_imaginary)
    for (std::size_t k = 0; k < n; ++k)
      rc.rho_i[k] += Rat(rd.root(i)[k], 2);
  for (auto i : rc.pos_real)
    for (std::size_t k = 0; k < n; ++k)
      rc.rho_check_r[k] += Rat(rd.coroot(i)[k], 2);
  for (std::size_t i = 0; i < rd.num_roots(); ++i)
    if (dot(rd.coroot(i), rc.rho_i).num() == 0 && dot(rd.root(i), rc.rho_check_r).num() == 0)
      rc.delta_C.push_back(i);
  return rc;
}

struct TwistedInvolution {
  WeylElt w;
  std::size_t length = 0;              // distance from the distinguished involution
  std::vector<long> cross;             // index of s.tau.gamma(s)
  std::vector<long> cayley;            // s.tau when alpha_s is imaginary, else -1
  std::vector<long> inverse_cayley;    // s.tau when alpha_s is real, else -1
  std::vector<RootKind> simple_kind;   // status of each simple root
  std::size_t cartan_class = 0;
};

/// The set of twisted involutions, generated from the identity by twisted
/// conjugation and Cayley moves (breadth first, simple indices in order,
/// conjugation before Cayley).
class TwistedInvolutions {
public:
  TwistedInvolutions() = default;
  TwistedInvolutions(InnerClass&&) = delete;
  explicit TwistedInvolutions(const InnerClass& ic) : ic_(&ic) { build(); }

  std::size_t size() const { return elems_.size(); }
  const TwistedInvolution& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<TwistedInvolution>& elements() const { return elems_; }
  long index_of(const WeylElt& w) const
  {
    auto it = index_.find(ic_->W().key(w));
    return it == index_.end() ? -1 : static_cast<long>(it->second);
  }
  const InnerClass& inner_class() const { return *ic_; }

  /// Cartan classes: each class lists its members; classes are ordered by
  /// their minimal (length, shortlex) representative, which is listed first
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::size_t class_of(std::size_t i) const { return elems_[i].cartan_class; }

  IntMatrix theta_X(std::size_t i) const { return ic_->theta_X(elems_[i].w); }

private:
  void build()
  {
    const WeylGroup& W = ic_->W();
    const std::size_t r = W.rank();
    add(W.identity(), 0);
    for (std::size_t q = 0; q < elems_.size(); ++q) {
      WeylElt tau = elems_[q].w;
      std::size_t len = elems_[q].length;
      std::vector<long> cross(r, -1), cay(r, -1), icay(r, -1);
      std::vector<RootKind> kinds(r, RootKind::complex);
      for (std::size_t s = 0; s < r; ++s) {
        WeylElt t = W.right_mul(W.left_mul(s, tau), ic_->diagram_perm()[s]);
        cross[s] = static_cast<long>(add(t, len + 1));
      }
      for (std::size_t s = 0; s < r; ++s) {
        if (cross[s] != static_cast<long>(q))
          continue;
        WeylElt t = W.left_mul(s, tau);
        if (t.length() > tau.length()) {
          kinds[s] = RootKind::imaginary;
          cay[s] = static_cast<long>(add(t, len + 1));
        } else {
          kinds[s] = RootKind::real;
          icay[s] = static_cast<long>(add(t, len + 1));
        }
      }
      elems_[q].cross = cross;
      elems_[q].cayley = cay;
      elems_[q].inverse_cayley = icay;
      elems_[q].simple_kind = kinds;
    }
    // twisted conjugacy classes
    std::vector<long> cls(elems_.size(), -1);
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (cls[i] >= 0)
        continue;
      std::vector<std::size_t> members{i};
      cls[i] = static_cast<long>(groups.size());
      for (std::size_t k = 0; k < members.size(); ++k)
        for (auto c : elems_[members[k]].cross)
          if (cls[c] < 0) {
            cls[c] = cls[i];
            members.push_back(static_cast<std::size_t>(c));
          }
      std::sort(members.begin(), members.end(),
                [&](std::size_t a, std::size_t b) { return elems_[a].w < elems_[b].w; });
      groups.push_back(members);
    }
    std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
      return elems_[a[0]].w < elems_[b[0]].w;
    });
    classes_ = groups;
    for (std::size_t c = 0; c < classes_.size(); ++c)
      for (auto i : classes_[c])
        elems_[i].cartan_class = c;
  }

  std::size_t add(const WeylElt& w, std::size_t len)
  {
    IntVec k = ic_->W().key(w);
    auto it = index_.find(k);
    if (it != index_.end())
      return it->second;
    std::size_t id = elems_.size();
    index_.emplace(k, id);
    TwistedInvolution t;
    t.w = w;
    t.length = len;
    elems_.push_back(t);
    return id;
  }

  const InnerClass* ic_ = nullptr;
  std::vector<TwistedInvolution> elems_;
  std::unordered_map<IntVec, std::size_t, IntVecHash> index_;
  std::vector<std::vector<std::size_t>> classes_;
};

/// brute-force oracle: all w with w gamma(w) = e
inline std::vector<WeylElt> twisted_involutions_brute(const InnerClass& ic)
{
  std::vector<WeylElt> out;
  for (auto& w : ic.W().enumerate())
    if (ic.W().mul(w, ic.twist(w)).is_identity())
      out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace rforms
