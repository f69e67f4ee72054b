#pragma once

#include <cctype>
#include <cstring>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rforms/intlinalg.hpp"

namespace rforms {

class RootDatumError : public std::runtime_error {
public:
  enum class Kind { NotACartanMatrix, PairingNotTwo, InfiniteClosure, UnknownType, BadShape };
  RootDatumError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

/// Root datum with X = Z^n.  Roots live in X coordinates, coroots in the
/// dual coordinates.  Positive roots come first, sorted by (height, simple
/// coordinates); root num_pos()+i is the negative of root i.
class RootDatum {
public:
  RootDatum() = default;

  RootDatum(const std::vector<IntVec>& simple_roots, const std::vector<IntVec>& simple_coroots,
            std::size_t n)
      : n_(n), sroots_(simple_roots), scoroots_(simple_coroots)
  {
    if (sroots_.size() != scoroots_.size())
      throw RootDatumError(RootDatumError::Kind::BadShape, "numbers of roots and coroots differ");
    for (auto* list : {&sroots_, &scoroots_})
      for (auto& v : *list)
        if (v.size() != n_)
          throw RootDatumError(RootDatumError::Kind::BadShape, "vector length differs from rank");
    const std::size_t r = sroots_.size();
    cartan_ = IntMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        cartan_(i, j) = dot(sroots_[i], scoroots_[j]);
    for (std::size_t i = 0; i < r; ++i)
      if (cartan_(i, i) != 2)
        throw RootDatumError(RootDatumError::Kind::PairingNotTwo,
                             "pairing of simple root " + std::to_string(i + 1) +
                                 " with its coroot is not 2");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (i != j && (cartan_(i, j) > 0 || ((cartan_(i, j) == 0) != (cartan_(j, i) == 0))))
          throw RootDatumError(RootDatumError::Kind::NotACartanMatrix,
                               "pairing matrix is not a Cartan matrix");
    generate();
  }

  std::size_t rank() const { return n_; }
  std::size_t semisimple_rank() const { return sroots_.size(); }
  const std::vector<IntVec>& simple_roots() const { return sroots_; }
  const std::vector<IntVec>& simple_coroots() const { return scoroots_; }
  const IntMatrix& cartan_matrix() const { return cartan_; }

  std::size_t num_roots() const { return roots_.size(); }
  std::size_t num_pos() const { return roots_.size() / 2; }
  const IntVec& root(std::size_t i) const { return roots_[i]; }
  const IntVec& coroot(std::size_t i) const { return coroots_[i]; }
  const std::vector<IntVec>& roots() const { return roots_; }
  const std::vector<IntVec>& coroots() const { return coroots_; }
  /// coordinates with respect to the simple roots / simple coroots
  const IntVec& root_simple_coords(std::size_t i) const { return rcoord_[i]; }
  const IntVec& coroot_simple_coords(std::size_t i) const { return ccoord_[i]; }
  bool is_positive(std::size_t i) const { return i < num_pos(); }
  std::size_t negative(std::size_t i) const
  {
    return i < num_pos() ? i + num_pos() : i - num_pos();
  }
  std::size_t simple_root_index(std::size_t s) const { return simple_index_[s]; }
  /// index of the root with X coordinates v, or -1
  long root_index(const IntVec& v) const
  {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : static_cast<long>(it->second);
  }
  long coroot_index(const IntVec& v) const
  {
    auto it = coindex_.find(v);
    return it == coindex_.end() ? -1 : static_cast<long>(it->second);
  }
  /// s_s(root i) as a root index
  std::size_t reflect_root(std::size_t s, std::size_t i) const { return refl_[s][i]; }
  long sum_root(std::size_t i, std::size_t j) const
  {
    IntVec v = roots_[i];
    for (std::size_t k = 0; k < n_; ++k)
      v[k] += roots_[j][k];
    return root_index(v);
  }
  std::int64_t height(std::size_t i) const
  {
    std::int64_t h = 0;
    for (auto c : rcoord_[i])
      h += c;
    return h;
  }

  /// reflection s_s on X (column vector convention)
  IntMatrix reflection_X(std::size_t s) const
  {
    IntMatrix m = IntMatrix::identity(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        m(i, j) -= sroots_[s][i] * scoroots_[s][j];
    return m;
  }
  IntMatrix reflection_coX(std::size_t s) const { return reflection_X(s).transpose(); }

  IntVec reflect_X(std::size_t s, IntVec v) const
  {
    std::int64_t p = dot(v, scoroots_[s]);
    for (std::size_t k = 0; k < n_; ++k)
      v[k] -= p * sroots_[s][k];
    return v;
  }
  RatVec reflect_coX(std::size_t s, RatVec v) const
  {
    Rat p = dot(sroots_[s], v);
    for (std::size_t k = 0; k < n_; ++k)
      if (scoroots_[s][k] != 0)
        v[k] -= p * Rat(scoroots_[s][k]);
    return v;
  }

  /// half the sum of the positive coroots, in X-check coordinates
  RatVec rho_check() const
  {
    RatVec r(n_, Rat(0));
    for (std::size_t i = 0; i < num_pos(); ++i)
      for (std::size_t k = 0; k < n_; ++k)
        r[k] += Rat(coroots_[i][k], 2);
    return r;
  }
  RatVec rho() const
  {
    RatVec r(n_, Rat(0));
    for (std::size_t i = 0; i < num_pos(); ++i)
      for (std::size_t k = 0; k < n_; ++k)
        r[k] += Rat(roots_[i][k], 2);
    return r;
  }

  RootDatum dual() const { return RootDatum(scoroots_, sroots_, n_); }

  friend bool operator==(const RootDatum& a, const RootDatum& b)
  {
    return a.n_ == b.n_ && a.sroots_ == b.sroots_ && a.scoroots_ == b.scoroots_ &&
           a.roots_ == b.roots_ && a.coroots_ == b.coroots_;
  }

  /// simple roots as rows
  IntMatrix simple_root_matrix() const { return IntMatrix::from_rows(sroots_, n_); }
  IntMatrix simple_coroot_matrix() const { return IntMatrix::from_rows(scoroots_, n_); }

private:
  void generate()
  {
    const std::size_t r = sroots_.size();
    // breadth-first reflection closure in simple-root coordinates
    std::map<IntVec, IntVec> found;  // root coords -> coroot coords
    std::vector<IntVec> queue;
    for (std::size_t i = 0; i < r; ++i) {
      IntVec e(r, 0), f(r, 0);
      e[i] = 1;
      f[i] = 1;
      found.emplace(e, f);
      queue.push_back(e);
    }
    for (std::size_t q = 0; q < queue.size(); ++q) {
      IntVec b = queue[q];
      IntVec bc = found[b];
      for (std::size_t j = 0; j < r; ++j) {
        std::int64_t p = 0;  // <beta, alpha_j^v>
        for (std::size_t k = 0; k < r; ++k)
          p += b[k] * cartan_(k, j);
        std::int64_t pc = 0;  // <alpha_j, beta^v>
        for (std::size_t k = 0; k < r; ++k)
          pc += bc[k] * cartan_(j, k);
        IntVec nb = b, nbc = bc;
        nb[j] -= p;
        nbc[j] -= pc;
        if (found.emplace(nb, nbc).second) {
          queue.push_back(nb);
          // no finite root system of rank r has more than max(240, 2r^2) roots
          if (found.size() > std::max<std::size_t>(240, 2 * r * r))
            throw RootDatumError(RootDatumError::Kind::InfiniteClosure,
                                 "reflection closure exceeds the safety bound");
        }
      }
    }
    std::vector<std::pair<IntVec, IntVec>> pos;
    for (auto& [b, bc] : found) {
      bool p = std::all_of(b.begin(), b.end(), [](std::int64_t x) { return x >= 0; });
      if (p)
        pos.emplace_back(b, bc);
    }
    std::sort(pos.begin(), pos.end(), [](const auto& x, const auto& y) {
      std::int64_t hx = std::accumulate(x.first.begin(), x.first.end(), std::int64_t(0));
      std::int64_t hy = std::accumulate(y.first.begin(), y.first.end(), std::int64_t(0));
      if (hx != hy)
        return hx < hy;
      return x.first < y.first;
    });
    if (pos.size() * 2 != found.size())
      throw RootDatumError(RootDatumError::Kind::NotACartanMatrix, "root system is not symmetric");
    auto to_X = [&](const IntVec& c, const std::vector<IntVec>& basis) {
      IntVec v(n_, 0);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t t = 0; t < n_; ++t)
          v[t] += c[k] * basis[k][t];
      return v;
    };
    for (int sign : {1, -1})
      for (auto& [b, bc] : pos) {
        IntVec rb = b, rc = bc;
        for (auto& x : rb)
          x *= sign;
        for (auto& x : rc)
          x *= sign;
        rcoord_.push_back(rb);
        ccoord_.push_back(rc);
        roots_.push_back(to_X(rb, sroots_));
        coroots_.push_back(to_X(rc, scoroots_));
      }
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      index_[roots_[i]] = i;
      coindex_[coroots_[i]] = i;
    }
    if (index_.size() != roots_.size() || coindex_.size() != coroots_.size())
      throw RootDatumError(RootDatumError::Kind::BadShape,
                           "simple roots or coroots are linearly dependent");
    simple_index_.resize(r);
    for (std::size_t s = 0; s < r; ++s)
      simple_index_[s] = index_.at(sroots_[s]);
    refl_.assign(r, std::vector<std::size_t>(roots_.size()));
    for (std::size_t s = 0; s < r; ++s)
      for (std::size_t i = 0; i < roots_.size(); ++i)
        refl_[s][i] = index_.at(reflect_X(s, roots_[i]));
  }

  std::size_t n_ = 0;
  std::vector<IntVec> sroots_, scoroots_;
  IntMatrix cartan_;
  std::vector<IntVec> roots_, coroots_, rcoord_, ccoord_;
  std::map<IntVec, std::size_t> index_, coindex_;
  std::vector<std::size_t> simple_index_;
  std::vector<std::vector<std::size_t>> refl_;
};

inline RootDatum new_root_datum(const std::vector<IntVec>& simple_roots,
                                const std::vector<IntVec>& simple_coroots)
{
  std::size_t n = simple_roots.empty() ? (simple_coroots.empty() ? 0 : simple_coroots[0].size())
                                       : simple_roots[0].size();
  return RootDatum(simple_roots, simple_coroots, n);
}

/// Cartan matrix of a simple type, entry (i,j) = <alpha_i, alpha_j^v>,
/// Bourbaki numbering.
inline IntMatrix simple_cartan_matrix(char type, std::size_t n)
{
  auto bad = [&] {
    return RootDatumError(RootDatumError::Kind::UnknownType,
                          std::string("unknown type ") + type + std::to_string(n));
  };
  IntMatrix c = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    c(i, i) = 2;
  auto link = [&](std::size_t i, std::size_t j) {
    c(i, j) = -1;
    c(j, i) = -1;
  };
  switch (type) {
  case 'A':
    if (n < 1)
      throw bad();
    for (std::size_t i = 0; i + 1 < n; ++i)
      link(i, i + 1);
    break;
  case 'B':
    if (n < 2)
      throw bad();
    for (std::size_t i = 0; i + 1 < n; ++i)
      link(i, i + 1);
    c(n - 2, n - 1) = -2;  // alpha_{n-1} long, alpha_n short
    break;
  case 'C':
    if (n < 1)
      throw bad();
    if (n == 1)
      break;
    for (std::size_t i = 0; i + 1 < n; ++i)
      link(i, i + 1);
    c(n - 1, n - 2) = -2;  // alpha_n long
    break;
  case 'D':
    if (n < 3)
      throw bad();
    for (std::size_t i = 0; i + 2 < n; ++i)
      link(i, i + 1);
    link(n - 3, n - 1);
    break;
  case 'E':
    if (n < 6 || n > 8)
      throw bad();
    link(0, 2);
    link(1, 3);
    for (std::size_t i = 2; i + 1 < n; ++i)
      link(i, i + 1);
    break;
  case 'F':
    if (n != 4)
      throw bad();
    link(0, 1);
    link(1, 2);
    link(2, 3);
    c(1, 2) = -2;
    break;
  case 'G':
    if (n != 2)
      throw bad();
    link(0, 1);
    c(1, 0) = -3;  // alpha_2 long
    break;
  default:
    throw bad();
  }
  return c;
}

struct TypeFactor {
  char type;  // 'T' for a torus factor
  std::size_t n;
};

inline std::vector<TypeFactor> parse_type(const std::string& s)
{
  std::vector<TypeFactor> out;
  std::size_t i = 0;
  auto fail = [&] {
    return RootDatumError(RootDatumError::Kind::UnknownType, "cannot parse type \"" + s + "\"");
  };
  while (i < s.size()) {
    char t = static_cast<char>(std::toupper(static_cast<unsigned char>(s[i])));
    if (!std::strchr("ABCDEFGT", t))
      throw fail();
    ++i;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
      ++j;
    if (j == i)
      throw fail();
    std::size_t n = std::stoul(s.substr(i, j - i));
    if (n == 0 || n > 64)
      throw fail();
    out.push_back({t, n});
    i = j;
    if (i < s.size()) {
      if (s[i] != '.')
        throw fail();
      ++i;
      if (i == s.size())
        throw fail();
    }
  }
  if (out.empty())
    throw fail();
  return out;
}

enum class Isogeny { sc, ad };

inline RootDatum from_type(const std::string& type, Isogeny iso)
{
  auto factors = parse_type(type);
  std::size_t r = 0, tor = 0;
  for (auto& f : factors)
    (f.type == 'T' ? tor : r) += f.n;
  const std::size_t n = r + tor;
  if (n > 64)
    throw RootDatumError(RootDatumError::Kind::UnknownType, "rank above 64 is not supported");
  IntMatrix c(r, r);
  std::size_t off = 0;
  for (auto& f : factors) {
    if (f.type == 'T')
      continue;
    IntMatrix b = simple_cartan_matrix(f.type, f.n);
    for (std::size_t i = 0; i < f.n; ++i)
      for (std::size_t j = 0; j < f.n; ++j)
        c(off + i, off + j) = b(i, j);
    off += f.n;
  }
  std::vector<IntVec> roots(r, IntVec(n, 0)), coroots(r, IntVec(n, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (iso == Isogeny::sc) {
        roots[i][j] = c(i, j);
        coroots[i][j] = (i == j);
      } else {
        roots[i][j] = (i == j);
        coroots[i][j] = c(j, i);
      }
    }
  return RootDatum(roots, coroots, n);
}

inline RootDatum dual(const RootDatum& rd) { return rd.dual(); }

struct CenterTorsion {
  IntVec invariant_factors;          // all > 1, each dividing the next
  std::vector<RatVecModZ> generators;  // X-check coordinates
  std::size_t torus_dim = 0;         // dimension of the identity component of Z(G)
};

inline CenterTorsion center_torsion(const RootDatum& rd)
{
  CenterTorsion ct;
  const std::size_t n = rd.rank();
  if (rd.semisimple_rank() == 0) {
    ct.torus_dim = n;
    return ct;
  }
  SmithForm s = smith_normal_form(rd.simple_root_matrix());
  ct.torus_dim = n - s.rank;
  for (std::size_t k = 0; k < s.rank; ++k) {
    std::int64_t d = s.d(k, k);
    if (d == 1)
      continue;
    RatVec e(n, Rat(0));
    e[k] = Rat(1, d);
    ct.invariant_factors.push_back(d);
    ct.generators.emplace_back(s.v.apply(e));
  }
  return ct;
}

/// All central elements of finite order in the torsion subgroup generated by
/// the invariant factors; requires a semisimple datum.
inline std::vector<RatVecModZ> center_elements(const RootDatum& rd)
{
  CenterTorsion ct = center_torsion(rd);
  if (ct.torus_dim != 0)
    throw std::domain_error("center has positive dimension");
  std::vector<RatVecModZ> out{RatVecModZ(rd.rank())};
  for (std::size_t g = 0; g < ct.generators.size(); ++g) {
    std::vector<RatVecModZ> next;
    for (auto& z : out) {
      RatVecModZ c = z;
      for (std::int64_t k = 0; k < ct.invariant_factors[g]; ++k) {
        next.push_back(c);
        c = c + ct.generators[g];
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// true if lambda (X-check coordinates) exponentiates to a central element
inline bool is_central(const RootDatum& rd, const RatVec& lambda)
{
  for (auto& a : rd.simple_roots())
    if (!dot(a, lambda).is_integer())
      return false;
  return true;
}

} // namespace rforms
