#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rforms {

/// Checked 64-bit integer helpers.  Every overflow throws.
namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in multiplication");
  return r;
}

inline std::int64_t narrow(__int128 v)
{
  if (v > INT64_MAX || v < INT64_MIN)
    throw std::overflow_error("integer overflow in narrowing");
  return static_cast<std::int64_t>(v);
}

} // namespace checked

inline std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t b)
{
  std::int64_t r = a % b;
  if (r != 0 && ((r < 0) != (b < 0)))
    r += b;
  return r;
}

/// Exact rational number with positive denominator in lowest terms.
class Rat {
public:
  Rat() = default;
  Rat(std::int64_t n) : num_(n), den_(1) {}
  Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  /// representative in [0,1)
  Rat frac() const { return Rat(mod_floor(num_, den_), den_); }
  std::int64_t floor() const { return floor_div(num_, den_); }

  friend Rat operator+(const Rat& a, const Rat& b)
  {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from128(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b)
  {
    return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b)
  {
    if (b.num_ == 0)
      throw std::domain_error("division by zero");
    return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }
  Rat operator-() const { return Rat(checked::sub(0, num_), den_, 0); }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }

  friend bool operator==(const Rat& a, const Rat& b)
  {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rat& a, const Rat& b)
  {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend auto operator<=>(const Rat& a, const Rat& b)
  {
    __int128 l = (__int128)a.num_ * b.den_, r = (__int128)b.num_ * a.den_;
    return l <=> r;
  }

  std::string str() const
  {
    if (den_ == 1)
      return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

private:
  Rat(std::int64_t n, std::int64_t d, int) : num_(n), den_(d) {}

  static Rat from128(__int128 n, __int128 d)
  {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    return Rat(checked::narrow(n), checked::narrow(d), 0);
  }

  void normalize()
  {
    if (den_ == 0)
      throw std::domain_error("zero denominator");
    if (den_ < 0) {
      num_ = checked::sub(0, num_);
      den_ = checked::sub(0, den_);
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r)
{
  return os << r.str();
}

using IntVec = std::vector<std::int64_t>;
using RatVec = std::vector<Rat>;

/// Element of (Q/Z)^n stored with every entry in [0,1).
class RatVecModZ {
public:
  RatVecModZ() = default;
  explicit RatVecModZ(const RatVec& v) : v_(v) { reduce(); }
  explicit RatVecModZ(std::size_t n) : v_(n, Rat(0)) {}

  static RatVecModZ reduce(const RatVec& v) { return RatVecModZ(v); }

  const RatVec& entries() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Rat& operator[](std::size_t i) const { return v_[i]; }
  bool is_zero() const
  {
    return std::all_of(v_.begin(), v_.end(), [](const Rat& r) { return r.num() == 0; });
  }

  friend RatVecModZ operator+(const RatVecModZ& a, const RatVecModZ& b)
  {
    RatVec r(a.v_.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = a.v_[i] + b.v_[i];
    return RatVecModZ(r);
  }
  friend RatVecModZ operator-(const RatVecModZ& a, const RatVecModZ& b)
  {
    RatVec r(a.v_.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = a.v_[i] - b.v_[i];
    return RatVecModZ(r);
  }
  friend bool operator==(const RatVecModZ& a, const RatVecModZ& b) { return a.v_ == b.v_; }
  friend bool operator<(const RatVecModZ& a, const RatVecModZ& b)
  {
    return std::lexicographical_compare(a.v_.begin(), a.v_.end(), b.v_.begin(), b.v_.end());
  }

  std::string str() const
  {
    std::string s = "(";
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i)
        s += ",";
      s += v_[i].str();
    }
    return s + ")";
  }

private:
  void reduce()
  {
    for (auto& r : v_)
      r = r.frac();
  }
  RatVec v_;
};

/// Dense integer matrix, row major.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c, std::int64_t fill = 0)
      : rows_(r), cols_(c), a_(r * c, fill)
  {
  }
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
  {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (auto& r : rows) {
      if (r.size() != cols_)
        throw std::invalid_argument("ragged matrix literal");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols)
  {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = rows[i][j];
    }
    return m;
  }
  static IntMatrix identity(std::size_t n)
  {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const
  {
    return IntVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }
  IntVec col(std::size_t j) const
  {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      v[i] = (*this)(i, j);
    return v;
  }

  IntMatrix transpose() const
  {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
  {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        std::int64_t x = a(i, k);
        if (x == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) = checked::add(c(i, j), checked::mul(x, b(k, j)));
      }
    return c;
  }
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
  {
    IntMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i)
      c.a_[i] = checked::add(a.a_[i], b.a_[i]);
    return c;
  }
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
  {
    IntMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i)
      c.a_[i] = checked::sub(a.a_[i], b.a_[i]);
    return c;
  }
  IntMatrix operator-() const
  {
    IntMatrix c(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
      c.a_[i] = checked::sub(0, a_[i]);
    return c;
  }
  friend bool operator==(const IntMatrix& a, const IntMatrix& b)
  {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator<(const IntMatrix& a, const IntMatrix& b)
  {
    if (a.rows_ != b.rows_)
      return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_)
      return a.cols_ < b.cols_;
    return a.a_ < b.a_;
  }

  IntVec apply(const IntVec& v) const
  {
    IntVec r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r[i] = checked::add(r[i], checked::mul((*this)(i, j), v[j]));
    return r;
  }
  RatVec apply(const RatVec& v) const
  {
    RatVec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0)
          r[i] += Rat((*this)(i, j)) * v[j];
    return r;
  }

  bool is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

  /// exact determinant by fraction-free elimination
  std::int64_t det() const
  {
    if (rows_ != cols_)
      throw std::invalid_argument("det of non-square matrix");
    std::size_t n = rows_;
    if (n == 0)
      return 1;
    std::vector<__int128> m(a_.begin(), a_.end());
    auto at = [&](std::size_t i, std::size_t j) -> __int128& { return m[i * n + j]; };
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (at(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n && at(p, k) == 0)
          ++p;
        if (p == n)
          return 0;
        for (std::size_t j = 0; j < n; ++j)
          std::swap(at(k, j), at(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      prev = at(k, k);
    }
    return checked::narrow(sign * at(n - 1, n - 1));
  }

  std::string str() const
  {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j)
        os << (j ? "," : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> a_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.str(); }

/// u*m*v = d with u, v unimodular; uinv and vinv are kept alongside.
struct SmithForm {
  IntMatrix u, d, v, uinv, vinv;
  std::size_t rank = 0;
  IntVec diag() const
  {
    IntVec r;
    for (std::size_t i = 0; i < rank; ++i)
      r.push_back(d(i, i));
    return r;
  }
};

namespace detail {

struct SnfWork {
  IntMatrix a, u, uinv, v, vinv;

  void swap_rows(std::size_t i, std::size_t j)
  {
    if (i == j)
      return;
    for (std::size_t c = 0; c < a.cols(); ++c)
      std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c)
      std::swap(u(i, c), u(j, c));
    for (std::size_t r = 0; r < uinv.rows(); ++r)
      std::swap(uinv(r, i), uinv(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j)
  {
    if (i == j)
      return;
    for (std::size_t r = 0; r < a.rows(); ++r)
      std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r)
      std::swap(v(r, i), v(r, j));
    for (std::size_t c = 0; c < vinv.cols(); ++c)
      std::swap(vinv(i, c), vinv(j, c));
  }
  // row_i -= q * row_t
  void row_sub(std::size_t i, std::size_t t, std::int64_t q)
  {
    if (q == 0)
      return;
    for (std::size_t c = 0; c < a.cols(); ++c)
      a(i, c) = checked::sub(a(i, c), checked::mul(q, a(t, c)));
    for (std::size_t c = 0; c < u.cols(); ++c)
      u(i, c) = checked::sub(u(i, c), checked::mul(q, u(t, c)));
    for (std::size_t r = 0; r < uinv.rows(); ++r)
      uinv(r, t) = checked::add(uinv(r, t), checked::mul(q, uinv(r, i)));
  }
  // col_j -= q * col_t
  void col_sub(std::size_t j, std::size_t t, std::int64_t q)
  {
    if (q == 0)
      return;
    for (std::size_t r = 0; r < a.rows(); ++r)
      a(r, j) = checked::sub(a(r, j), checked::mul(q, a(r, t)));
    for (std::size_t r = 0; r < v.rows(); ++r)
      v(r, j) = checked::sub(v(r, j), checked::mul(q, v(r, t)));
    for (std::size_t c = 0; c < vinv.cols(); ++c)
      vinv(t, c) = checked::add(vinv(t, c), checked::mul(q, vinv(j, c)));
  }
  void negate_row(std::size_t i)
  {
    for (std::size_t c = 0; c < a.cols(); ++c)
      a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c)
      u(i, c) = -u(i, c);
    for (std::size_t r = 0; r < uinv.rows(); ++r)
      uinv(r, i) = -uinv(r, i);
  }
};

} // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& m)
{
  const std::size_t R = m.rows(), C = m.cols();
  detail::SnfWork w{m, IntMatrix::identity(R), IntMatrix::identity(R), IntMatrix::identity(C),
                    IntMatrix::identity(C)};
  auto& a = w.a;
  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    for (;;) {
      // bring the entry of least absolute value to (t,t)
      std::size_t pi = R, pj = C;
      std::int64_t best = 0;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (a(i, j) != 0 && (best == 0 || std::llabs(a(i, j)) < best)) {
            best = std::llabs(a(i, j));
            pi = i;
            pj = j;
          }
      if (pi == R)
        goto done;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        w.row_sub(i, t, floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        w.col_sub(j, t, floor_div(a(t, j), a(t, t)));
        if (a(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (a(i, j) % a(t, t) != 0) {
            // fold row i into row t and redo
            w.row_sub(t, i, -1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (a(t, t) < 0)
      w.negate_row(t);
  }
done:
  SmithForm s;
  s.rank = t;
  s.d = std::move(w.a);
  s.u = std::move(w.u);
  s.uinv = std::move(w.uinv);
  s.v = std::move(w.v);
  s.vinv = std::move(w.vinv);
  return s;
}

inline std::size_t rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

/// Solutions c in (Q/Z)^k of A c = b mod Z^m.
struct ModSolution {
  bool solvable = false;
  bool finite = true;
  RatVecModZ particular;
  std::vector<RatVecModZ> gens;
  IntVec orders;

  std::size_t size() const
  {
    if (!solvable)
      return 0;
    std::size_t s = 1;
    for (auto o : orders)
      s *= static_cast<std::size_t>(o);
    return s;
  }

  /// all solutions, generator 0 varying fastest
  std::vector<RatVecModZ> enumerate() const
  {
    std::vector<RatVecModZ> out;
    if (!solvable)
      return out;
    if (!finite)
      throw std::logic_error("enumerating an infinite solution set");
    std::size_t total = size();
    out.reserve(total);
    IntVec digit(orders.size(), 0);
    for (std::size_t k = 0; k < total; ++k) {
      RatVecModZ c = particular;
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::int64_t r = 0; r < digit[g]; ++r)
          c = c + gens[g];
      out.push_back(c);
      for (std::size_t g = 0; g < digit.size(); ++g) {
        if (++digit[g] < orders[g])
          break;
        digit[g] = 0;
      }
    }
    return out;
  }

  // coordinates relative to the particular solution
  IntMatrix vinv_;
  IntVec active_;  // snf index of each generator
  IntVec coords(const RatVecModZ& c) const
  {
    RatVec diff(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      diff[i] = c[i] - particular[i];
    RatVec y = vinv_.apply(diff);
    IntVec out(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Rat x = y[active_[g]] * Rat(orders[g]);
      if (!x.is_integer())
        throw std::logic_error("vector is not in the solution coset");
      out[g] = mod_floor(x.num(), orders[g]);
    }
    return out;
  }
};

inline ModSolution solve_mod1(const IntMatrix& a, const RatVec& b)
{
  const std::size_t m = a.rows(), k = a.cols();
  if (b.size() != m)
    throw std::invalid_argument("solve_mod1: size mismatch");
  SmithForm s = smith_normal_form(a);
  RatVec ub = s.u.apply(b);
  ModSolution sol;
  sol.finite = (s.rank == k);
  for (std::size_t i = s.rank; i < m; ++i)
    if (!ub[i].is_integer())
      return sol;
  sol.solvable = true;
  RatVec cp(k, Rat(0));
  for (std::size_t i = 0; i < s.rank; ++i)
    cp[i] = ub[i] / Rat(s.d(i, i));
  sol.particular = RatVecModZ(s.v.apply(cp));
  for (std::size_t i = 0; i < s.rank; ++i) {
    std::int64_t di = s.d(i, i);
    if (di == 1)
      continue;
    RatVec e(k, Rat(0));
    e[i] = Rat(1, di);
    sol.gens.emplace_back(s.v.apply(e));
    sol.orders.push_back(di);
    sol.active_.push_back(static_cast<std::int64_t>(i));
  }
  sol.vinv_ = s.vinv;
  return sol;
}

/// Row-echelon basis of a subspace of F_2^n, vectors as bit masks.
class F2Basis {
public:
  F2Basis() = default;
  explicit F2Basis(std::size_t dim) : dim_(dim) {}

  std::size_t space_dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  std::size_t quotient_dim() const { return dim_ - basis_.size(); }
  const std::vector<std::uint64_t>& basis() const { return basis_; }

  /// returns false if v was already in the span
  bool add(std::uint64_t v)
  {
    v = reduce(v);
    if (v == 0)
      return false;
    int p = 63 - __builtin_clzll(v);
    for (auto& b : basis_)
      if ((b >> p) & 1)
        b ^= v;
    basis_.push_back(v);
    std::sort(basis_.begin(), basis_.end(), std::greater<>());
    return true;
  }

  /// canonical coset representative of v modulo the span
  std::uint64_t reduce(std::uint64_t v) const
  {
    for (auto b : basis_) {
      int p = 63 - __builtin_clzll(b);
      if ((v >> p) & 1)
        v ^= b;
    }
    return v;
  }
  bool contains(std::uint64_t v) const { return reduce(v) == 0; }

private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> basis_;
};

inline F2Basis two_group_quotient(const std::vector<std::uint64_t>& gens, std::size_t space_dim)
{
  if (space_dim > 64)
    throw std::invalid_argument("F2 space of dimension above 64");
  F2Basis b(space_dim);
  for (auto g : gens) {
    if (space_dim < 64 && (g >> space_dim) != 0)
      throw std::invalid_argument("F2 vector longer than the space");
    b.add(g);
  }
  return b;
}

inline std::uint64_t mod2_mask(const IntVec& v)
{
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] & 1)
      m |= std::uint64_t(1) << i;
  return m;
}

inline Rat dot(const IntVec& a, const RatVec& b)
{
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      s += Rat(a[i]) * b[i];
  return s;
}

inline std::int64_t dot(const IntVec& a, const IntVec& b)
{
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s = checked::add(s, checked::mul(a[i], b[i]));
  return s;
}

} // namespace rforms
