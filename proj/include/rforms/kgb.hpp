#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "rforms/fiber.hpp"

namespace rforms {

class KGBError : public std::runtime_error {
public:
  enum class Kind { NotImaginary, NotNoncompactImaginary, NotReal, NotFound };
  Kind kind;
  KGBError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

enum class Status : char { compact = 'c', noncompact = 'n', real = 'r', complex = 'C' };

struct KGBElt {
  std::size_t tau = 0;   // index into the twisted involutions
  RatVecModZ coord;      // fiber coordinate
  RatVecModZ square;     // x^2 as a point of X-check (x) Q / X-check
  std::vector<Status> status;
};

/// Runs f(i) for i in [0, n) on up to `threads` workers.  Each index is
/// handled exactly once and results must be written to disjoint slots.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f)
{
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i)
      f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n)
        return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err)
          err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t)
    pool.emplace_back(work);
  for (auto& t : pool)
    t.join();
  if (err)
    std::rethrow_exception(err);
}

struct KGBOptions {
  std::optional<std::vector<RatVecModZ>> squares;  // restrict to these x^2
  bool links = true;
  unsigned threads = 1;
};

/// The space X (or its slices over chosen central squares), with the cross
/// action and Cayley transforms.  Elements are numbered by (tau, coordinate).
class KGBSpace {
public:
  /// the inner class must outlive the space
  KGBSpace(InnerClass&&, KGBOptions = {}) = delete;
  explicit KGBSpace(const InnerClass& ic, KGBOptions opt = {})
      : ic_(&ic), opt_(std::move(opt)), ti_(ic), tits_(TitsGroup::of_datum(ic.W(), ic.rd()))
  {
    build_elements();
    if (opt_.links)
      build_links();
  }
  KGBSpace(const KGBSpace&) = delete;
  KGBSpace& operator=(const KGBSpace&) = delete;

  const InnerClass& inner_class() const { return *ic_; }
  const TwistedInvolutions& twisted_involutions() const { return ti_; }
  const TitsGroup& tits() const { return tits_; }
  const Fiber& fiber(std::size_t tau) const { return fibers_[tau]; }
  std::size_t size() const { return elems_.size(); }
  const KGBElt& operator[](std::size_t id) const { return elems_[id]; }
  bool has_links() const { return opt_.links; }

  std::size_t length(std::size_t id) const { return ti_[elems_[id].tau].length; }
  std::size_t cartan(std::size_t id) const { return ti_.class_of(elems_[id].tau); }
  const WeylElt& tau_word(std::size_t id) const { return ti_[elems_[id].tau].w; }
  RatVec lambda(std::size_t id) const
  {
    return fibers_[elems_[id].tau].representative(elems_[id].coord);
  }
  /// the elements over one twisted involution, in coordinate order
  std::pair<std::size_t, std::size_t> fiber_range(std::size_t tau) const
  {
    return {start_[tau], start_[tau + 1]};
  }

  std::optional<std::size_t> find(std::size_t tau, const RatVecModZ& c) const
  {
    auto b = elems_.begin() + static_cast<long>(start_[tau]);
    auto e = elems_.begin() + static_cast<long>(start_[tau + 1]);
    auto it = std::lower_bound(b, e, c, [](const KGBElt& x, const RatVecModZ& v) { return x.coord < v; });
    if (it == e || !(it->coord == c))
      return std::nullopt;
    return static_cast<std::size_t>(it - elems_.begin());
  }
  std::size_t locate(std::size_t tau, const RatVec& lambda) const
  {
    auto r = find(tau, fibers_[tau].coord(lambda));
    if (!r)
      throw KGBError(KGBError::Kind::NotFound, "element outside the enumerated space");
    return *r;
  }

  Status status(std::size_t id, std::size_t s) const { return elems_[id].status[s]; }

  /// grading of the simple root s; 1 means noncompact
  int grading(std::size_t id, std::size_t s) const
  {
    Status st = elems_[id].status[s];
    if (st != Status::compact && st != Status::noncompact)
      throw KGBError(KGBError::Kind::NotImaginary, "root is not imaginary");
    return st == Status::noncompact ? 1 : 0;
  }

  /// grading of an arbitrary imaginary root, by moving it to a simple root
  /// with the cross action
  int root_grading(std::size_t id, std::size_t root) const
  {
    const RootDatum& rd = ic_->rd();
    const RootClassification& rc = classification(elems_[id].tau);
    if (rc.kind[root] != RootKind::imaginary)
      throw KGBError(KGBError::Kind::NotImaginary, "root is not imaginary");
    if (!rd.is_positive(root))
      root = rd.negative(root);
    std::size_t x = id;
    for (;;) {
      for (std::size_t s = 0; s < rd.semisimple_rank(); ++s)
        if (rd.simple_root_index(s) == root)
          return grading(x, s);
      std::size_t s = 0;
      while (dot(rd.root(root), rd.simple_coroots()[s]) <= 0)
        ++s;
      root = rd.reflect_root(s, root);
      x = cross(x, s);
    }
  }

  std::size_t cross(std::size_t id, std::size_t s) const
  {
    return opt_.links ? cross_[id * rank_ + s] : compute_cross(id, s);
  }
  /// Cayley transform by a noncompact imaginary simple root
  std::size_t cayley(std::size_t id, std::size_t s) const
  {
    if (elems_[id].status[s] != Status::noncompact)
      throw KGBError(KGBError::Kind::NotNoncompactImaginary, "root is not noncompact imaginary");
    return opt_.links ? static_cast<std::size_t>(cayley_[id * rank_ + s]) : compute_cayley(id, s);
  }
  long cayley_or_none(std::size_t id, std::size_t s) const
  {
    return elems_[id].status[s] == Status::noncompact ? static_cast<long>(cayley(id, s)) : -1;
  }
  /// inverse Cayley transform by a real simple root: one or two elements
  std::vector<std::size_t> cayley_inverse(std::size_t id, std::size_t s) const
  {
    if (elems_[id].status[s] != Status::real)
      throw KGBError(KGBError::Kind::NotReal, "root is not real");
    if (!opt_.links)
      return compute_cayley_inverse(id, s);
    std::vector<std::size_t> out{static_cast<std::size_t>(icayley_[2 * (id * rank_ + s)])};
    long b = icayley_[2 * (id * rank_ + s) + 1];
    if (b >= 0)
      out.push_back(static_cast<std::size_t>(b));
    return out;
  }
  /// w x x for a word w (rightmost letter acts first)
  std::size_t cross_word(std::size_t id, const std::vector<std::uint8_t>& word) const
  {
    for (std::size_t k = word.size(); k-- > 0;)
      id = cross(id, word[k]);
    return id;
  }

  const RootClassification& classification(std::size_t tau) const
  {
    std::call_once(class_once_[tau], [&] { classes_[tau] = classify_roots(*ic_, ti_[tau].w); });
    return classes_[tau];
  }

  /// the fiber over the distinguished involution, in canonical order:
  /// by square, then by fiber coordinate relative to the base point
  const std::vector<std::size_t>& base_fiber() const { return base_; }

  /// connected components of the cross/Cayley graph, one per strong real
  /// form, ordered by their first base-fiber element, quasisplit last
  const std::vector<std::vector<std::size_t>>& forms() const
  {
    require_links();
    return forms_;
  }
  std::size_t form_of(std::size_t id) const
  {
    require_links();
    return form_of_[id];
  }
  bool is_quasisplit(std::size_t form) const
  {
    require_links();
    return quasisplit_[form];
  }

  /// the W-orbit of x under the cross action
  std::vector<std::size_t> cross_orbit(std::size_t id) const
  {
    std::vector<std::size_t> orbit{id};
    std::map<std::size_t, bool> seen{{id, true}};
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (std::size_t s = 0; s < rank_; ++s) {
        std::size_t y = cross(orbit[k], s);
        if (seen.emplace(y, true).second)
          orbit.push_back(y);
      }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
  }

private:
  void require_links() const
  {
    if (!opt_.links)
      throw std::logic_error("space was built without links");
  }

  void build_elements()
  {
    const std::size_t nt = ti_.size();
    rank_ = ic_->rd().semisimple_rank();
    fibers_.resize(nt);
    classes_.resize(nt);
    class_once_ = std::make_unique<std::once_flag[]>(nt);
    std::vector<std::vector<RatVecModZ>> pts(nt);
    parallel_for(nt, opt_.threads, [&](std::size_t i) {
      fibers_[i] = Fiber(*ic_, tits_, ti_[i].w);
      std::vector<RatVecModZ> p;
      if (opt_.squares) {
        for (auto& z : *opt_.squares) {
          ModSolution s = fibers_[i].points_with_square(z);
          if (s.solvable) {
            auto e = s.enumerate();
            p.insert(p.end(), e.begin(), e.end());
          }
        }
      } else {
        p = fibers_[i].all_points().enumerate();
      }
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
      pts[i] = std::move(p);
    });
    start_.assign(nt + 1, 0);
    for (std::size_t i = 0; i < nt; ++i) {
      start_[i] = elems_.size();
      for (auto& c : pts[i]) {
        KGBElt e;
        e.tau = i;
        e.square = fibers_[i].square(c);
        e.coord = c;
        elems_.push_back(std::move(e));
      }
    }
    start_[nt] = elems_.size();
    const RootDatum& rd = ic_->rd();
    parallel_for(elems_.size(), opt_.threads, [&](std::size_t id) {
      KGBElt& e = elems_[id];
      const TwistedInvolution& t = ti_[e.tau];
      RatVec lam = fibers_[e.tau].representative(e.coord);
      e.status.resize(rank_);
      for (std::size_t s = 0; s < rank_; ++s) {
        switch (t.simple_kind[s]) {
        case RootKind::complex:
          e.status[s] = Status::complex;
          break;
        case RootKind::real:
          e.status[s] = Status::real;
          break;
        case RootKind::imaginary:
          e.status[s] = dot(rd.simple_roots()[s], lam).is_integer() ? Status::compact : Status::noncompact;
          break;
        }
      }
    });
    build_base();
  }

  void build_base()
  {
    // tau = e is the first twisted involution
    const Fiber& f = fibers_[0];
    std::map<RatVecModZ, std::vector<std::size_t>> by_square;
    for (std::size_t id = start_[0]; id < start_[1]; ++id)
      by_square[elems_[id].square].push_back(id);
    for (auto& [z, ids] : by_square) {
      ModSolution s = f.points_with_square(z);
      IntVec base = s.coords(elems_[ids.front()].coord);  // ids are in coordinate order
      std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
      for (auto id : ids) {
        IntVec c = s.coords(elems_[id].coord);
        std::uint64_t key = 0;
        for (std::size_t k = 0; k < c.size(); ++k)
          key |= std::uint64_t(mod_floor(c[k] - base[k], s.orders[k]) & 1) << k;
        keyed.emplace_back(key, id);
      }
      std::sort(keyed.begin(), keyed.end());
      for (auto& kv : keyed)
        base_.push_back(kv.second);
    }
  }

  RatVec half(std::uint64_t t) const
  {
    RatVec v(ic_->rd().rank(), Rat(0));
    for (std::size_t k = 0; k < v.size(); ++k)
      if ((t >> k) & 1)
        v[k] = Rat(1, 2);
    return v;
  }
  static RatVec add(RatVec a, const RatVec& b)
  {
    for (std::size_t k = 0; k < a.size(); ++k)
      a[k] += b[k];
    return a;
  }
  /// lambda-coordinate of e(mu) * P * delta where P = sigma_w e(t)
  RatVec fold(const RatVec& mu, const TitsElt& p) const { return add(mu, half(tits_.act(p.w, p.t))); }

  std::size_t compute_cross(std::size_t id, std::size_t s) const
  {
    const KGBElt& e = elems_[id];
    const TwistedInvolution& t = ti_[e.tau];
    const std::size_t target = static_cast<std::size_t>(t.cross[s]);
    TitsElt p = tits_.mul(tits_.mul(tits_.sigma(s), tits_.lift(t.w)),
                          tits_.sigma_inverse(ic_->diagram_perm()[s]));
    if (!(p.w == ti_[target].w))
      throw std::logic_error("cross action left the twisted involution");
    RatVec mu = ic_->rd().reflect_coX(s, lambda(id));
    return locate(target, fold(mu, p));
  }

  std::size_t compute_cayley(std::size_t id, std::size_t s) const
  {
    const KGBElt& e = elems_[id];
    const TwistedInvolution& t = ti_[e.tau];
    const std::size_t target = static_cast<std::size_t>(t.cayley[s]);
    TitsElt p = tits_.mul(tits_.sigma(s), tits_.lift(t.w));
    if (!(p.w == ti_[target].w))
      throw std::logic_error("Cayley transform left the twisted involutions");
    RatVec mu = ic_->rd().reflect_coX(s, lambda(id));
    return locate(target, fold(mu, p));
  }

  /// Candidates come from the two normalizations <alpha, lambda> = 0, 1/2
  /// (and their m_alpha translates); those the forward transform sends back
  /// to x are the inverse images.
  std::vector<std::size_t> compute_cayley_inverse(std::size_t id, std::size_t s) const
  {
    const RootDatum& rd = ic_->rd();
    const TwistedInvolution& t = ti_[elems_[id].tau];
    const std::size_t target = static_cast<std::size_t>(t.inverse_cayley[s]);
    const IntVec& coroot = rd.simple_coroots()[s];
    TitsElt p = tits_.mul(tits_.sigma(s), tits_.lift(t.w));
    if (!(p.w == ti_[target].w))
      throw std::logic_error("inverse Cayley transform left the twisted involutions");
    std::vector<std::size_t> out;
    for (Rat v : {Rat(0), Rat(1, 2)}) {
      RatVec lam = lambda(id);
      Rat x = (v - dot(rd.simple_roots()[s], lam)) / Rat(2);
      for (std::size_t k = 0; k < lam.size(); ++k)
        lam[k] += x * Rat(coroot[k]);
      RatVec mu = fold(rd.reflect_coX(s, lam), p);
      for (int shift = 0; shift < 2; ++shift) {
        if (shift)
          for (std::size_t k = 0; k < mu.size(); ++k)
            mu[k] += Rat(coroot[k], 2);
        auto y = find(target, fibers_[target].coord(mu));
        if (y && elems_[*y].status[s] == Status::noncompact && compute_cayley(*y, s) == id)
          out.push_back(*y);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty() || out.size() > 2)
      throw std::logic_error("inverse Cayley transform found no preimage");
    return out;
  }

  void build_links()
  {
    const std::size_t n = elems_.size();
    cross_.assign(n * rank_, 0);
    cayley_.assign(n * rank_, -1);
    icayley_.assign(2 * n * rank_, -1);
    parallel_for(n, opt_.threads, [&](std::size_t id) {
      for (std::size_t s = 0; s < rank_; ++s) {
        cross_[id * rank_ + s] = compute_cross(id, s);
        Status st = elems_[id].status[s];
        if (st == Status::noncompact)
          cayley_[id * rank_ + s] = static_cast<long>(compute_cayley(id, s));
        else if (st == Status::real) {
          auto v = compute_cayley_inverse(id, s);
          icayley_[2 * (id * rank_ + s)] = static_cast<long>(v[0]);
          if (v.size() > 1)
            icayley_[2 * (id * rank_ + s) + 1] = static_cast<long>(v[1]);
        }
      }
    });
    // components
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t a) {
      while (parent[a] != a)
        a = parent[a] = parent[parent[a]];
      return a;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
      a = root(a);
      b = root(b);
      if (a != b)
        parent[std::max(a, b)] = std::min(a, b);
    };
    for (std::size_t id = 0; id < n; ++id)
      for (std::size_t s = 0; s < rank_; ++s) {
        unite(id, cross_[id * rank_ + s]);
        if (cayley_[id * rank_ + s] >= 0)
          unite(id, static_cast<std::size_t>(cayley_[id * rank_ + s]));
      }
    std::map<std::size_t, std::size_t> comp_index;
    std::vector<std::vector<std::size_t>> comps;
    for (auto b : base_) {
      std::size_t r = root(b);
      if (comp_index.emplace(r, comps.size()).second)
        comps.emplace_back();
    }
    form_of_.assign(n, 0);
    for (std::size_t id = 0; id < n; ++id) {
      auto it = comp_index.find(root(id));
      if (it == comp_index.end())
        throw std::logic_error("element not connected to the distinguished fiber");
      comps[it->second].push_back(id);
    }
    std::vector<bool> qs(comps.size(), false);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (auto id : comps[c])
        if (classification(elems_[id].tau).pos_imaginary.empty()) {
          qs[c] = true;
          break;
        }
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (!qs[c])
        order.push_back(c);
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (qs[c])
        order.push_back(c);
    for (auto c : order) {
      for (auto id : comps[c])
        form_of_[id] = forms_.size();
      forms_.push_back(comps[c]);
      quasisplit_.push_back(qs[c]);
    }
  }

  const InnerClass* ic_;
  KGBOptions opt_;
  TwistedInvolutions ti_;
  TitsGroup tits_;
  std::size_t rank_ = 0;
  std::vector<Fiber> fibers_;
  std::vector<KGBElt> elems_;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> base_;
  mutable std::vector<RootClassification> classes_;
  std::unique_ptr<std::once_flag[]> class_once_;
  std::vector<std::size_t> cross_;
  std::vector<long> cayley_, icayley_;
  std::vector<std::vector<std::size_t>> forms_;
  std::vector<std::size_t> form_of_;
  std::vector<bool> quasisplit_;
};

struct KGBRow {
  std::size_t global = 0;
  std::size_t length = 0, cartan = 0;
  std::vector<Status> status;
  std::vector<std::size_t> cross;
  std::vector<long> cayley;
  WeylElt tau;
  RatVecModZ square;
};

/// A numbered listing of a union of forms.
struct KGBTable {
  std::vector<KGBRow> rows;
  std::vector<std::vector<std::size_t>> form_partition;  // local ids per listed form
  std::vector<std::size_t> form_ids;                     // global form numbers
  std::vector<std::string> generation_log;

  std::string text() const
  {
    std::size_t nd = std::to_string(rows.empty() ? 0 : rows.size() - 1).size();
    std::ostringstream os;
    char buf[64];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const KGBRow& r = rows[i];
      std::string idstr = std::to_string(i);
      os << std::string(nd - idstr.size(), ' ') << idstr << ':';
      std::snprintf(buf, sizeof buf, "%3zu%3zu", r.length, r.cartan);
      os << buf << "  [";
      for (std::size_t s = 0; s < r.status.size(); ++s)
        os << (s ? "," : "") << static_cast<char>(r.status[s]);
      os << "] ";
      auto cell = [&](const std::string& v) {
        os << std::string(nd + 2 - std::min(nd + 2, v.size()), ' ') << v;
      };
      for (auto c : r.cross)
        cell(std::to_string(c));
      os << "  ";
      for (auto c : r.cayley)
        cell(c < 0 ? std::string("*") : std::to_string(c));
      if (!r.tau.is_identity())
        os << "  " << r.tau.str();
      os << '\n';
    }
    return os.str();
  }

  /// cross edges undirected, Cayley edges directed, both labelled by the
  /// 1-based simple index
  std::string dot(const std::string& name = "kgb") const
  {
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=BT;\n  node [shape=circle];\n";
    std::map<std::size_t, std::vector<std::size_t>> by_len;
    for (std::size_t i = 0; i < rows.size(); ++i)
      by_len[rows[i].length].push_back(i);
    for (auto& [len, ids] : by_len) {
      os << "  { rank=same;";
      for (auto i : ids)
        os << " " << i << ";";
      os << " }\n";
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t s = 0; s < rows[i].cross.size(); ++s) {
        std::size_t j = rows[i].cross[s];
        if (i <= j)
          os << "  " << i << " -> " << j << " [dir=none, style=dashed, label=\"" << s + 1 << "\"];\n";
      }
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t s = 0; s < rows[i].cayley.size(); ++s)
        if (rows[i].cayley[s] >= 0)
          os << "  " << i << " -> " << rows[i].cayley[s] << " [label=\"" << s + 1 << "\"];\n";
    os << "}\n";
    return os.str();
  }
};

/// Numbers the union of the given forms: breadth first from their base
/// fiber elements (cross before Cayley, simple roots in order), then
/// stably sorted by length.
inline KGBTable make_table(const KGBSpace& X, const std::vector<std::size_t>& form_ids)
{
  std::vector<bool> wanted(X.forms().size(), false);
  for (auto f : form_ids)
    wanted[f] = true;
  std::vector<std::size_t> order;
  std::map<std::size_t, std::size_t> seen;
  auto visit = [&](std::size_t id) {
    if (seen.emplace(id, 0).second)
      order.push_back(id);
  };
  for (auto b : X.base_fiber())
    if (wanted[X.form_of(b)])
      visit(b);
  const std::size_t r = X.inner_class().rd().semisimple_rank();
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t id = order[k];
    for (std::size_t s = 0; s < r; ++s)
      visit(X.cross(id, s));
    for (std::size_t s = 0; s < r; ++s)
      if (X.status(id, s) == Status::noncompact)
        visit(X.cayley(id, s));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return X.length(a) < X.length(b); });
  for (std::size_t i = 0; i < order.size(); ++i)
    seen[order[i]] = i;
  KGBTable t;
  for (auto id : order) {
    KGBRow row;
    row.global = id;
    row.length = X.length(id);
    row.cartan = X.cartan(id);
    row.tau = X.tau_word(id);
    row.square = X[id].square;
    for (std::size_t s = 0; s < r; ++s) {
      row.status.push_back(X.status(id, s));
      row.cross.push_back(seen.at(X.cross(id, s)));
      long c = X.cayley_or_none(id, s);
      row.cayley.push_back(c < 0 ? -1 : static_cast<long>(seen.at(static_cast<std::size_t>(c))));
    }
    t.rows.push_back(std::move(row));
  }
  for (auto f : form_ids) {
    std::vector<std::size_t> local;
    for (auto id : X.forms()[f])
      local.push_back(seen.at(id));
    std::sort(local.begin(), local.end());
    t.form_partition.push_back(local);
    t.form_ids.push_back(f);
  }
  t.generation_log.push_back("bfs from " + std::to_string(X.base_fiber().size()) +
                             " base elements; sorted by length");
  return t;
}

inline KGBTable enumerate_X(const KGBSpace& X)
{
  std::vector<std::size_t> all(X.forms().size());
  std::iota(all.begin(), all.end(), 0);
  return make_table(X, all);
}

inline KGBTable enumerate_form(const KGBSpace& X, std::size_t form)
{
  if (form >= X.forms().size())
    throw std::out_of_range("no strong real form " + std::to_string(form));
  return make_table(X, {form});
}

struct StrongRealForm {
  std::size_t index = 0;
  std::vector<std::size_t> base_elements;  // the orbit in the distinguished fiber
  RatVecModZ square;
  std::size_t size = 0;                    // |X[x]|
  bool quasisplit = false;
};

inline std::vector<StrongRealForm> strong_real_forms(const KGBSpace& X)
{
  std::vector<StrongRealForm> out;
  for (std::size_t f = 0; f < X.forms().size(); ++f) {
    StrongRealForm srf;
    srf.index = f;
    for (auto b : X.base_fiber())
      if (X.form_of(b) == f)
        srf.base_elements.push_back(b);
    srf.square = X[srf.base_elements.front()].square;
    srf.size = X.forms()[f].size();
    srf.quasisplit = X.is_quasisplit(f);
    out.push_back(std::move(srf));
  }
  return out;
}

struct RealWeylReport {
  std::uint64_t order = 0;           // |W(K,H)| = |Stab_W(x)|
  std::uint64_t complex_part = 0;    // |(W_C)^tau|
  std::uint64_t imaginary_part = 0;  // |Stab_{W_i}(x)|
  std::uint64_t real_part = 0;       // |W_r|
  std::uint64_t W_i_order = 0;
  std::size_t orbit_size = 0;
};

inline RealWeylReport real_weyl(const KGBSpace& X, std::size_t id)
{
  const std::uint64_t w = X.inner_class().W().order();
  const RootClassification& rc = X.classification(X[id].tau);
  const TwistedInvolutions& ti = X.twisted_involutions();
  RealWeylReport r;
  r.orbit_size = X.cross_orbit(id).size();
  r.order = w / r.orbit_size;
  std::uint64_t stab_tau = w / ti.classes()[ti.class_of(X[id].tau)].size();
  r.complex_part = stab_tau / (rc.W_i_order * rc.W_r_order);
  r.real_part = rc.W_r_order;
  r.W_i_order = rc.W_i_order;
  r.imaginary_part = r.order / (r.complex_part * r.real_part);
  return r;
}

struct CartanInfo {
  std::size_t cartan_class;
  std::size_t representative;  // global id of an element over that class
  TorusSignature signature;
};

inline std::vector<CartanInfo> cartans_for(const KGBSpace& X, std::size_t form)
{
  std::map<std::size_t, std::size_t> rep;
  for (auto id : X.forms()[form])
    rep.emplace(X.cartan(id), id);
  std::vector<CartanInfo> out;
  for (auto [c, id] : rep)
    out.push_back({c, id, X.fiber(X[id].tau).signature()});
  return out;
}

/// Cartan classes of the inner class, with torus signatures
inline std::vector<CartanInfo> cartan_classes(const KGBSpace& X)
{
  const TwistedInvolutions& ti = X.twisted_involutions();
  std::vector<CartanInfo> out;
  for (std::size_t c = 0; c < ti.classes().size(); ++c) {
    std::size_t t = ti.classes()[c].front();
    out.push_back({c, t, X.fiber(t).signature()});
  }
  return out;
}

/// the action of the twist on X-check (x) Q / X-check
inline RatVecModZ twist_center(const InnerClass& ic, const RatVecModZ& z)
{
  return RatVecModZ(ic.gamma().transpose().apply(z.entries()));
}

struct ReducedSpace {
  std::vector<RatVecModZ> fixed_center;  // Z^Gamma
  std::vector<RatVecModZ> Z0;            // transversal of Z^Gamma / {z theta(z)}
  std::vector<std::size_t> slice_sizes;  // |X(z)| for z in Z0
};

inline ReducedSpace reduced_space(const InnerClass& ic)
{
  ReducedSpace r;
  std::vector<RatVecModZ> center = center_elements(ic.rd());
  for (auto& z : center)
    if (twist_center(ic, z) == z)
      r.fixed_center.push_back(z);
  std::vector<RatVecModZ> norms;
  for (auto& z : center)
    norms.push_back(z + twist_center(ic, z));
  std::sort(norms.begin(), norms.end());
  norms.erase(std::unique(norms.begin(), norms.end()), norms.end());
  std::vector<bool> taken(r.fixed_center.size(), false);
  for (std::size_t i = 0; i < r.fixed_center.size(); ++i) {
    if (taken[i])
      continue;
    r.Z0.push_back(r.fixed_center[i]);  // fixed_center is sorted, so this is the minimum
    for (auto& n : norms) {
      auto it = std::lower_bound(r.fixed_center.begin(), r.fixed_center.end(), r.fixed_center[i] + n);
      if (it != r.fixed_center.end() && *it == r.fixed_center[i] + n)
        taken[static_cast<std::size_t>(it - r.fixed_center.begin())] = true;
    }
  }
  KGBSpace X(ic, KGBOptions{r.Z0, false, 1});
  for (auto& z : r.Z0) {
    std::size_t n = 0;
    for (std::size_t id = 0; id < X.size(); ++id)
      if (X[id].square == z)
        ++n;
    r.slice_sizes.push_back(n);
  }
  return r;
}

} // namespace rforms
