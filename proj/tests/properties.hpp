#pragma once

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"

namespace rtest {

/// cases checked and failures seen by one property, with the first few
/// failure descriptions
struct Tally {
  std::size_t cases = 0, failures = 0;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& where)
  {
    ++cases;
    if (!ok) {
      ++failures;
      if (notes.size() < 5)
        notes.push_back(where);
    }
  }
  Tally& operator+=(const Tally& o)
  {
    cases += o.cases;
    failures += o.failures;
    for (auto& n : o.notes)
      if (notes.size() < 5)
        notes.push_back(n);
    return *this;
  }
};

inline std::string at(const GroupSpec& g, std::size_t id, std::size_t s = 0)
{
  return g.name() + " x=" + std::to_string(id) + " s=" + std::to_string(s);
}

/// s x (s x x) = x for simple reflections and for the reflections in all
/// positive roots, and w^{-1} x (w x x) = x for every w
inline Tally cross_involutive(const GroupSpec& g, const rforms::KGBSpace& X)
{
  Tally t;
  const rforms::InnerClass& ic = X.inner_class();
  const rforms::RootDatum& rd = ic.rd();
  const std::size_t r = rd.semisimple_rank();
  std::vector<rforms::WeylElt> reflections;
  for (std::size_t b = 0; b < rd.num_pos(); ++b)
    reflections.push_back(rforms::sigma_root(X.tits(), rd, b).w);
  auto W = ic.W().enumerate();
  for (std::size_t id = 0; id < X.size(); ++id) {
    for (std::size_t s = 0; s < r; ++s) {
      std::size_t y = X.cross(id, s);
      t.check(X.cross(y, s) == id && X[y].square == X[id].square, at(g, id, s));
    }
    for (std::size_t b = 0; b < reflections.size(); ++b)
      t.check(X.cross_word(X.cross_word(id, reflections[b].word), reflections[b].word) == id,
              at(g, id) + " reflection " + std::to_string(b));
    for (const auto& w : W)
      t.check(X.cross_word(X.cross_word(id, w.word), ic.W().inverse(w).word) == id,
              at(g, id) + " w=" + w.str());
  }
  return t;
}

/// c^a(c_a(x)) = x for real a; c_a(c^a(x)) = {x, m_a x} for noncompact a
inline Tally cayley_round_trip(const GroupSpec& g, const rforms::KGBSpace& X)
{
  Tally t;
  const rforms::RootDatum& rd = X.inner_class().rd();
  for (std::size_t id = 0; id < X.size(); ++id)
    for (std::size_t s = 0; s < rd.semisimple_rank(); ++s) {
      rforms::Status st = X.status(id, s);
      if (st == rforms::Status::real) {
        auto pre = X.cayley_inverse(id, s);
        bool ok = !pre.empty() && pre.size() <= 2;
        for (auto p : pre)
          ok = ok && X.cayley(p, s) == id;
        t.check(ok, at(g, id, s) + " real");
      } else if (st == rforms::Status::noncompact) {
        std::size_t y = X.cayley(id, s);
        rforms::RatVec lam = X.lambda(id);
        const rforms::IntVec& co = rd.simple_coroots()[s];
        for (std::size_t k = 0; k < lam.size(); ++k)
          lam[k] += rforms::Rat(co[k], 2);
        std::size_t m = X.locate(X[id].tau, lam);
        std::set<std::size_t> want{id, m};
        auto back = X.cayley_inverse(y, s);
        t.check(std::set<std::size_t>(back.begin(), back.end()) == want, at(g, id, s) + " noncompact");
      }
    }
  return t;
}

/// gradings after a Cayley transform: imaginary roots orthogonal to a, the
/// grading flipping exactly when a + b is a root
inline Tally grading_transfer(const GroupSpec& g, const rforms::KGBSpace& X)
{
  Tally t;
  const rforms::RootDatum& rd = X.inner_class().rd();
  for (std::size_t id = 0; id < X.size(); ++id)
    for (std::size_t s = 0; s < rd.semisimple_rank(); ++s) {
      if (X.status(id, s) != rforms::Status::noncompact)
        continue;
      std::size_t y = X.cayley(id, s);
      const auto& cx = X.classification(X[id].tau);
      const auto& cy = X.classification(X[y].tau);
      const std::size_t a = rd.simple_root_index(s);
      for (std::size_t b = 0; b < rd.num_pos(); ++b) {
        bool orth = rforms::dot(rd.root(b), rd.simple_coroots()[s]) == 0;
        bool expect_im = cx.kind[b] == rforms::RootKind::imaginary && orth;
        bool is_im = cy.kind[b] == rforms::RootKind::imaginary;
        bool ok = expect_im == is_im;
        if (ok && is_im) {
          int flip = rd.sum_root(a, b) >= 0 ? 1 : 0;
          ok = X.root_grading(y, b) == (X.root_grading(id, b) ^ flip);
        }
        t.check(ok, at(g, id, s) + " root " + std::to_string(b));
      }
    }
  return t;
}

/// gr_{w x}(w a) = gr_x(a), and c^{w a}(w x) = w c^a(x) for simple a, w a
inline Tally cross_equivariance(const GroupSpec& g, const rforms::KGBSpace& X, std::mt19937_64& rng,
                                std::size_t samples_per_element = 3)
{
  Tally t;
  const rforms::InnerClass& ic = X.inner_class();
  const rforms::RootDatum& rd = ic.rd();
  auto W = ic.W().enumerate();
  for (std::size_t id = 0; id < X.size(); ++id)
    for (std::size_t k = 0; k < samples_per_element; ++k) {
      const rforms::WeylElt& w = W[rng() % W.size()];
      std::size_t wx = X.cross_word(id, w.word);
      const auto& cx = X.classification(X[id].tau);
      const auto& cw = X.classification(X[wx].tau);
      for (auto b : cx.pos_imaginary) {
        std::size_t wb = ic.act_root(w, b);
        bool ok = cw.kind[wb] == rforms::RootKind::imaginary &&
                  X.root_grading(wx, wb) == X.root_grading(id, b);
        t.check(ok, at(g, id) + " w=" + w.str() + " root " + std::to_string(b));
      }
      for (std::size_t s = 0; s < rd.semisimple_rank(); ++s) {
        if (X.status(id, s) != rforms::Status::noncompact)
          continue;
        std::size_t wa = ic.act_root(w, rd.simple_root_index(s));
        for (std::size_t u = 0; u < rd.semisimple_rank(); ++u)
          if (rd.simple_root_index(u) == wa)
            t.check(X.status(wx, u) == rforms::Status::noncompact &&
                        X.cayley(wx, u) == X.cross_word(X.cayley(id, s), w.word),
                    at(g, id, s) + " w=" + w.str() + " cayley to " + std::to_string(u));
      }
    }
  return t;
}

/// each nonempty |X_tau(z)| is a power of two, equal to the order of the
/// fiber group and to 2^b for b circle factors, and z is fixed by the twist;
/// the fiber group acts simply transitively on each slice
inline Tally fiber_powers_of_two(const GroupSpec& g, const rforms::KGBSpace& X)
{
  Tally t;
  const auto& ti = X.twisted_involutions();
  for (std::size_t tau = 0; tau < ti.size(); ++tau) {
    auto [b, e] = X.fiber_range(tau);
    std::map<rforms::RatVecModZ, std::size_t> by_square;
    for (std::size_t id = b; id < e; ++id)
      ++by_square[X[id].square];
    const rforms::Fiber& f = X.fiber(tau);
    auto group = f.fiber_group().enumerate();
    for (auto& [z, n] : by_square) {
      bool ok = n != 0 && (n & (n - 1)) == 0 && n == group.size() &&
                n == (std::size_t(1) << f.signature().b) && rforms::twist_center(X.inner_class(), z) == z;
      t.check(ok, g.name() + " tau=" + std::to_string(tau) + " z=" + z.str());
    }
    for (std::size_t id = b; id < e; ++id) {
      std::set<std::size_t> orbit;
      bool ok = true;
      for (auto& h : group) {
        auto y = X.find(tau, X[id].coord + h);
        ok = ok && y && X[*y].square == X[id].square;
        if (y)
          orbit.insert(*y);
      }
      ok = ok && orbit.size() == group.size() && orbit.size() == by_square[X[id].square];
      t.check(ok, at(g, id) + " fiber group orbit");
    }
  }
  return t;
}

/// p: X -> twisted involutions is onto and intertwines the cross action and
/// Cayley transforms with the corresponding moves on twisted involutions
inline Tally p_surjective(const GroupSpec& g, const rforms::KGBSpace& X)
{
  Tally t;
  const auto& ti = X.twisted_involutions();
  const std::size_t r = X.inner_class().rd().semisimple_rank();
  std::vector<bool> hit(ti.size(), false);
  for (std::size_t id = 0; id < X.size(); ++id) {
    hit[X[id].tau] = true;
    for (std::size_t s = 0; s < r; ++s) {
      bool ok = static_cast<long>(X[X.cross(id, s)].tau) == ti[X[id].tau].cross[s];
      if (X.status(id, s) == rforms::Status::noncompact)
        ok = ok && static_cast<long>(X[X.cayley(id, s)].tau) == ti[X[id].tau].cayley[s];
      t.check(ok, at(g, id, s));
    }
  }
  for (std::size_t tau = 0; tau < ti.size(); ++tau)
    t.check(hit[tau], g.name() + " empty fiber over tau=" + std::to_string(tau));
  return t;
}

/// the forms partition X, and two elements of the distinguished fiber lie in
/// one form exactly when they are W-conjugate
inline Tally partition_identity(const GroupSpec& g, const rforms::KGBSpace& X)
{
  Tally t;
  std::vector<int> seen(X.size(), 0);
  std::size_t total = 0;
  for (std::size_t f = 0; f < X.forms().size(); ++f) {
    total += X.forms()[f].size();
    for (auto id : X.forms()[f])
      ++seen[id];
  }
  t.check(total == X.size(), g.name() + " sum of form sizes");
  for (std::size_t id = 0; id < X.size(); ++id)
    t.check(seen[id] == 1, at(g, id) + " form membership");
  const auto& base = X.base_fiber();
  for (auto a : base) {
    auto orbit = X.cross_orbit(a);
    std::set<std::size_t> o(orbit.begin(), orbit.end());
    for (auto b : base)
      t.check((X.form_of(a) == X.form_of(b)) == (o.count(b) == 1),
              g.name() + " base " + std::to_string(a) + "," + std::to_string(b));
  }
  return t;
}

inline std::size_t braid_order(const rforms::IntMatrix& c, std::size_t s, std::size_t u)
{
  switch (c(s, u) * c(u, s)) {
  case 0:
    return 2;
  case 1:
    return 3;
  case 2:
    return 4;
  default:
    return 6;
  }
}

/// braid relations, sigma_s^2 = m_s, torus conjugation, well defined lifts
/// and sigma_w sigma_i sigma_w^{-1} = sigma_j when w a_i = a_j
inline Tally tits_relations(const GroupSpec& g, const rforms::InnerClass& ic, std::mt19937_64& rng)
{
  Tally t;
  const rforms::WeylGroup& W = ic.W();
  const rforms::RootDatum& rd = ic.rd();
  const std::size_t r = rd.semisimple_rank();
  for (const auto& tg : {rforms::TitsGroup::of_datum(W, rd), rforms::TitsGroup::simply_connected(W)}) {
    const std::size_t n = tg.torus_rank();
    for (std::size_t s = 0; s < r; ++s) {
      t.check(tg.mul(tg.sigma(s), tg.sigma(s)) == tg.torus(tg.m_alpha_simple(s)),
              g.name() + " square " + std::to_string(s));
      t.check(tg.mul(tg.sigma(s), tg.sigma_inverse(s)) == tg.torus(0),
              g.name() + " inverse " + std::to_string(s));
      for (std::uint64_t h = 0; h < (std::uint64_t(1) << std::min<std::size_t>(n, 6)); ++h)
        t.check(tg.mul(tg.mul(tg.sigma(s), tg.torus(h)), tg.sigma_inverse(s)) ==
                    tg.torus(tg.act_simple(s, h)),
                g.name() + " conjugation " + std::to_string(s));
      for (std::size_t u = 0; u < r; ++u) {
        if (u == s)
          continue;
        std::size_t m = braid_order(W.cartan(), s, u);
        std::vector<std::uint8_t> a, b;
        for (std::size_t k = 0; k < m; ++k) {
          a.push_back(static_cast<std::uint8_t>(k % 2 ? u : s));
          b.push_back(static_cast<std::uint8_t>(k % 2 ? s : u));
        }
        t.check(tg.from_word(a) == tg.from_word(b), g.name() + " braid " + std::to_string(s) + "," +
                                                      std::to_string(u));
      }
    }
    for (const auto& w : W.enumerate()) {
      rforms::TitsElt lw = tg.from_word(w.word);
      for (int k = 0; k < 3; ++k)
        t.check(tg.from_word(W.random_reduced_word(w, rng)) == lw, g.name() + " lift " + w.str());
      t.check(tg.mul(lw, tg.inverse(lw)) == tg.torus(0), g.name() + " lift inverse " + w.str());
      for (std::size_t i = 0; i < r; ++i) {
        std::size_t img = ic.act_root(w, rd.simple_root_index(i));
        for (std::size_t j = 0; j < r; ++j)
          if (rd.simple_root_index(j) == img)
            t.check(tg.mul(tg.mul(lw, tg.sigma(i)), tg.inverse(lw)) == tg.sigma(j),
                    g.name() + " conjugate lift " + w.str());
      }
    }
  }
  return t;
}

/// For an imaginary root b, xi sigma_b xi^{-1} is sigma_b when b is compact
/// and m_b sigma_b when b is noncompact, computed in the Tits group.
/// Roots with m_b = 1 carry no information and are skipped.
inline Tally gradings_by_conjugation(const GroupSpec& g, const rforms::KGBSpace& X)
{
  Tally t;
  const rforms::InnerClass& ic = X.inner_class();
  const rforms::RootDatum& rd = ic.rd();
  const rforms::TitsGroup& tg = X.tits();
  const std::size_t n = rd.rank();
  std::vector<std::uint64_t> image_of_bit;
  rforms::IntMatrix gt = ic.gamma().transpose();
  for (std::size_t k = 0; k < n; ++k)
    image_of_bit.push_back(rforms::mod2_mask(gt.col(k)));
  for (std::size_t id = 0; id < X.size(); ++id) {
    const auto& cl = X.classification(X[id].tau);
    rforms::TitsElt st = tg.lift(X.tau_word(id));
    rforms::RatVec lam = X.lambda(id);
    for (auto b : cl.pos_imaginary) {
      const rforms::IntVec& co = rd.coroot(b);
      if (rforms::mod2_mask(co) == 0)
        continue;
      rforms::TitsElt sb = tg.mul(tg.mul(st, tg.twist(rforms::sigma_root(tg, rd, b), ic.diagram_perm(),
                                                     image_of_bit)),
                                  tg.inverse(st));
      rforms::TitsElt d = tg.mul(tg.inverse(rforms::sigma_root(tg, rd, b)), sb);
      bool ok = d.w.is_identity();
      if (ok) {
        rforms::Rat pair = rforms::dot(rd.root(b), lam);
        rforms::RatVec v(n);
        for (std::size_t k = 0; k < n; ++k)
          v[k] = rforms::Rat(((d.t >> k) & 1) ? 1 : 0, 2) - pair * rforms::Rat(co[k]);
        rforms::RatVec half(n);
        for (std::size_t k = 0; k < n; ++k)
          half[k] = rforms::Rat(co[k], 2);
        rforms::RatVecModZ vz(v);
        int gr = X.root_grading(id, b);
        ok = gr == 0 ? vz.is_zero() : vz == rforms::RatVecModZ(half);
      }
      t.check(ok, at(g, id) + " root " + std::to_string(b));
    }
  }
  return t;
}

struct PropertyReport {
  std::vector<std::pair<std::string, Tally>> rows;
  bool ok(std::size_t min_cases) const
  {
    for (auto& [name, t] : rows)
      if (t.failures || t.cases < min_cases)
        return false;
    return !rows.empty();
  }
  std::string summary() const
  {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows.size(); ++i)
      os << (i ? "; " : "") << rows[i].first << " " << rows[i].second.cases - rows[i].second.failures
         << "/" << rows[i].second.cases;
    return os.str();
  }
};

/// all property suites over the property groups and the rank three groups
inline PropertyReport run_properties(unsigned threads = 1, std::uint64_t seed = 20240601)
{
  std::mt19937_64 rng(seed);
  Tally cross, cayley, grading, equiv, fibers, p, partition, tits, conj;
  for (const auto& g : extended_property_groups()) {
    auto b = build(g, threads);
    const rforms::KGBSpace& X = *b->X;
    cross += cross_involutive(g, X);
    cayley += cayley_round_trip(g, X);
    grading += grading_transfer(g, X);
    equiv += cross_equivariance(g, X, rng);
    fibers += fiber_powers_of_two(g, X);
    p += p_surjective(g, X);
    partition += partition_identity(g, X);
    tits += tits_relations(g, b->ic, rng);
    conj += gradings_by_conjugation(g, X);
  }
  PropertyReport r;
  r.rows = {{"cross involutive", cross},   {"cayley round trip", cayley},
            {"grading transfer", grading}, {"cross equivariance", equiv},
            {"fiber powers of two", fibers}, {"p surjective", p},
            {"partition identity", partition}, {"tits relations", tits},
            {"grading by conjugation", conj}};
  return r;
}

} // namespace rtest
