#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rforms/rforms.hpp"

namespace rtest {

struct GroupSpec {
  std::string type;
  rforms::Isogeny iso;
  std::string inner;
  std::string name() const
  {
    return type + (iso == rforms::Isogeny::sc ? "_sc_" : "_ad_") + inner;
  }
};

/// the groups used by the property suites: sc and ad, both twists
inline std::vector<GroupSpec> property_groups()
{
  std::vector<GroupSpec> out;
  for (const char* t : {"A1", "A1.A1", "A2", "B2", "C2", "G2", "A3"})
    for (auto iso : {rforms::Isogeny::sc, rforms::Isogeny::ad}) {
      out.push_back({t, iso, "c"});
      auto rd = rforms::from_type(t, iso);
      if (rforms::diagram_involutions(rd.cartan_matrix()).size() == 2)
        out.push_back({t, iso, "u"});
    }
  return out;
}

/// the property groups together with rank three products and B3, C3
inline std::vector<GroupSpec> extended_property_groups()
{
  std::vector<GroupSpec> out = property_groups();
  for (const char* t : {"A1.A2", "A1.A1.A1", "B3", "C3"})
    for (auto iso : {rforms::Isogeny::sc, rforms::Isogeny::ad}) {
      out.push_back({t, iso, "c"});
      auto rd = rforms::from_type(t, iso);
      if (rforms::diagram_involutions(rd.cartan_matrix()).size() == 2)
        out.push_back({t, iso, "u"});
    }
  return out;
}

/// groups with |W| <= 384 used by the oracle comparisons
inline std::vector<GroupSpec> oracle_groups()
{
  std::vector<GroupSpec> out = property_groups();
  for (const char* t : {"B3", "C3", "A1.A2", "A1.A1.A1", "A2.A2", "B2.A1", "A4", "D4", "B4", "C4"})
    for (auto iso : {rforms::Isogeny::sc, rforms::Isogeny::ad}) {
      out.push_back({t, iso, "c"});
      auto rd = rforms::from_type(t, iso);
      if (rforms::diagram_involutions(rd.cartan_matrix()).size() == 2)
        out.push_back({t, iso, "u"});
    }
  return out;
}

struct Built {
  rforms::InnerClass ic;
  std::unique_ptr<rforms::KGBSpace> X;
};

inline std::unique_ptr<Built> build(const GroupSpec& g, unsigned threads = 1)
{
  auto b = std::make_unique<Built>();
  b->ic = rforms::make_inner_class(rforms::from_type(g.type, g.iso), g.inner);
  rforms::KGBOptions opt;
  opt.threads = threads;
  b->X = std::make_unique<rforms::KGBSpace>(b->ic, opt);
  return b;
}

} // namespace rtest
