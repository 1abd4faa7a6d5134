#include "helpers.hpp"

#include "bagg/phantoms.hpp"

#include <doctest.h>

using namespace bagg;
using namespace bagg::testutil;

namespace {

// Independent closed-form evaluation of every named phantom curve, used as the
// oracle against the piecewise-linear builders.
Rat curve_oracle(MechanismId id, int n, int k, const Rat& t) {
  Rat cap(n - k, n);
  switch (id) {
    case MechanismId::Constant:
      return t;
    case MechanismId::GreedyMax:
      return t * std::min(Rat(1), Rat(n - k));
    case MechanismId::Fan:
      return std::min(cap, t);
    case MechanismId::IndependentMarkets:
      return Rat(t * cap);
    case MechanismId::Ladder:
      return std::max(Rat(0), Rat(t - Rat(k, n)));
    case MechanismId::PiecewiseUniform: {
      if (t < Rat(1, 2)) return 2 * k <= n ? Rat(4 * t * cap - 2 * t) : Rat(0);
      return 2 * k <= n ? Rat(cap * (3 - 2 * t) - 2 + 2 * t) : Rat(cap * (2 * t - 1));
    }
    case MechanismId::Util:
      return std::max(Rat(0), std::min(Rat(1), Rat(t * (n + 1) - k)));
    case MechanismId::UtilProp:
      return std::max(Rat(0), std::min(cap, Rat(t * (n + 1) - k)));
  }
  throw Error("unreachable");
}

}  // namespace

TEST_CASE("mechanism names round-trip") {
  for (MechanismId id : all_mechanisms()) {
    CHECK(mechanism_from_name(mechanism_name(id)) == id);
  }
  CHECK(mechanism_from_name("LADDER") == MechanismId::Ladder);
  CHECK(!mechanism_from_name("nope"));
}

TEST_CASE("phantom curves match their closed forms on a dense rational grid") {
  for (MechanismId id : all_mechanisms()) {
    for (int n : {1, 2, 3, 4, 5, 7}) {
      PhantomSystem sys = build_system(id, n);
      REQUIRE(static_cast<int>(sys.curves.size()) == n + 1);
      for (int k = 0; k <= n; ++k) {
        for (int tn = 0; tn <= 60; ++tn) {
          Rat t(tn, 60);
          CHECK(phantom_at(sys, k, t) == curve_oracle(id, n, k, t));
        }
      }
    }
  }
}

TEST_CASE("phantom system axioms: monotone in t, ordered in k, endpoints") {
  for (MechanismId id : all_mechanisms()) {
    for (int n : {2, 3, 5}) {
      PhantomSystem sys = build_system(id, n);
      for (int k = 0; k <= n; ++k) {
        CHECK(phantom_at(sys, k, Rat(0)) == 0);
        CHECK(phantom_at(sys, k, Rat(1)) >= Rat(n - k, n));
        Rat prev = 0;
        for (int tn = 1; tn <= 24; ++tn) {
          Rat cur = phantom_at(sys, k, Rat(tn, 24));
          CHECK(cur >= prev);  // nondecreasing in t
          prev = cur;
        }
      }
      for (int tn = 0; tn <= 24; ++tn)
        for (int k = 0; k < n; ++k)
          CHECK(phantom_at(sys, k, Rat(tn, 24)) >= phantom_at(sys, k + 1, Rat(tn, 24)));
    }
  }
}

TEST_CASE("constant mechanism returns the uniform split") {
  Profile p = example51();
  MechanismReport rep = run_phantom(p, MechanismId::Constant);
  CHECK(rep.allocation.values == alloc({"1/5", "1/5", "1/5", "1/5", "1/5"}));
}

TEST_CASE("single-minded profiles: proportional mechanisms return the mean") {
  Profile sm = profile({{"1", "0", "0"}, {"1", "0", "0"}, {"0", "0", "1"}});
  for (MechanismId id : {MechanismId::Fan, MechanismId::IndependentMarkets, MechanismId::Ladder,
                         MechanismId::PiecewiseUniform, MechanismId::UtilProp}) {
    CHECK(run_phantom(sm, id).allocation.values == alloc({"2/3", "0", "1/3"}));
  }
  // The non-proportional ones land elsewhere on this profile.
  CHECK(run_phantom(sm, MechanismId::Constant).allocation.values ==
        alloc({"1/3", "1/3", "1/3"}));
  CHECK(run_phantom(sm, MechanismId::GreedyMax).allocation.values ==
        alloc({"1/2", "0", "1/2"}));
  CHECK(run_phantom(sm, MechanismId::Util).allocation.values == alloc({"1", "0", "0"}));
}

TEST_CASE("normalization golden values (three-alternative instances)") {
  SUBCASE("ladder on P") {
    MechanismReport rep = run_phantom(appc3_p(), MechanismId::Ladder);
    CHECK(rep.t_star == R("11/12"));
    CHECK(rep.allocation.values == alloc({"5/12", "5/12", "1/6"}));
    CHECK(rep.welfare == R("11/6"));
  }
  SUBCASE("piecewise uniform on P") {
    MechanismReport rep = run_phantom(appc3_p(), MechanismId::PiecewiseUniform);
    CHECK(rep.t_star == R("9/10"));
    CHECK(rep.allocation.values == alloc({"2/5", "2/5", "1/5"}));
    CHECK(rep.welfare == R("9/5"));
  }
  SUBCASE("ladder on P'") {
    MechanismReport rep = run_phantom(appc3_pprime(), MechanismId::Ladder);
    CHECK(rep.t_star == R("2/3"));
    CHECK(rep.allocation.values == alloc({"5/12", "5/12", "1/6"}));
    CHECK(rep.welfare == R("17/6"));
  }
  SUBCASE("piecewise uniform on P'") {
    MechanismReport rep = run_phantom(appc3_pprime(), MechanismId::PiecewiseUniform);
    CHECK(rep.t_star == R("1/2"));
    CHECK(rep.allocation.values == alloc({"1/2", "1/2", "0"}));
    CHECK(rep.welfare == 3);
  }
  SUBCASE("ladder proportionality counterexample instance") {
    MechanismReport rep = run_phantom(appb4(), MechanismId::Ladder);
    CHECK(rep.t_star == R("2/3"));
    CHECK(rep.allocation.values == alloc({"2/3", "1/6", "1/6"}));
  }
}

TEST_CASE("normalization: medians sum to one and allocation is invariant over [t*, t*_max]") {
  for (MechanismId id : all_mechanisms()) {
    for (const Profile& p : {fig1a(), fig1b(), example51(), appc3_p(), appb4()}) {
      PhantomSystem sys = build_system(id, p.n);
      NormalizationResult norm = normalization_time(p, sys);
      CHECK(sum(norm.allocation.values) == 1);
      CHECK(norm.t_star <= norm.t_star_max);
      // The allocation must not depend on which normalization time is chosen.
      Rat mid = (norm.t_star + norm.t_star_max) / 2;
      for (const Rat& t : {norm.t_star_max, mid}) {
        std::vector<Rat> at_t;
        for (int j = 0; j < p.m; ++j) at_t.push_back(median_at(p, sys, t, j));
        CHECK(at_t == norm.allocation.values);
      }
    }
  }
}

TEST_CASE("util mechanism matches the direct welfare-optimal oracle") {
  for (const Profile& p : {fig1a(), fig1b(), example51(), appc3_p(), appc3_pprime()}) {
    CHECK(run_phantom(p, MechanismId::Util).welfare == welfare_optimal(p).second);
  }
}
