#include "helpers.hpp"

#include "bagg/analysis.hpp"
#include "bagg/optdecomp.hpp"

#include <doctest.h>

#include <optional>

using namespace bagg;
using namespace bagg::testutil;

namespace {

// Brute-force oracle: best welfare over all 2^(n*m) support patterns.
std::optional<Rat> enumerate_optimum(const Profile& p) {
  const int cells = p.n * p.m;
  std::optional<Rat> best;
  for (long mask = 0; mask < (1L << cells); ++mask) {
    SupportPattern pat;
    pat.x.assign(p.n, std::vector<int>(p.m, 0));
    for (int c = 0; c < cells; ++c)
      if (mask & (1L << c)) pat.x[c / p.m][c % p.m] = 1;
    auto w = pattern_welfare(p, pat);
    if (w && (!best || *w > *best)) best = *w;
  }
  return best;
}

}  // namespace

TEST_CASE("IP model shape") {
  Profile p = fig1a();
  IpModel model = build_ip(p);
  CHECK(model.n == p.n);
  CHECK(model.m == p.m);
  CHECK(model.lp.num_vars == 3 * p.n * p.m);
  CHECK(static_cast<int>(model.binaries.size()) == p.n * p.m);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.m; ++j) CHECK(model.x_var(i, j) == 2 * p.n * p.m + i * p.m + j);
}

TEST_CASE("pattern_welfare sanity") {
  Profile p = profile({{"1", "0"}, {"0", "1"}});
  SUBCASE("diagonal pattern allows the mean") {
    SupportPattern pat{{{1, 0}, {0, 1}}};
    auto w = pattern_welfare(p, pat);
    REQUIRE(w.has_value());
    CHECK(*w == 1);  // a = (1/2, 1/2), each voter overlaps 1/2
  }
  SUBCASE("all-zero pattern is infeasible") {
    SupportPattern pat{{{0, 0}, {0, 0}}};
    CHECK(!pattern_welfare(p, pat).has_value());
  }
}

TEST_CASE("five-alternative golden optimum") {
  Profile p = example51();
  OptDecompResult res = util_decomp(p);
  CHECK(res.welfare == R("7/3"));
  CHECK(res.allocation.values == alloc({"1/12", "1/12", "1/4", "1/4", "1/3"}));
  CHECK(verify_certificate(p, {res.allocation, res.contributions}));

  // The published contribution matrix is a valid certificate for the optimum.
  DecompositionCertificate published;
  published.allocation = res.allocation;
  published.contributions.matrix = {
      {R("1/12"), R("0"), R("1/6"), R("0"), R("0")},
      {R("0"), R("1/12"), R("0"), R("1/6"), R("0")},
      {R("0"), R("0"), R("1/12"), R("0"), R("1/6")},
      {R("0"), R("0"), R("0"), R("1/12"), R("1/6")},
  };
  CHECK(verify_certificate(p, published));
}

TEST_CASE("optimum can exceed greedy but never the unconstrained welfare optimum") {
  for (const Profile& p : {fig1a(), fig1b(), profile({{"1", "0"}, {"0", "1"}})}) {
    OptDecompResult res = util_decomp(p);
    CHECK(res.welfare >= social_welfare(p, greedy_decomp(p).allocation));
    CHECK(res.welfare <= welfare_optimal(p).second);
    CHECK(verify_certificate(p, {res.allocation, res.contributions}));
  }
}

TEST_CASE("branch and bound equals pattern enumeration on small instances") {
  std::vector<Profile> instances = {
      fig1a(),
      fig1b(),
      profile({{"1", "0"}, {"0", "1"}}),
      profile({{"1/2", "1/2"}, {"1/4", "3/4"}, {"1", "0"}}),
      profile({{"1/3", "1/3", "1/3"}, {"1/2", "0", "1/2"}}),
  };
  for (int s = 0; s < 6; ++s)
    instances.push_back(random_profile({2, 3, 6, 99}, s));
  for (const Profile& p : instances) {
    auto oracle = enumerate_optimum(p);
    REQUIRE(oracle.has_value());
    CHECK(util_decomp(p).welfare == *oracle);
  }
}

TEST_CASE("seven-voter instance: greedy already optimal among decomposables") {
  Profile p = appe1();
  OptDecompResult res = util_decomp(p);
  CHECK(res.welfare == social_welfare(p, greedy_decomp(p).allocation));
}

TEST_CASE("decision wrapper") {
  Profile p = example51();
  CHECK(dwt_decide(p, R("7/3")));
  CHECK(dwt_decide(p, 2));
  CHECK(!dwt_decide(p, R("7/3") + R("1/1000")));
}

TEST_CASE("node limit is enforced") {
  Profile p = example51();
  CHECK_THROWS_AS(util_decomp(p, 1), NodeLimitExceeded);
}
