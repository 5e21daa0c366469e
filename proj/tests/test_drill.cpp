#include <algorithm>

#include "doctest.h"
#include "fixtures.h"
#include "rauzy/drill.h"
#include "rauzy/error.h"
#include "rauzy/verify.h"

using namespace rauzy;

namespace {

DrillParams forced(int N, std::vector<Occurrence> I) {
  DrillParams p;
  p.force_N = N;
  p.force_I = std::move(I);
  return p;
}

int holes(const DrillRecord& rec, int resolution) {
  const TileSet tiles = drilled_tiles(rec);
  std::vector<const TileApprox*> all;
  for (const auto& [i, t] : tiles) all.push_back(&t);
  return count_holes(rasterize(all, RasterConfig{resolution, 2, 2, 1}));
}

// Structural checks every record must pass, forced or searched.
void check_record(const DrillRecord& rec) {
  const int n = rec.base.alphabet();
  CHECK(rec.b == n + 1);
  CHECK(rec.a != rec.c);
  CHECK(static_cast<int>(rec.I.size()) == rec.K);
  CHECK(rec.power == power(rec.base, rec.N));
  const auto O = eligible_occurrences(rec.power, rec.a, rec.c);
  for (const Occurrence& o : rec.I) CHECK(std::find(O.begin(), O.end(), o) != O.end());
  CHECK(rec.tau == split(rec.power, {rec.a, rec.I}));
  CHECK(preceding_letter(rec.tau, rec.b) == rec.c);
  CHECK(rec.theta == conjugate(rec.tau, elementary(n + 1, rec.c, rec.b)));
  CHECK(eigen_residual(*rec.tau_spectral, incidence_matrix(rec.tau)) < 1e-9);
  CHECK(eigen_residual(*rec.theta_spectral, incidence_matrix(rec.theta)) < 1e-9);
  CHECK(rec.tau_spectral->convention == Convention::SplitDerived);
  CHECK(rec.theta_spectral->convention == Convention::ConjugationDerived);
  CHECK_FALSE(rec.checks.empty());
}

}  // namespace

TEST_CASE("eligible_occurrences") {
  const auto O = eligible_occurrences(fx::base_cubed, 1, 2);
  CHECK(O == std::vector<Occurrence>{{1, 3}, {1, 7}, {2, 2}, {2, 6}, {3, 4}});
  CHECK(eligible_occurrences(fx::base_cubed, 1, 1).empty());
  for (const Occurrence& o : eligible_occurrences(power(fx::base, 6), 1, 2)) CHECK(o.k >= 2);
  const auto O6 = eligible_occurrences(power(fx::base, 6), 1, 2);
  for (const Occurrence& o : {Occurrence{1, 24}, Occurrence{1, 31}, Occurrence{1, 33}, Occurrence{1, 40}})
    CHECK(std::find(O6.begin(), O6.end(), o) != O6.end());
}

TEST_CASE("forced drill, one hole") {
  const DrillRecord rec = drill(fx::base, 1, forced(3, {{1, 7}}));
  check_record(rec);
  CHECK(rec.forced);
  CHECK(rec.a == 1);
  CHECK(rec.c == 2);
  CHECK(rec.b == 4);
  CHECK(rec.tau == fx::drill_tau);
  CHECK(rec.theta == fx::drill_theta);
  CHECK(holes(rec, 1024) == 1);
}

TEST_CASE("forced drill, four holes") {
  const DrillRecord rec = drill(fx::base, 4, forced(6, {{1, 24}, {1, 31}, {1, 33}, {1, 40}}));
  check_record(rec);
  CHECK(rec.c == 2);
  CHECK(holes(rec, 1024) == 4);
}

TEST_CASE("forced drill on Quadribonacci") {
  DrillParams p = forced(3, {{1, 8}, {2, 7}});
  const DrillRecord rec = drill(fx::quadribonacci, 2, p);
  check_record(rec);
  CHECK(rec.b == 5);
  CHECK(rec.c == 2);
  CHECK(rec.theta == fx::quad_theta);
  CHECK(std::find(rec.checks.begin(), rec.checks.end(), "disklike heuristic skipped: fractal is not planar") !=
        rec.checks.end());
}

TEST_CASE("search drill, one hole") {
  const DrillRecord rec = drill(fx::base, 1);
  check_record(rec);
  CHECK_FALSE(rec.forced);
  CHECK(rec.n0 >= 1);
  CHECK(rec.n0 <= 4);
  CHECK(rec.N <= 8);
  // the anchor really is a factor ca of base^n0
  const Word img = power(fx::base, rec.n0)(rec.anchor.j);
  REQUIRE(rec.anchor.k >= 2);
  CHECK(img[rec.anchor.k - 1] == rec.a);
  CHECK(img[rec.anchor.k - 2] == rec.c);
  CHECK(holes(rec, 1024) == 1);

  // search is deterministic
  const DrillRecord again = drill(fx::base, 1);
  CHECK(again.N == rec.N);
  CHECK(again.I == rec.I);
}

TEST_CASE("drill refuses bad input") {
  CHECK_THROWS_AS(drill(fx::base, 0), InvalidInput);
  DrillParams only_I;
  only_I.force_I = std::vector<Occurrence>{{1, 7}};
  CHECK_THROWS_AS(drill(fx::base, 1, only_I), InvalidInput);
  CHECK_THROWS_AS(drill(fx::base, 2, forced(3, {{1, 7}})), InvalidInput);
  CHECK_THROWS_AS(drill(fx::base, 1, forced(3, {{1, 1}})), InvalidInput);
  CHECK_THROWS_AS(drill(fx::base, 2, forced(3, {{1, 7}, {1, 7}})), InvalidInput);
  // (1;3) follows 2, (2;3) follows 1
  CHECK_THROWS_AS(drill(fx::base, 2, forced(3, {{1, 3}, {2, 3}})), InvalidInput);

  CHECK_THROWS_AS(drill(fx::subst({"1", "2"}), 1), PreconditionFailed);
  CHECK_THROWS_AS(drill(fx::subst({"12222", "1"}), 1), PreconditionFailed);
  CHECK_THROWS_AS(drill(fx::subst({"1112", "21"}), 1), PreconditionFailed);
  // Fibonacci: unimodular Pisot, but the fractal is an interval
  CHECK_THROWS_AS(drill(fx::subst({"12", "1"}), 1), PreconditionFailed);

  DrillParams tight;
  tight.max_N = 1;
  CHECK_THROWS_AS(drill(fx::base, 3, tight), PreconditionFailed);
}
