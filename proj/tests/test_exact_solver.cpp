#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "slicesim/exact_solver.hpp"

using namespace slicesim;

namespace {

Scenario typed_scenario(const std::vector<SliceType>& types) {
  const Catalog c = default_catalog();
  Scenario s;
  s.infrastructures = c.infrastructures;
  s.latency_model = c.latency_model;
  for (std::size_t i = 0; i < types.size(); ++i)
    s.requests.push_back(make_request(static_cast<int>(i), types[i], c.vnfs, static_cast<int>(i)));
  return s;
}

double enumeration_min_feasible(const Scenario& s) {
  const auto entries = enumerate_all(s, 10'000'000);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : entries)
    if (e.feasible) best = std::min(best, e.cost);
  return best;
}

}  // namespace

TEST_CASE("single consolidated mMTC slice lands entirely on the central cloud") {
  const Scenario s = typed_scenario({SliceType::mmtc});
  const SolveResult r = solve_exact(s);
  REQUIRE(r.placement.has_value());
  CHECK(r.optimal);
  for (int v = 0; v < 7; ++v) CHECK(*r.placement->infra_of(0, v) == 2);
  CHECK(r.cost == doctest::Approx(0.0072416).epsilon(1e-12));

  // only three consolidated options exist; central is the cheapest by rate
  CHECK(r.cost == enumeration_min_feasible(s));
}

TEST_CASE("single URLLC slice: user plane avoids the central data network") {
  const Scenario s = typed_scenario({SliceType::urllc});
  const SolveResult r = solve_exact(s);
  REQUIRE(r.placement.has_value());
  const auto& req = s.requests[0];
  CHECK(user_plane_latency(*r.placement, req, s, LatencyMode::mean) < 10.0);
  CHECK(*r.placement->infra_of(0, 4) != 2);       // UPF off the central cloud
  CHECK(r.cost == enumeration_min_feasible(s));   // 3^7 oracle
  CHECK(is_feasible(*r.placement, s).feasible());
}

TEST_CASE("oracle equivalence on mixed two-slice scenarios") {
  for (std::uint64_t seed : {11u, 22u, 33u}) {
    const Scenario s = generate_scenario(2, seed);
    const SolveResult r = solve_exact(s);
    REQUIRE(r.placement.has_value());
    CHECK(r.cost == enumeration_min_feasible(s));
    CHECK(is_feasible(*r.placement, s).feasible());
  }
}

TEST_CASE("over-committed scenario has no feasible placement") {
  const Scenario s = typed_scenario(std::vector<SliceType>(22, SliceType::embb));
  const SolveResult r = solve_exact(s);  // 116.6 cores demanded, 112 exist
  CHECK_FALSE(r.placement.has_value());
  CHECK(r.optimal);
}

TEST_CASE("enumerate_all counts the full assignment space") {
  const Scenario one = typed_scenario({SliceType::embb});
  CHECK(enumerate_all(one, 10'000).size() == 2187);  // 3^7

  const Scenario two = typed_scenario({SliceType::embb, SliceType::urllc});
  CHECK(enumerate_all(two, 5'000'000).size() == 4'782'969);  // 3^14

  CHECK_THROWS((void)enumerate_all(two, 1'000'000));  // space over the limit

  // consolidated slices do not shrink the enumerated space, only the
  // feasible subset
  const Scenario cons = typed_scenario({SliceType::mmtc});
  const auto entries = enumerate_all(cons, 10'000);
  CHECK(entries.size() == 2187);
  int feasible = 0;
  for (const auto& e : entries) feasible += e.feasible ? 1 : 0;
  CHECK(feasible == 3);
}

TEST_CASE("placement_from_code reconstructs the coded assignment") {
  const Scenario s = typed_scenario({SliceType::embb});
  const auto entries = enumerate_all(s, 10'000);
  const Placement p = placement_from_code(s, entries[5].code);
  CHECK(*p.infra_of(0, 0) == 2);  // 5 = 2 + 1*3 in base 3
  CHECK(*p.infra_of(0, 1) == 1);
  for (int v = 2; v < 7; ++v) CHECK(*p.infra_of(0, v) == 0);
  CHECK(placement_cost(p, s) == entries[5].cost);
}

TEST_CASE("pruned search explores no more than plain enumeration") {
  const Scenario s = generate_scenario(2, 77);
  const SolveResult r = solve_exact(s);
  // full-tree node count for depth 14, branching 3
  std::uint64_t full = 0, level = 1;
  for (int d = 0; d < 14; ++d) {
    level *= 3;
    full += level;
  }
  CHECK(r.nodes_explored <= full);
}

TEST_CASE("optimal cost is invariant to infrastructure ordering") {
  for (std::uint64_t seed : {5u, 6u}) {
    Scenario s = generate_scenario(2, seed);
    const double base = solve_exact(s).cost;

    // reverse the infrastructure list, remapping ids and latency pairs
    Scenario rev = s;
    const int n = static_cast<int>(s.infrastructures.size());
    rev.latency_model = LatencyModel(n);
    for (int i = 0; i < n; ++i) {
      rev.infrastructures[i] = s.infrastructures[n - 1 - i];
      rev.infrastructures[i].id = i;
    }
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        rev.latency_model.set_pair(a, b, s.latency_model.mean(n - 1 - a, n - 1 - b),
                                   s.latency_model.stddev(n - 1 - a, n - 1 - b));
    CHECK(solve_exact(rev).cost == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("extra capacity never makes the optimum worse") {
  for (std::uint64_t seed : {3u, 4u, 9u}) {
    Scenario s = generate_scenario(2, seed);
    const double base = solve_exact(s).cost;
    for (std::size_t m = 0; m < s.infrastructures.size(); ++m) {
      Scenario bigger = s;
      bigger.infrastructures[m].cpu_capacity *= 2.0;
      bigger.infrastructures[m].mem_capacity *= 2.0;
      CHECK(solve_exact(bigger).cost <= base + 1e-15);
    }
  }
}

TEST_CASE("time budget returns an incumbent marked non-optimal") {
  // capacity-saturated scenario, tiny budget
  const Scenario s = typed_scenario(std::vector<SliceType>(15, SliceType::embb));
  const SolveResult r = solve_exact(s, 0.02);
  CHECK(r.wall_time_s < 5.0);
  if (r.placement) CHECK(is_feasible(*r.placement, s).feasible());
}

TEST_CASE("deterministic output across repeated solves") {
  const Scenario s = generate_scenario(5, 123);
  const SolveResult a = solve_exact(s);
  const SolveResult b = solve_exact(s);
  REQUIRE(a.placement.has_value());
  REQUIRE(b.placement.has_value());
  CHECK(a.cost == b.cost);
  CHECK(*a.placement == *b.placement);
  CHECK(a.nodes_explored == b.nodes_explored);
}
