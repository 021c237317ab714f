#include <doctest.h>

#include <cmath>

#include "slicesim/env_model.hpp"

using namespace slicesim;

TEST_CASE("default catalog matches the reference configuration") {
  const Catalog c = default_catalog();

  REQUIRE(c.infrastructures.size() == 3);
  CHECK(c.infrastructures[0].tier == Tier::edge);
  CHECK(c.infrastructures[0].cpu_capacity == 16.0);
  CHECK(c.infrastructures[0].mem_capacity == 16.0);
  CHECK(c.infrastructures[0].unit_cost == 0.010);
  CHECK(c.infrastructures[0].dn_latency_ms == 5.0);
  CHECK(c.infrastructures[1].tier == Tier::distributed);
  CHECK(c.infrastructures[1].cpu_capacity == 32.0);
  CHECK(c.infrastructures[1].unit_cost == 0.005);
  CHECK(c.infrastructures[1].dn_latency_ms == 7.5);
  CHECK(c.infrastructures[2].tier == Tier::central);
  CHECK(c.infrastructures[2].cpu_capacity == 64.0);
  CHECK(c.infrastructures[2].mem_capacity == 64.0);
  CHECK(c.infrastructures[2].unit_cost == 0.001);
  CHECK(c.infrastructures[2].dn_latency_ms == 10.0);

  REQUIRE(c.vnfs.size() == 7);
  auto expect = [&](int i, const char* name, double cpu, double mem, Plane plane) {
    CHECK(c.vnfs[i].name == name);
    CHECK(c.vnfs[i].cpu_demand == cpu);
    CHECK(c.vnfs[i].mem_demand == mem);
    CHECK(c.vnfs[i].plane == plane);
  };
  expect(0, "NRF", 0.15, 0.128, Plane::control);
  expect(1, "UDR/UDM/AUSF", 0.65, 0.896, Plane::control);
  expect(2, "AMF", 0.25, 0.256, Plane::control);
  expect(3, "SMF", 0.25, 0.256, Plane::control);
  expect(4, "UPF", 0.5, 0.512, Plane::user);
  expect(5, "CU", 0.5, 0.512, Plane::user);
  expect(6, "DU", 3.0, 2.0, Plane::user);
  CHECK(c.vnfs[6].chain_index == 0);  // DU heads the user-plane chain
  CHECK(c.vnfs[5].chain_index == 1);
  CHECK(c.vnfs[4].chain_index == 2);

  CHECK(c.latency_model.mean(0, 1) == 0.5);
  CHECK(c.latency_model.stddev(0, 1) == 0.1);
  CHECK(c.latency_model.mean(1, 2) == 20.0);
  CHECK(c.latency_model.stddev(1, 2) == 1.0);
  // edge<->central composed as the sum of the two legs
  CHECK(c.latency_model.mean(0, 2) == 20.5);
  CHECK(c.latency_model.stddev(0, 2) == doctest::Approx(std::sqrt(1.01)).epsilon(1e-15));
  for (int m = 0; m < 3; ++m) {
    CHECK(c.latency_model.mean(m, m) == 0.0);
    CHECK(c.latency_model.stddev(m, m) == 0.0);
  }
  CHECK_NOTHROW(c.latency_model.validate());
}

TEST_CASE("latency model rejects bad input") {
  LatencyModel m(3);
  CHECK_THROWS(m.set_pair(0, 1, -1.0, 0.1));
  CHECK_THROWS(m.set_pair(0, 0, 1.0, 0.0));
  CHECK_THROWS(m.set_pair(0, 5, 1.0, 0.1));
  CHECK_THROWS((void)m.mean(3, 0));
}

TEST_CASE("slice_total_demand sums component-wise") {
  const Catalog c = default_catalog();
  const SliceRequest full = make_request(0, SliceType::embb, c.vnfs, 0);
  const SliceDemand d = slice_total_demand(full);
  CHECK(d.cpu == doctest::Approx(5.3).epsilon(1e-12));
  CHECK(d.mem == doctest::Approx(4.56).epsilon(1e-12));

  SliceRequest du_only = full;
  du_only.vnfs = {c.vnfs[6]};
  const SliceDemand dd = slice_total_demand(du_only);
  CHECK(dd.cpu == 3.0);
  CHECK(dd.mem == 2.0);

  SliceRequest empty = full;
  empty.vnfs.clear();
  const SliceDemand de = slice_total_demand(empty);
  CHECK(de.cpu == 0.0);
  CHECK(de.mem == 0.0);
}

TEST_CASE("link latency sampling") {
  const Catalog c = default_catalog();
  Rng rng(7);

  SUBCASE("collocated pair is exactly zero") {
    for (int m = 0; m < 3; ++m) CHECK(sample_link_latency(c.latency_model, m, m, rng) == 0.0);
  }

  SUBCASE("sample means match the distribution parameters") {
    double sum01 = 0.0, sum12 = 0.0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) sum01 += sample_link_latency(c.latency_model, 0, 1, rng);
    for (int i = 0; i < n; ++i) sum12 += sample_link_latency(c.latency_model, 1, 2, rng);
    CHECK(std::abs(sum01 / n - 0.5) < 0.01);
    CHECK(std::abs(sum12 / n - 20.0) < 0.1);
  }

  SUBCASE("draws are never negative") {
    double lo = 1e9;
    for (int i = 0; i < 200'000; ++i)
      lo = std::min(lo, sample_link_latency(c.latency_model, 0, 1, rng));
    CHECK(lo >= 0.0);
  }

  SUBCASE("unknown pair is an error") {
    CHECK_THROWS((void)sample_link_latency(c.latency_model, 0, 9, rng));
  }
}

TEST_CASE("generate_scenario draws the documented type mix") {
  int counts[3] = {0, 0, 0};
  int total = 0;
  for (int s = 0; s < 10'000; ++s) {
    const Scenario sc = generate_scenario(15, 1000 + s);
    for (const auto& r : sc.requests) {
      ++counts[static_cast<int>(r.slice_type)];
      ++total;
    }
  }
  CHECK(std::abs(static_cast<double>(counts[static_cast<int>(SliceType::urllc)]) / total - 0.2) <
        0.02);
  CHECK(std::abs(static_cast<double>(counts[static_cast<int>(SliceType::embb)]) / total - 0.3) <
        0.02);
  CHECK(std::abs(static_cast<double>(counts[static_cast<int>(SliceType::mmtc)]) / total - 0.5) <
        0.02);
}

TEST_CASE("generate_scenario is a pure function of count and seed") {
  const Scenario a = generate_scenario(12, 99);
  const Scenario b = generate_scenario(12, 99);
  REQUIRE(a.requests.size() == b.requests.size());
  for (std::size_t i = 0; i < a.requests.size(); ++i) {
    CHECK(a.requests[i].slice_type == b.requests[i].slice_type);
    CHECK(a.requests[i].id == b.requests[i].id);
    CHECK(a.requests[i].latency_budget_ms == b.requests[i].latency_budget_ms);
    CHECK(a.requests[i].consolidation_required == b.requests[i].consolidation_required);
  }
  const Scenario c = generate_scenario(12, 100);
  bool differs = false;
  for (std::size_t i = 0; i < c.requests.size(); ++i)
    differs = differs || c.requests[i].slice_type != a.requests[i].slice_type;
  CHECK(differs);
}

TEST_CASE("generated requests carry type defaults") {
  const Scenario sc = generate_scenario(5, 4242);
  double cpu = 0.0, mem = 0.0;
  for (const auto& r : sc.requests) {
    const auto d = slice_total_demand(r);
    cpu += d.cpu;
    mem += d.mem;
    switch (r.slice_type) {
      case SliceType::urllc:
        CHECK(r.latency_budget_ms == 10.0);
        CHECK_FALSE(r.consolidation_required);
        break;
      case SliceType::embb:
        CHECK(r.latency_budget_ms == 20.0);
        CHECK_FALSE(r.consolidation_required);
        break;
      case SliceType::mmtc:
        CHECK(r.latency_budget_ms == 50.0);
        CHECK(r.consolidation_required);
        break;
    }
  }
  CHECK(cpu == doctest::Approx(26.5).epsilon(1e-12));
  CHECK(mem == doctest::Approx(22.8).epsilon(1e-12));
  CHECK_THROWS((void)generate_scenario(0, 1));
}
