#include <doctest.h>

#include "support.hpp"
#include "tln/fixed_points.hpp"

using namespace tln;
using testsupport::Q;
using testsupport::fixture;
using testsupport::Gen;

namespace {

SupportFamily family(const char* label, int n) { return parse_support_family(label, n); }

std::set<Subset> as_set(const SupportFamily& f) { return {f.supports().begin(), f.supports().end()}; }

}  // namespace

TEST_CASE("support family labels sort by size then lexicographically") {
  const SupportFamily f(3, {0b111, 0b110, 0b011});
  CHECK(f.label() == "{12,23,123}");
  CHECK(f.lines() == "12\n23\n123\n");
  CHECK(family("{123,12,23}", 3) == f);
  CHECK(family("{}", 3).empty());
  CHECK(f.contains(0b011));
  CHECK_FALSE(f.contains(0b101));
}

TEST_CASE("golden network and its perturbations") {
  CHECK(fp_chirotope(read_network(fixture("example2_6.json"))).label() == "{12,23,123}");
  CHECK(fp_chirotope(read_network(fixture("example2_6_w23.json"))).label() == "{3,12,123}");
  CHECK(fp_chirotope(read_network(fixture("example2_6_b2.json"))).label() == "{1,3,13}");
}

TEST_CASE("complete-graph and four-neuron goldens") {
  CHECK(fp_chirotope(read_network(fixture("example5_3.json"))).label() == "{123}");
  CHECK(fp_chirotope(read_network(fixture("example5_4.json"))).label() == "{14,124,1234}");
}

TEST_CASE("two-neuron fold fixtures") {
  // Before: symmetric inhibition -2 gives x^{12} = (1/3, 1/3) and both sinks.
  // After: W21 = -0.8, so x^{1} drives neuron 2 to 1 - 0.8 > 0 and x^{12}
  // has x_2 = -1/3.
  CHECK(fp_chirotope(read_network(fixture("two_neuron_fold_before.json"))).label() == "{1,2,12}");
  CHECK(fp_chirotope(read_network(fixture("two_neuron_fold_after.json"))).label() == "{2}");
}

TEST_CASE("fixed point detail of the golden network") {
  const Network net = read_network(fixture("example2_6.json"));
  const FixedPoint p = fixed_point_detail(net, 0b011);
  CHECK(p.status == FixedPoint::Status::Admissible);
  CHECK(p.coords[0] == Q(204, 739));
  CHECK(p.coords[1] == Q(163, 739));
  CHECK(p.coords[2] == 0);
  const auto x = testsupport::region_equilibrium(net, 0b011);
  CHECK(p.coords == *x);
  CHECK(l_star(net, 2, p.coords) < 0);

  const FixedPoint v = fixed_point_detail(net, 0b101);
  CHECK(v.status == FixedPoint::Status::Virtual);
  CHECK_FALSE(v.failures.empty());
}

TEST_CASE("fp_chirotope and fp_oracle agree with the Cramer oracle") {
  Gen gen(31);
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 3;
    const Network net = gen.competitive(n);
    const auto expected = testsupport::oracle_fp(net);
    if (!expected) {
      CHECK_THROWS_AS(fp_chirotope(net), DegenerateError);
      continue;
    }
    ++compared;
    CHECK(as_set(fp_chirotope(net)) == *expected);
    CHECK(as_set(fp_oracle(net)) == *expected);
  }
  CHECK(compared > 250);
}

TEST_CASE("singleton supports are exactly the sinks") {
  Gen gen(32);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    const Network net = gen.competitive(n);
    const auto fp = testsupport::oracle_fp(net);
    if (!fp) continue;
    const Digraph g = graph_of(net);
    for (int i = 0; i < n; ++i) {
      CHECK(fp->count(Subset{1} << i) == (g.is_sink(i) ? 1U : 0U));
      CHECK(contains(singleton_rule(net), i) == g.is_sink(i));
    }
  }
}

TEST_CASE("degenerate and non-competitive input") {
  const Network wall(Matrix{{0, -1}, {-1, 0}}, {1, 1});  // s^{12}_2 = 0
  CHECK_THROWS_AS(fp_chirotope(wall), DegenerateError);
  CHECK_THROWS_AS(fp_oracle(wall), DegenerateError);
  const Network bad(Matrix{{0, 1}, {-1, 0}}, {1, 1});
  CHECK_THROWS_AS(fp_chirotope(bad), std::invalid_argument);
}
