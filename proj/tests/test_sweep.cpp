#include <doctest.h>

#include "support.hpp"
#include "tln/mutations.hpp"
#include "tln/regime.hpp"
#include "tln/sweep.hpp"

using namespace tln;
using testsupport::Q;
using testsupport::fixture;

namespace {

ParamPath path_of(const char* file, const char* param, const char* to, int steps = 1000) {
  const Network net = read_network(fixture(file));
  ParamPath p;
  p.base = net;
  p.target = Parameter::parse(param, net.n);
  p.from = p.target.get(net);
  p.to = parse_rational(to);
  p.steps = steps;
  return p;
}

}  // namespace

TEST_CASE("four-neuron sweep of W31 finds the fold before the persistent change") {
  const Rational tol(1, 10000);
  const SweepResult r = sweep(path_of("example5_4.json", "W31", "-0.01"), tol);
  CHECK(r.start.label() == "{14,124,1234}");
  CHECK(r.end.label() == "{134}");
  REQUIRE(r.events.size() == 2);
  CHECK(r.events[0].change() == "{124,1234}->{}");
  CHECK(r.events[0].lo >= Q(-128, 100));
  CHECK(r.events[0].hi <= Q(-124, 100));
  CHECK(r.events[1].change() == "{14}->{134}");
  CHECK(r.events[1].lo >= Q(-16, 100));
  CHECK(r.events[1].hi <= Q(-12, 100));
  for (const auto& e : r.events) {
    CHECK(e.hi - e.lo <= tol);
    // The family on either side of the bracket is what fp reports there.
    ParamPath p = path_of("example5_4.json", "W31", "-0.01");
    CHECK(fp_chirotope(p.at(e.lo)) == e.before);
    CHECK(fp_chirotope(p.at(e.hi)) == e.after);
  }
}

TEST_CASE("sweep of b2 on the three-neuron golden network ends in {1,3,13}") {
  const SweepResult r = sweep(path_of("example2_6.json", "b2", "0.25", 200), Q(1, 100000));
  CHECK(r.start.label() == "{12,23,123}");
  CHECK(r.end.label() == "{1,3,13}");
  REQUIRE_FALSE(r.events.empty());
  for (std::size_t i = 1; i < r.events.size(); ++i) CHECK(r.events[i].before == r.events[i - 1].after);
  CHECK(r.events.front().before == r.start);
  CHECK(r.events.back().after == r.end);
}

TEST_CASE("two-neuron fold is found between the fixtures") {
  // W21 from -2 to -0.8: the edge 1->2 appears at W21 = -1.
  const SweepResult r = sweep(path_of("two_neuron_fold_before.json", "W21", "-0.8", 10), Q(1, 1000000));
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].change() == "{1,12}->{}");
  CHECK(change_form(r.start, r.end) == "fold");
  CHECK(r.events[0].lo <= -1);
  CHECK(r.events[0].hi >= -1);
}

TEST_CASE("sweep CSV") {
  const SweepResult r = sweep(path_of("example5_4.json", "W31", "-0.01", 100), Q(1, 1000));
  const std::string csv = r.csv();
  CHECK(csv.rfind("lo,hi,before,after,change,walls\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("sweep rejects degenerate endpoints and bad paths") {
  // W21 = -1 puts s^{12}_1 on a wall at the start.
  ParamPath p = path_of("two_neuron_fold_before.json", "W21", "-0.5");
  p.from = -1;
  CHECK_THROWS_AS(sweep(p, Q(1, 1000)), DegenerateError);
  ParamPath q = path_of("example2_6.json", "W23", "0.5");
  CHECK_THROWS(sweep(q, Q(1, 1000)));  // leaves the competitive class
}

TEST_CASE("unlock on the complete graph needs two phases") {
  const Network net = read_network(fixture("example5_3.json"));
  CHECK(delta(net, 2, 1, 0) == Q(505, 10000));
  const UnlockPlan plan = unlock_path(net, full_support_basis(2));
  REQUIRE(plan.phases.size() == 2);
  CHECK(plan.phases[0].goal.find("Delta^{32}_1") != std::string::npos);
  CHECK(plan.before == Sign::Neg);
  CHECK(plan.after == Sign::Pos);
  const Digraph g = graph_of(net);
  for (const auto& phase : plan.phases) CHECK(graph_of(phase.after) == g);
  CHECK(sign_of(delta(plan.phases[0].after, 2, 1, 0)) == Sign::Neg);
  CHECK(sign_of(s_determinant(plan.phases[1].after, 0b111, 2).value) == Sign::Pos);
}

TEST_CASE("unlock respects the graph condition") {
  const Network net = read_network(fixture("example2_6.json"));
  CHECK_THROWS_AS(unlock_path(net, full_support_basis(1)), UnsupportedError);
  for (int i : {0, 2}) {
    const UnlockPlan plan = unlock_path(net, full_support_basis(i));
    CHECK(plan.after == -plan.before);
    CHECK(graph_of(plan.phases.back().after) == graph_of(net));
  }
}
