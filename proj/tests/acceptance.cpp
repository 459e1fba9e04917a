// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Optional argument: seed (default 0).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "support.hpp"
#include "tln/atlas.hpp"
#include "tln/dynamics.hpp"
#include "tln/mutations.hpp"
#include "tln/sampling.hpp"
#include "tln/sweep.hpp"

using namespace tln;
using testsupport::Q;
using testsupport::fixture;

namespace {

// Pinned tolerances and limits.
constexpr double kResidualBound = 1e-9;
const Rational kSweepTol(1, 10000);
constexpr double kLimit1 = 1.0, kLimit5 = 30.0, kLimit6 = 120.0, kLimit7 = 300.0, kLimit13 = 60.0;
constexpr int kGPNetworks = 100;
constexpr int kOracleNetworks = 1000;
constexpr int kMutationChirotopes = 20;
constexpr std::size_t kAtlasSamples = 100000;
constexpr std::size_t kRobustSamples = 10000;
constexpr int kDynamicsNetworks = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::uint64_t g_seed = 0;

// Shared state between criteria.
std::vector<Network> g_oracle_nets;    // criterion 7, all sizes
std::vector<Network> g_n3_nets;        // n = 3 networks from criteria 7, 8, 9
std::vector<AtlasClass> g_atlas;       // criteria 9, 10, 12
std::size_t g_degenerate_draws = 0;

Rng rng_for(std::uint64_t task) { return derived_rng(g_seed, task); }

// Draws until the chirotope is simplicial; degenerate draws are counted.
Network simplicial_draw(int n, Rng& rng) {
  for (;;) {
    Network net = random_competitive(n, rng);
    if (Chirotope::of(net).simplicial()) return net;
    ++g_degenerate_draws;
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome c1() {
  const auto t0 = std::chrono::steady_clock::now();
  const SupportFamily fp = fp_chirotope(read_network(fixture("example2_6.json")));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {fp.label() == "{12,23,123}" && secs < kLimit1, "FP = " + fp.label() + " in " + fmt(secs) + " s"};
}

Outcome c2() {
  const Network net = read_network(fixture("example2_6.json"));
  const Rational s2 = s_determinant(net, 0b110, 1).value;
  const Rational s3 = s_determinant(net, 0b110, 2).value;
  const Rational s1 = s_determinant(net, 0b110, 0).value;
  const bool pass = s2 == Q(466, 10000) && s3 == Q(4, 100) && s1 == Q(-19, 1000);
  return {pass, "s^{23}_2 = " + to_exact_string(s2) + ", s^{23}_3 = " + to_exact_string(s3) + ", s^{23}_1 = " +
                    to_exact_string(s1) + " (expected -0.019)"};
}

Outcome c3() {
  const auto a = fp_chirotope(read_network(fixture("example2_6_w23.json")));
  const auto b = fp_chirotope(read_network(fixture("example2_6_b2.json")));
  return {a.label() == "{3,12,123}" && b.label() == "{1,3,13}", "W23 = -0.8: " + a.label() + ", b2 = 0.25: " + b.label()};
}

Outcome c4() {
  const Network net = read_network(fixture("example5_3.json"));
  const SupportFamily fp = fp_chirotope(net);
  const Rational d = delta(net, 2, 1, 0);
  const UnlockPlan plan = unlock_path(net, full_support_basis(2));
  const bool two_phase = plan.phases.size() == 2 && plan.phases[0].goal.find("Delta^{32}_1") != std::string::npos &&
                         plan.after == -plan.before;
  return {fp.label() == "{123}" && d == Q(505, 10000) && two_phase,
          "FP = " + fp.label() + ", Delta^{32}_1 = " + to_exact_string(d) + ", phases " + std::to_string(plan.phases.size()) +
              (plan.phases.empty() ? "" : " (first: " + plan.phases[0].goal + ")")};
}

Outcome c5() {
  const auto t0 = std::chrono::steady_clock::now();
  const Network net = read_network(fixture("example5_4.json"));
  const SupportFamily fp = fp_chirotope(net);
  ParamPath path;
  path.base = net;
  path.target = Parameter::parse("W31", 4);
  path.from = path.target.get(net);
  path.to = Q(-1, 100);
  path.steps = 1000;
  const SweepResult r = sweep(path, kSweepTol);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = fp.label() == "{14,124,1234}" && r.events.size() >= 2 && secs < kLimit5;
  std::string detail = "FP = " + fp.label();
  if (r.events.size() >= 2) {
    const auto& e1 = r.events[0];
    const auto& e2 = r.events[1];
    pass = pass && e1.change() == "{124,1234}->{}" && e1.lo >= Q(-128, 100) && e1.hi <= Q(-124, 100) &&
           e2.change() == "{14}->{134}" && e2.lo >= Q(-16, 100) && e2.hi <= Q(-12, 100);
    for (const auto& e : r.events) pass = pass && e.hi - e.lo <= kSweepTol;
    detail += "; " + e1.change() + " in [" + to_decimal(e1.lo, 6) + ", " + to_decimal(e1.hi, 6) + "]; " + e2.change() +
              " in [" + to_decimal(e2.lo, 6) + ", " + to_decimal(e2.hi, 6) + "]";
  }
  return {pass, detail + "; " + std::to_string(r.events.size()) + " events in " + fmt(secs) + " s"};
}

Outcome c6() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t relations = 0, nonzero = 0;
  for (int n = 2; n <= 4; ++n) {
    Rng rng = rng_for(600 + static_cast<std::uint64_t>(n));
    for (int t = 0; t < kGPNetworks; ++t) {
      const GPReport r = gp_check(random_competitive(n, rng));
      relations += r.relations;
      nonzero += r.max_residual != 0;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {nonzero == 0 && secs < kLimit6,
          std::to_string(relations) + " relations, " + std::to_string(nonzero) + " networks with a nonzero residual, " +
              fmt(secs) + " s"};
}

Outcome c7() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t mismatches = 0;
  for (int n = 2; n <= 5; ++n) {
    Rng rng = rng_for(700 + static_cast<std::uint64_t>(n));
    for (int t = 0; t < kOracleNetworks; ++t) {
      const Network net = simplicial_draw(n, rng);
      if (!(fp_chirotope(net) == fp_oracle(net))) ++mismatches;
      g_oracle_nets.push_back(net);
      if (n == 3) g_n3_nets.push_back(net);
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {mismatches == 0 && secs < kLimit7, std::to_string(g_oracle_nets.size()) + " networks, " +
                                                 std::to_string(mismatches) + " mismatches, " +
                                                 std::to_string(g_degenerate_draws) + " degenerate redraws, " + fmt(secs) + " s"};
}

Outcome c8() {
  Rng rng = rng_for(800);
  std::size_t checks = 0, disagree = 0;
  for (int t = 0; t < kMutationChirotopes; ++t) {
    const Network net = simplicial_draw(3, rng);
    g_n3_nets.push_back(net);
    const Chirotope chi = Chirotope::of(net);
    for (std::size_t b = 0; b < chi.basis_count(); ++b, ++checks) disagree += is_mutation(chi, b) != is_mutation_bruteforce(chi, b);
  }
  return {disagree == 0 && checks == 700, std::to_string(checks) + " basis checks, " + std::to_string(disagree) + " disagreements"};
}

void run_atlas() {
  if (!g_atlas.empty()) return;
  AtlasOptions opt;
  opt.samples = kAtlasSamples;
  opt.explore.seed = g_seed;
  opt.jobs = std::max(1U, std::thread::hardware_concurrency());
  g_atlas = atlas(opt);
}

Outcome c9() {
  run_atlas();
  std::size_t robust = 0, bad = 0;
  std::string ids;
  for (const auto& c : g_atlas) {
    if (!c.robust()) continue;
    ++robust;
    ids += (ids.empty() ? "" : ",") + std::to_string(c.id);
    const SupportFamily expected = c.regimes().front();
    Rng rng = rng_for(900 + c.graph.mask());
    for (std::size_t s = 0; s < kRobustSamples; ++s) {
      const Network net = random_with_graph(c.graph, rng);
      g_n3_nets.push_back(net);
      if (!Chirotope::of(net).simplicial()) continue;
      bad += !(fp_chirotope(net) == expected);
    }
  }
  return {robust == 5 && bad == 0, std::to_string(robust) + " of " + std::to_string(g_atlas.size()) + " classes robust (" + ids +
                                       "), " + std::to_string(bad) + " off-regime networks"};
}

Outcome c10() {
  run_atlas();
  std::size_t most = 0;
  for (const auto& c : g_atlas) most = std::max(most, c.regimes().size());
  const std::uint64_t target = canonical_mask(graph_of(read_network(fixture("example2_6.json"))));
  std::set<std::string> found;
  int id = 0;
  for (const auto& c : g_atlas)
    if (c.graph.mask() == target) {
      id = c.id;
      for (const auto& fp : c.regimes()) found.insert(fp.label());
    }
  const std::set<std::string> expected{"{12,23,123}", "{3,12,123}", "{1,3,13}", "{12}"};
  std::string got;
  for (const auto& s : found) got += (got.empty() ? "" : " ") + s;
  return {most <= 4 && found == expected,
          "max regimes " + std::to_string(most) + "; class " + std::to_string(id) + " of the golden network has (canonical labels) " + got};
}

Outcome c11() {
  std::size_t bad = 0;
  for (const auto& net : g_oracle_nets) {
    const SupportFamily fp = fp_chirotope(net);
    const Digraph g = graph_of(net);
    for (int i = 0; i < net.n; ++i) bad += fp.contains(Subset{1} << i) != g.is_sink(i);
  }
  return {!g_oracle_nets.empty() && bad == 0,
          std::to_string(g_oracle_nets.size()) + " networks, " + std::to_string(bad) + " violations"};
}

Outcome c12() {
  std::size_t bad = 0, nets = g_n3_nets.size();
  for (const auto& net : g_n3_nets) bad += separation_profile(net).violations();
  for (const auto& c : g_atlas) {
    bad += c.separation_violations;
    nets += c.samples;
  }
  return {nets > 0 && bad == 0, std::to_string(nets) + " n=3 networks, " + std::to_string(bad) + " violations"};
}

Outcome c13() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng = rng_for(1300);
  std::size_t admissible = 0, virtuals = 0, bad = 0;
  double worst_admissible = 0, least_virtual = 1e300;
  for (int t = 0; t < kDynamicsNetworks; ++t) {
    const Network net = simplicial_draw(3, rng);
    for (Subset sigma = 1; sigma < 8; ++sigma) {
      const FixedPoint p = fixed_point_detail(net, sigma);
      std::vector<double> x;
      for (const auto& v : p.coords) x.push_back(to_double(v));
      const double r = residual(net, x);
      if (p.status == FixedPoint::Status::Admissible) {
        ++admissible;
        worst_admissible = std::max(worst_admissible, r);
        bad += !(r < kResidualBound);
      } else {
        ++virtuals;
        least_virtual = std::min(least_virtual, r);
        bad += !(r > kResidualBound);
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {bad == 0 && secs < kLimit13, std::to_string(admissible) + " admissible (max residual " + fmt(worst_admissible) +
                                           "), " + std::to_string(virtuals) + " virtual (min residual " + fmt(least_virtual) +
                                           "), " + fmt(secs) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_seed = std::strtoull(argv[1], nullptr, 10);
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5}, {6, c6}, {7, c7}, {8, c8}, {9, c9}, {10, c10}, {11, c11}, {12, c12}, {13, c13}};
  int passed = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    passed += o.pass;
    std::printf("%s criterion %2d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
