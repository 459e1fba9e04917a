#include "tln/atlas.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <thread>

#include "tln/mutations.hpp"

namespace tln {

std::uint64_t canonical_mask(const Digraph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.n()));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = g.mask();
  do best = std::min(best, g.permuted(perm).mask());
  while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Digraph canonical_form(const Digraph& g) { return Digraph::from_mask(g.n(), canonical_mask(g)); }

std::vector<Digraph> digraph_classes(int n) {
  if (n < 1 || n > 4) throw UnsupportedError("digraph classes are enumerated for n <= 4");
  std::set<std::uint64_t> seen;
  const int slots = n * n;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << slots); ++m) {
    bool loops = false;
    for (int i = 0; i < n; ++i) loops |= (m >> (i * n + i)) & 1U;
    if (!loops) seen.insert(canonical_mask(Digraph::from_mask(n, m)));
  }
  std::vector<Digraph> out;
  for (auto m : seen) out.push_back(Digraph::from_mask(n, m));
  std::stable_sort(out.begin(), out.end(), [](const Digraph& a, const Digraph& b) {
    const auto ea = a.edges().size(), eb = b.edges().size();
    return ea != eb ? ea < eb : a.mask() < b.mask();
  });
  return out;
}

std::vector<SupportFamily> AtlasClass::regimes() const {
  std::set<SupportFamily> all;
  for (const auto& [fp, count] : sampled) all.insert(fp);
  for (const auto& node : mutations.nodes) all.insert(node.fp);
  return {all.begin(), all.end()};
}

std::string AtlasClass::report() const {
  std::string out;
  out += "class " + std::to_string(id) + "\n";
  out += "graph " + (graph.edges().empty() ? std::string("(no edges)") : graph.to_string()) + "\n";
  out += "labelings " + std::to_string(labelings) + "\n";
  out += "samples " + std::to_string(samples) + " (degenerate " + std::to_string(degenerate) + ")\n";
  out += "separation violations " + std::to_string(separation_violations) + "\n";
  const auto all = regimes();
  out += "regimes " + std::to_string(all.size()) + (robust() ? " (robust)" : "") + "\n";
  for (const auto& fp : all) {
    auto it = sampled.find(fp);
    out += "  " + fp.label() + " samples " + std::to_string(it == sampled.end() ? 0 : it->second) + "\n";
  }
  out += "mutation graph " + std::to_string(mutations.nodes.size()) + " nodes, " + std::to_string(mutations.edges.size()) +
         " edges, " + std::to_string(mutations.unknown.size()) + " unrealized flips\n";
  out += "bifurcations\n";
  for (const auto& e : bifurcations.edges)
    out += "  " + bifurcations.nodes[e.a].fp.label() + " -- " + bifurcations.nodes[e.b].fp.label() + "  " + e.label + "  " +
           change_form(bifurcations.nodes[e.a].fp, bifurcations.nodes[e.b].fp) + "\n";
  return out;
}

AtlasClass explore_class(int id, const Digraph& g, const AtlasOptions& opt) {
  AtlasClass c;
  c.id = id;
  c.graph = g;
  {
    std::set<std::uint64_t> labelings;
    std::vector<int> perm(static_cast<std::size_t>(g.n()));
    std::iota(perm.begin(), perm.end(), 0);
    do labelings.insert(g.permuted(perm).mask());
    while (std::next_permutation(perm.begin(), perm.end()));
    c.labelings = labelings.size();
  }

  WitnessPool pool;
  Rng rng = derived_rng(opt.explore.seed, 0x100000000ULL + g.mask());
  for (std::size_t s = 0; s < opt.samples; ++s) {
    const Network net = random_with_graph(g, rng);
    ++c.samples;
    const Chirotope chi = Chirotope::of(net);
    if (!chi.simplicial()) {
      ++c.degenerate;
      continue;
    }
    ++c.sampled[fp_from_chirotope(chi)];
    c.separation_violations += separation_profile(net, g).violations();
    pool.add(net, chi);
  }
  ExploreOptions ex = opt.explore;
  c.mutations = mutation_graph(g, ex, &pool);
  c.bifurcations = bifurcation_graph(c.mutations);
  return c;
}

std::vector<AtlasClass> atlas(const AtlasOptions& opt) {
  const auto classes = digraph_classes(3);
  std::vector<AtlasClass> out(classes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < classes.size();) out[i] = explore_class(static_cast<int>(i + 1), classes[i], opt);
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(opt.jobs, static_cast<unsigned>(classes.size())));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  return out;
}

}  // namespace tln
