#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tln/regime.hpp"

namespace tln {

/// Smallest mask over all relabelings (brute force over n! permutations).
std::uint64_t canonical_mask(const Digraph& g);
Digraph canonical_form(const Digraph& g);

/// One representative per isomorphism class, ordered by edge count and then
/// canonical mask. 16 classes for n = 3.
std::vector<Digraph> digraph_classes(int n);

struct AtlasClass {
  int id = 0;  // 1-based position in digraph_classes order
  Digraph graph;
  std::size_t labelings = 0;  // digraphs in the class
  std::size_t samples = 0;
  std::size_t degenerate = 0;
  std::size_t separation_violations = 0;
  std::map<SupportFamily, std::size_t> sampled;  // FP set -> sample count
  RegimeGraph mutations;
  RegimeGraph bifurcations;

  /// Distinct FP sets from sampling and exploration, sorted by label.
  std::vector<SupportFamily> regimes() const;
  bool robust() const { return regimes().size() == 1; }
  std::string report() const;
};

struct AtlasOptions {
  std::size_t samples = 100000;
  ExploreOptions explore;
  unsigned jobs = 1;
};

AtlasClass explore_class(int id, const Digraph& g, const AtlasOptions& opt);
std::vector<AtlasClass> atlas(const AtlasOptions& opt);

}  // namespace tln
