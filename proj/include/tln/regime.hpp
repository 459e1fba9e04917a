#pragma once

// Mutation graphs (nodes are chirotopes realized by networks with a fixed
// graph) and their contraction to bifurcation graphs (nodes are FP sets).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tln/chirotope.hpp"
#include "tln/fixed_points.hpp"
#include "tln/sampling.hpp"

namespace tln {

enum class Realizable { Yes, Unknown };

struct RegimeNode {
  std::string key;  // chirotope key; empty for bifurcation nodes
  SupportFamily fp;
  std::optional<Network> witness;
  /// Bifurcation nodes: the mutation nodes contracted into this one.
  std::vector<std::size_t> members;
};

struct RegimeEdge {
  std::size_t a = 0, b = 0;  // a < b
  std::string label;         // flipped basis, or the support change
};

/// A flip that is a mutation, unpinned, and for which no witness was found.
struct OpenMutation {
  std::size_t node = 0;
  std::size_t basis = 0;
  std::string key;
  Realizable status = Realizable::Unknown;
};

struct RegimeGraph {
  enum class Kind { Mutation, Bifurcation };
  Kind kind = Kind::Mutation;
  int n = 0;
  Digraph graph;
  std::vector<RegimeNode> nodes;
  std::vector<RegimeEdge> edges;
  std::vector<OpenMutation> unknown;

  bool connected() const;
  std::optional<std::size_t> find(const SupportFamily& fp) const;
  /// Edge labels leaving node v (either direction).
  std::vector<std::string> labels_at(std::size_t v) const;
  std::string to_dot(const std::string& name) const;
};

/// Distinct chirotopes seen so far, each with one realizing network.
class WitnessPool {
 public:
  /// Adds the network if its chirotope is simplicial and new. Returns true
  /// if added.
  bool add(const Network& net);
  bool add(const Network& net, const Chirotope& chi);
  const Network* find(const std::string& key) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, Network>& entries() const { return entries_; }

 private:
  std::map<std::string, Network> entries_;
};

struct ExploreOptions {
  std::uint64_t seed = 0;
  /// Chirotope evaluations spent on each unrealized neighbor.
  std::size_t budget = 10000;
  /// Networks sampled up front into the witness pool.
  std::size_t pool = 2000;
  std::size_t max_nodes = 4000;
};

/// Randomized search for a network whose chirotope has the given key,
/// starting from `starts`. Parameters move on a grid of 1/10000. Every
/// candidate is evaluated exactly. Returns nullopt when the budget runs out.
std::optional<Network> realize(const std::string& key, std::size_t flipped, const std::vector<const Network*>& starts,
                               Rng& rng, std::size_t budget);

/// BFS over unpinned mutations from a sampled seed network with graph g
/// (n = 3). `pool` may carry networks sampled elsewhere; it is extended.
RegimeGraph mutation_graph(const Digraph& g, const ExploreOptions& opt, WitnessPool* pool = nullptr);

/// Consecutive distinct chirotopes along a list of networks, joined in
/// order. Useful for walks in any dimension.
RegimeGraph walk_graph(const std::vector<Network>& walk);

/// Contracts edges whose endpoints share an FP set. Edges are labeled with
/// the support change, e.g. "{124,1234}->{}" or "{123}->{12}".
RegimeGraph bifurcation_graph(const RegimeGraph& mg);

/// "{removed}->{added}".
std::string support_change(const SupportFamily& before, const SupportFamily& after);

/// Fold: two supports sigma, sigma+i vanish. Persistent: sigma becomes
/// sigma+i (or back). Anything else is "other".
std::string change_form(const SupportFamily& before, const SupportFamily& after);

/// 16 hex digits of FNV-1a over the key.
std::string stable_hash(const std::string& key);

}  // namespace tln
