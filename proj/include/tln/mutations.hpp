#pragma once

// Grassmann-Pluecker relations, the rank-one mutation test, and the sign
// constraints a fixed graph imposes on the chirotope in dimension three.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "tln/chirotope.hpp"
#include "tln/network.hpp"

namespace tln {

/// One three-term relation: sigma is an (n-1)-set and tau a disjoint 4-set of
/// ground elements, both ascending. With B(x, y) = det(sigma, x, y):
///   B(t1,t2) B(t3,t4) - B(t1,t3) B(t2,t4) + B(t1,t4) B(t2,t3) = 0.
struct GPRelation {
  std::vector<int> sigma;
  std::array<int, 4> tau{};
  /// For each of the six determinants: the basis index and the parity that
  /// turns the basis sign into the ordered-tuple sign. Order: (t1t2, t3t4,
  /// t1t3, t2t4, t1t4, t2t3).
  std::array<std::size_t, 6> basis{};
  std::array<Sign, 6> parity{};

  std::string to_string(int n) const;
};

/// Every relation for dimension n (cached). 5, 105 and 1260 for n = 2, 3, 4.
const std::vector<GPRelation>& gp_relations(int n);

struct GPTriple {
  const GPRelation* relation = nullptr;
  Rational term1, term2, term3;
  Rational residual() const { return term1 - term2 + term3; }
};

/// The three exact terms of one relation for a ground set.
GPTriple gp_terms(const GroundSet& ground, const GPRelation& rel);

struct GPReport {
  std::size_t relations = 0;
  Rational max_residual;
  /// First relation with a nonzero residual (empty if none).
  std::string worst;
};

/// Evaluates every three-term relation exactly.
GPReport gp_check(const Network& net);

/// Sign condition of a relation on a sign map: the signed terms t1, -t2, t3
/// are all zero or include both signs.
bool gp_sign_consistent(const Chirotope& chi, const GPRelation& rel);
/// All relations sign consistent.
bool satisfies_gp(const Chirotope& chi);

/// Oracle for is_mutation: flip the basis and re-check every relation.
bool is_mutation_bruteforce(const Chirotope& chi, std::size_t basis);

/// T[lambda]_{ij} = chi(lambda[i -> j]) where mu_j (the j-th element of the
/// complement) replaces lambda_i.
struct RepMatrix {
  std::size_t basis = 0;
  std::vector<int> lambda;
  std::vector<int> mu;
  std::vector<Sign> entries;  // (n+1) x n, row-major

  Sign at(std::size_t i, std::size_t j) const { return entries[i * mu.size() + j]; }
  bool rank_one() const;
};

/// Throws std::invalid_argument if chi is not simplicial.
RepMatrix rep_matrix(const Chirotope& chi, std::size_t basis);
bool is_mutation(const Chirotope& chi, std::size_t basis);

/// Indices of all mutations of chi.
std::vector<std::size_t> mutations_of(const Chirotope& chi);

struct Pin {
  std::size_t basis = 0;
  Sign sign = Sign::Zero;
  std::string reason;
};

/// Bases whose sign is the same for every competitive network with graph g,
/// with that sign. n = 3 only (UnsupportedError otherwise).
std::vector<Pin> pinned_bases(const Digraph& g);

/// A competitive network realizing g: b = 1, W_ji = -1/2 when i -> j and -2
/// otherwise.
Network reference_network(const Digraph& g);

/// Human name of a basis in terms of the network quantities it equals up to
/// sign (n = 3), e.g. "s^{123}_1", "Delta^{12}_3", "W13"; otherwise the
/// element list.
std::string basis_quantity(int n, std::size_t basis);

struct SeparationEntry {
  int i = 0, j = 0, k = 0;  // k is the third node
  bool k_separates_i_from_j = false;
  bool k_separates_j_from_i = false;
  Sign delta_sign = Sign::Zero;  // sign of Delta^{ij}_k

  /// Separation forces the sign (+ for i-from-j, - for j-from-i).
  bool consistent() const;
};

struct SeparationProfile {
  std::vector<SeparationEntry> entries;  // i < j, every k outside {i, j}
  std::size_t violations() const;
};

SeparationProfile separation_profile(const Network& net, const Digraph& g);
inline SeparationProfile separation_profile(const Network& net) { return separation_profile(net, graph_of(net)); }

/// Graph condition for {ijk, jk} -> {} or {ijk} -> {jk}: (j <-> k or neither
/// edge) and (j or k is non-separating). n = 3.
bool bifurcation_allowed(const Digraph& g, int i, int j, int k);

}  // namespace tln
