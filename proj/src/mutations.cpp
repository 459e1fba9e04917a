#include "tln/mutations.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace tln {

namespace {

// All k-subsets of {0..m-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  if (k > m) return out;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::vector<GPRelation> build_relations(int n) {
  const BasisTable& table = BasisTable::get(n);
  const int ground = 2 * n + 1;
  std::vector<GPRelation> out;
  for (const auto& sigma : combinations(ground, n - 1)) {
    std::vector<int> rest;
    for (int e = 0; e < ground; ++e)
      if (std::find(sigma.begin(), sigma.end(), e) == sigma.end()) rest.push_back(e);
    for (const auto& pick : combinations(static_cast<int>(rest.size()), 4)) {
      GPRelation rel;
      rel.sigma = sigma;
      for (int t = 0; t < 4; ++t) rel.tau[static_cast<std::size_t>(t)] = rest[static_cast<std::size_t>(pick[static_cast<std::size_t>(t)])];
      static constexpr int kPairs[6][2] = {{0, 1}, {2, 3}, {0, 2}, {1, 3}, {0, 3}, {1, 2}};
      for (std::size_t p = 0; p < 6; ++p) {
        std::vector<int> ids = sigma;
        ids.push_back(rel.tau[static_cast<std::size_t>(kPairs[p][0])]);
        ids.push_back(rel.tau[static_cast<std::size_t>(kPairs[p][1])]);
        rel.parity[p] = sort_with_parity(ids);
        rel.basis[p] = table.rank(ids);
      }
      out.push_back(std::move(rel));
    }
  }
  return out;
}

std::vector<Rational> base_determinants(const GroundSet& ground) {
  const BasisTable& table = BasisTable::get(ground.n());
  std::vector<Rational> out(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) out[i] = ground.det(table.elements(i));
  return out;
}

bool signs_consistent(Sign a, Sign b, Sign c) {
  const bool pos = a == Sign::Pos || b == Sign::Pos || c == Sign::Pos;
  const bool neg = a == Sign::Neg || b == Sign::Neg || c == Sign::Neg;
  const bool all_zero = a == Sign::Zero && b == Sign::Zero && c == Sign::Zero;
  return all_zero || (pos && neg);
}

std::string sub_name(std::initializer_list<int> members) {
  std::string s;
  for (int m : members) s += std::to_string(m + 1);
  return s;
}

// Per-neuron content of a basis for n = 3: bit 0 = e_i, bit 1 = h_i.
struct Shape {
  std::array<int, 3> status{};
  bool inf = false;
};

Shape shape_of(const std::vector<int>& elems) {
  Shape s;
  for (int id : elems) {
    if (id == inf_elem(3)) {
      s.inf = true;
      continue;
    }
    s.status[static_cast<std::size_t>(neuron_of(id))] |= is_h(id, 3) ? 2 : 1;
  }
  return s;
}

}  // namespace

std::string GPRelation::to_string(int n) const {
  std::string out = "sigma={";
  for (std::size_t i = 0; i < sigma.size(); ++i) out += (i ? "," : "") + element_name(sigma[i], n);
  out += "} tau={";
  for (std::size_t i = 0; i < 4; ++i) out += (i ? "," : "") + element_name(tau[i], n);
  return out + "}";
}

const std::vector<GPRelation>& gp_relations(int n) {
  if (n < 2) throw DimensionError("three-term relations need n >= 2");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<std::vector<GPRelation>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<std::vector<GPRelation>>(build_relations(n));
  return *slot;
}

GPTriple gp_terms(const GroundSet& ground, const GPRelation& rel) {
  auto d = [&](int a, int b) {
    std::vector<int> ids = rel.sigma;
    ids.push_back(rel.tau[static_cast<std::size_t>(a)]);
    ids.push_back(rel.tau[static_cast<std::size_t>(b)]);
    return ground.det(ids);
  };
  return {&rel, d(0, 1) * d(2, 3), d(0, 2) * d(1, 3), d(0, 3) * d(1, 2)};
}

GPReport gp_check(const Network& net) {
  const GroundSet ground(net);
  const auto dets = base_determinants(ground);
  GPReport report;
  for (const auto& rel : gp_relations(net.n)) {
    Rational v[6];
    for (std::size_t p = 0; p < 6; ++p) v[p] = to_int(rel.parity[p]) * dets[rel.basis[p]];
    const Rational r = abs(Rational(v[0] * v[1] - v[2] * v[3] + v[4] * v[5]));
    if (r > report.max_residual) {
      report.max_residual = r;
      report.worst = rel.to_string(net.n);
    }
    ++report.relations;
  }
  return report;
}

bool gp_sign_consistent(const Chirotope& chi, const GPRelation& rel) {
  Sign v[6];
  for (std::size_t p = 0; p < 6; ++p) v[p] = rel.parity[p] * chi.base(rel.basis[p]);
  return signs_consistent(v[0] * v[1], -(v[2] * v[3]), v[4] * v[5]);
}

bool satisfies_gp(const Chirotope& chi) {
  for (const auto& rel : gp_relations(chi.n()))
    if (!gp_sign_consistent(chi, rel)) return false;
  return true;
}

bool is_mutation_bruteforce(const Chirotope& chi, std::size_t basis) {
  if (!chi.simplicial()) throw std::invalid_argument("mutations are defined for simplicial chirotopes");
  return satisfies_gp(chi.flipped(basis));
}

bool RepMatrix::rank_one() const {
  const std::size_t rows = lambda.size(), cols = mu.size();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (at(i, j) * at(0, 0) * at(i, 0) * at(0, j) != Sign::Pos) return false;
  return true;
}

RepMatrix rep_matrix(const Chirotope& chi, std::size_t basis) {
  if (!chi.simplicial()) throw std::invalid_argument("representative matrix needs a simplicial chirotope");
  RepMatrix t;
  t.basis = basis;
  t.lambda = chi.bases().elements(basis);
  const int ground = 2 * chi.n() + 1;
  for (int e = 0; e < ground; ++e)
    if (std::find(t.lambda.begin(), t.lambda.end(), e) == t.lambda.end()) t.mu.push_back(e);
  t.entries.reserve(t.lambda.size() * t.mu.size());
  for (std::size_t i = 0; i < t.lambda.size(); ++i)
    for (int m : t.mu) {
      std::vector<int> swapped = t.lambda;
      swapped[i] = m;
      t.entries.push_back(chi(swapped));
    }
  return t;
}

bool is_mutation(const Chirotope& chi, std::size_t basis) { return rep_matrix(chi, basis).rank_one(); }

std::vector<std::size_t> mutations_of(const Chirotope& chi) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < chi.basis_count(); ++i)
    if (is_mutation(chi, i)) out.push_back(i);
  return out;
}

Network reference_network(const Digraph& g) {
  const int n = g.n();
  Network net(Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n)), std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (i != j) net.W(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = g.has(i, j) ? Rational(-1, 2) : Rational(-2);
  }
  return net;
}

std::string basis_quantity(int n, std::size_t basis) {
  const auto elems = BasisTable::get(n).elements(basis);
  if (n == 3) {
    const Shape s = shape_of(elems);
    std::vector<int> both, hs, es, none;
    for (int i = 0; i < 3; ++i) {
      switch (s.status[static_cast<std::size_t>(i)]) {
        case 3: both.push_back(i); break;
        case 2: hs.push_back(i); break;
        case 1: es.push_back(i); break;
        default: none.push_back(i);
      }
    }
    if (s.inf) {
      if (both.empty()) {
        std::string sig;
        for (int h : hs) sig += std::to_string(h + 1);
        return "s^{" + sig + "}_inf";
      }
      if (es.size() == 1) return "W" + sub_name({both[0], none[0]});
    } else {
      if (both.size() == 2) return "Delta^{" + sub_name({both[0], both[1]}) + "}_" + std::to_string(none[0] + 1);
      if (es.size() == 2) return "s^{" + sub_name({both[0]}) + "}_" + std::to_string(both[0] + 1);
      if (hs.size() == 2) return "s^{123}_" + std::to_string(both[0] + 1);
      if (hs.size() == 1) return "s^{" + sub_name({std::min(hs[0], both[0]), std::max(hs[0], both[0])}) + "}_" + std::to_string(both[0] + 1);
    }
  }
  return BasisTable::get(n).name(basis);
}

std::vector<Pin> pinned_bases(const Digraph& g) {
  if (g.n() != 3) throw UnsupportedError("pinned_bases is tabulated for n = 3 only");
  const Chirotope ref = Chirotope::of(reference_network(g));
  const BasisTable& table = ref.bases();
  std::vector<Pin> out;
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const Shape s = shape_of(table.elements(idx));
    std::vector<int> both, hs, es, none;
    for (int i = 0; i < 3; ++i) {
      switch (s.status[static_cast<std::size_t>(i)]) {
        case 3: both.push_back(i); break;
        case 2: hs.push_back(i); break;
        case 1: es.push_back(i); break;
        default: none.push_back(i);
      }
    }
    std::string reason;
    if (s.inf) {
      if (both.empty() && hs.size() <= 1) {
        reason = "constant";
      } else if (both.size() == 1 && es.size() == 1) {
        reason = "W" + sub_name({both[0], none[0]}) + " < 0";
      } else if (both.empty() && hs.size() == 2) {
        const int i = hs[0], j = hs[1];
        if (g.bidirected(i, j)) reason = std::to_string(i + 1) + "<->" + std::to_string(j + 1);
        if (g.disconnected(i, j)) reason = "no edge between " + std::to_string(i + 1) + " and " + std::to_string(j + 1);
      }
    } else {
      if (both.size() == 1 && es.size() == 2) {
        reason = "b" + std::to_string(both[0] + 1) + " > 0";
      } else if (both.size() == 1 && hs.size() == 1) {
        reason = "edge " + std::to_string(hs[0] + 1) + "->" + std::to_string(both[0] + 1);
      } else if (both.size() == 2) {
        const int i = both[0], j = both[1], k = none[0];
        if (separates(g, k, i, j) || separates(g, k, j, i))
          reason = std::to_string(k + 1) + " separates " + std::to_string(i + 1) + " and " + std::to_string(j + 1);
      }
    }
    if (!reason.empty()) out.push_back({idx, ref.base(idx), reason});
  }
  return out;
}

bool SeparationEntry::consistent() const {
  if (k_separates_i_from_j && delta_sign != Sign::Pos) return false;
  if (k_separates_j_from_i && delta_sign != Sign::Neg) return false;
  return true;
}

std::size_t SeparationProfile::violations() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.consistent(); }));
}

SeparationProfile separation_profile(const Network& net, const Digraph& g) {
  SeparationProfile p;
  for (int i = 0; i < net.n; ++i)
    for (int j = i + 1; j < net.n; ++j)
      for (int k = 0; k < net.n; ++k) {
        if (k == i || k == j) continue;
        p.entries.push_back({i, j, k, separates(g, k, i, j), separates(g, k, j, i), sign_of(delta(net, i, j, k))});
      }
  return p;
}

bool bifurcation_allowed(const Digraph& g, int i, int j, int k) {
  if (g.n() != 3) throw UnsupportedError("bifurcation_allowed is stated for n = 3");
  if (i == j || j == k || i == k || i < 0 || j < 0 || k < 0 || i > 2 || j > 2 || k > 2)
    throw IndexError("bifurcation_allowed needs three distinct nodes");
  const bool pair_ok = g.bidirected(j, k) || g.disconnected(j, k);
  return pair_ok && (non_separating(g, j) || non_separating(g, k));
}

}  // namespace tln
