#include "tln/regime.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tln/mutations.hpp"

namespace tln {

namespace {

constexpr std::int64_t kGrid = 10000;

Chirotope chirotope_from_key(int n, const std::string& key) {
  std::vector<Sign> s(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) s[i] = key[i] == '+' ? Sign::Pos : (key[i] == '-' ? Sign::Neg : Sign::Zero);
  return Chirotope::from_signs(n, std::move(s));
}

std::size_t hamming(const std::string& a, const std::string& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

// Search state: W_ij (i != j) at i*n+j, b_i at n*n+i, numerators over kGrid.
struct Params {
  int n = 0;
  std::vector<std::int64_t> v;

  static Params from(const Network& net) {
    Params p{net.n, std::vector<std::int64_t>(static_cast<std::size_t>(net.n * net.n + net.n))};
    auto round = [](const Rational& q) {
      Rational s = q * kGrid;
      mpz_class r;
      mpz_fdiv_q(r.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
      return static_cast<std::int64_t>(r.get_si());
    };
    for (int i = 0; i < net.n; ++i) {
      for (int j = 0; j < net.n; ++j) p.v[static_cast<std::size_t>(i * net.n + j)] = i == j ? 0 : round(net.w(i, j));
      p.v[static_cast<std::size_t>(net.n * net.n + i)] = round(net.input(i));
    }
    for (std::size_t k = 0; k < p.v.size(); ++k) p.clamp(k);
    return p;
  }

  bool is_input(std::size_t k) const { return k >= static_cast<std::size_t>(n * n); }
  bool is_diagonal(std::size_t k) const { return !is_input(k) && k / static_cast<std::size_t>(n) == k % static_cast<std::size_t>(n); }

  void clamp(std::size_t k) {
    if (is_diagonal(k)) return;
    if (is_input(k))
      v[k] = std::clamp<std::int64_t>(v[k], 1, 2 * kGrid);
    else
      v[k] = std::clamp<std::int64_t>(v[k], -5 * kGrid, -1);
  }

  Network network() const {
    Matrix w(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::vector<Rational> b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        if (i != j) {
          w(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(static_cast<long>(v[static_cast<std::size_t>(i * n + j)]), kGrid);
          w(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).canonicalize();
        }
      b[static_cast<std::size_t>(i)] = Rational(static_cast<long>(v[static_cast<std::size_t>(n * n + i)]), kGrid);
      b[static_cast<std::size_t>(i)].canonicalize();
    }
    return Network(std::move(w), std::move(b));
  }

  // Floating-point det of one basis; only steers the search.
  double approx_det(const std::vector<int>& ids) const {
    const std::size_t k = ids.size();
    std::vector<double> a(k * k, 0.0);
    for (std::size_t r = 0; r < k; ++r) {
      const int id = ids[r];
      if (id == 2 * n) {
        a[r * k + k - 1] = 1.0;
      } else if (id % 2 == 0) {
        a[r * k + static_cast<std::size_t>(id / 2)] = 1.0;
      } else {
        const int i = id / 2;
        for (int j = 0; j < n; ++j) a[r * k + static_cast<std::size_t>(j)] = i == j ? -1.0 : static_cast<double>(v[static_cast<std::size_t>(i * n + j)]) / kGrid;
        a[r * k + k - 1] = static_cast<double>(v[static_cast<std::size_t>(n * n + i)]) / kGrid;
      }
    }
    double det = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < k; ++r)
        if (std::abs(a[r * k + c]) > std::abs(a[piv * k + c])) piv = r;
      if (a[piv * k + c] == 0.0) return 0.0;
      if (piv != c) {
        for (std::size_t j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
        det = -det;
      }
      det *= a[c * k + c];
      for (std::size_t r = c + 1; r < k; ++r) {
        const double f = a[r * k + c] / a[c * k + c];
        for (std::size_t j = c; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
      }
    }
    return det;
  }
};

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

bool RegimeGraph::connected() const {
  if (nodes.empty()) return true;
  UnionFind uf(nodes.size());
  for (const auto& e : edges) uf.unite(e.a, e.b);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (uf.find(i) != 0) return false;
  return true;
}

std::optional<std::size_t> RegimeGraph::find(const SupportFamily& fp) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].fp == fp) return i;
  return std::nullopt;
}

std::vector<std::string> RegimeGraph::labels_at(std::size_t v) const {
  std::vector<std::string> out;
  for (const auto& e : edges)
    if (e.a == v || e.b == v) out.push_back(e.label);
  return out;
}

std::string RegimeGraph::to_dot(const std::string& name) const {
  auto id = [&](std::size_t i) {
    return kind == Kind::Mutation ? "c" + stable_hash(nodes[i].key) : "r" + std::to_string(i);
  };
  std::string out = "graph \"" + dot_escape(name) + "\" {\n";
  out += "  // digraph " + (graph.n() ? graph.to_string() : std::string()) + "\n";
  out += "  node [shape=box];\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) out += "  " + id(i) + " [label=\"" + nodes[i].fp.label() + "\"];\n";
  for (const auto& e : edges) out += "  " + id(e.a) + " -- " + id(e.b) + " [label=\"" + dot_escape(e.label) + "\"];\n";
  for (const auto& u : unknown)
    out += "  // unrealized: " + id(u.node) + " flip " + basis_quantity(n, u.basis) + " -> " + stable_hash(u.key) + "\n";
  return out + "}\n";
}

bool WitnessPool::add(const Network& net) { return add(net, Chirotope::of(net)); }

bool WitnessPool::add(const Network& net, const Chirotope& chi) {
  if (!chi.simplicial()) return false;
  return entries_.emplace(chi.key(), net).second;
}

const Network* WitnessPool::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<Network> realize(const std::string& key, std::size_t flipped, const std::vector<const Network*>& starts, Rng& rng,
                               std::size_t budget) {
  if (starts.empty()) return std::nullopt;
  const int n = starts.front()->n;
  const auto flip_ids = BasisTable::get(n).elements(flipped);

  std::size_t evals = 0;
  auto score = [&](const Params& p, Network* out) {
    ++evals;
    Network net = p.network();
    const Chirotope chi = Chirotope::of(net);
    const std::string k = chi.key();
    double s = static_cast<double>(hamming(k, key));
    if (k[flipped] != key[flipped]) {
      const double d = std::abs(p.approx_det(flip_ids));
      s += d / (1.0 + d);
    }
    if (s == 0.0 && out) *out = std::move(net);
    return s;
  };

  Network found;
  for (std::size_t round = 0; evals < budget; ++round) {
    Params p = Params::from(*starts[round % starts.size()]);
    double cur = score(p, &found);
    if (cur == 0.0) return found;
    std::int64_t step = kGrid / 4;
    std::size_t stale = 0;
    std::uniform_int_distribution<std::size_t> pick(0, p.v.size() - 1);
    while (evals < budget) {
      std::size_t k;
      do k = pick(rng);
      while (p.is_diagonal(k));
      std::int64_t delta = 0;
      while (delta == 0) delta = std::uniform_int_distribution<std::int64_t>(-step, step)(rng);
      Params q = p;
      q.v[k] += delta;
      q.clamp(k);
      if (q.v[k] == p.v[k]) continue;
      const double s = score(q, &found);
      if (s == 0.0) return found;
      if (s < cur) stale = 0;
      else ++stale;
      if (s <= cur) {
        p = std::move(q);
        cur = s;
      }
      if (stale > 0 && stale % 60 == 0) {
        step /= 2;
        if (step < 1) break;
      }
    }
  }
  return std::nullopt;
}

RegimeGraph mutation_graph(const Digraph& g, const ExploreOptions& opt, WitnessPool* pool) {
  if (g.n() != 3) throw UnsupportedError("mutation_graph is implemented for n = 3");
  Rng rng = derived_rng(opt.seed, g.mask());
  WitnessPool local;
  WitnessPool& wp = pool ? *pool : local;
  for (std::size_t s = 0; s < opt.pool; ++s) wp.add(random_with_graph(g, rng));

  // Seed: a simplicial sample.
  std::optional<Network> seed;
  for (int attempt = 0; attempt < 100000 && !seed; ++attempt) {
    Network net = random_with_graph(g, rng);
    if (Chirotope::of(net).simplicial()) seed = std::move(net);
  }
  if (!seed) throw std::runtime_error("no simplicial network found for graph " + g.to_string());

  std::vector<bool> pinned(BasisTable::get(3).size(), false);
  for (const auto& p : pinned_bases(g)) pinned[p.basis] = true;

  RegimeGraph mg;
  mg.kind = RegimeGraph::Kind::Mutation;
  mg.n = 3;
  mg.graph = g;
  std::unordered_map<std::string, std::size_t> index;
  std::unordered_set<std::string> failed;
  std::set<std::pair<std::size_t, std::size_t>> seen_edges;

  auto add_node = [&](const Network& witness, const Chirotope& chi) {
    const std::size_t id = mg.nodes.size();
    mg.nodes.push_back({chi.key(), fp_from_chirotope(chi), witness, {}});
    index.emplace(chi.key(), id);
    wp.add(witness, chi);
    return id;
  };
  add_node(*seed, Chirotope::of(*seed));

  for (std::size_t u = 0; u < mg.nodes.size(); ++u) {
    const Chirotope chi = chirotope_from_key(3, mg.nodes[u].key);
    for (std::size_t basis = 0; basis < chi.basis_count(); ++basis) {
      if (pinned[basis] || !is_mutation(chi, basis)) continue;
      std::string next = mg.nodes[u].key;
      next[basis] = next[basis] == '+' ? '-' : '+';
      std::optional<std::size_t> v;
      if (auto it = index.find(next); it != index.end()) {
        v = it->second;
      } else if (failed.count(next)) {
        mg.unknown.push_back({u, basis, next, Realizable::Unknown});
        continue;
      } else if (mg.nodes.size() < opt.max_nodes) {
        const Network* hit = wp.find(next);
        std::optional<Network> witness;
        if (hit) {
          witness = *hit;
        } else {
          std::vector<std::pair<std::size_t, const Network*>> near;
          for (const auto& [k, net] : wp.entries()) near.emplace_back(hamming(k, next), &net);
          std::partial_sort(near.begin(), near.begin() + std::min<std::size_t>(8, near.size()), near.end(),
                            [](const auto& a, const auto& b) { return a.first < b.first; });
          std::vector<const Network*> starts{&*mg.nodes[u].witness};
          for (std::size_t i = 0; i < std::min<std::size_t>(8, near.size()); ++i) starts.push_back(near[i].second);
          witness = realize(next, basis, starts, rng, opt.budget);
        }
        if (witness) {
          v = add_node(*witness, chirotope_from_key(3, next));
        } else {
          failed.insert(next);
          mg.unknown.push_back({u, basis, next, Realizable::Unknown});
          continue;
        }
      } else {
        continue;
      }
      const auto e = std::minmax(u, *v);
      if (seen_edges.insert(e).second) mg.edges.push_back({e.first, e.second, basis_quantity(3, basis)});
    }
  }
  return mg;
}

RegimeGraph walk_graph(const std::vector<Network>& walk) {
  RegimeGraph mg;
  mg.kind = RegimeGraph::Kind::Mutation;
  if (walk.empty()) return mg;
  mg.n = walk.front().n;
  mg.graph = Digraph(mg.n);
  std::unordered_map<std::string, std::size_t> index;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::optional<std::size_t> prev;
  for (const auto& net : walk) {
    const Chirotope chi = Chirotope::of(net);
    const std::string key = chi.key();
    std::size_t id;
    if (auto it = index.find(key); it != index.end()) {
      id = it->second;
    } else {
      id = mg.nodes.size();
      mg.nodes.push_back({key, fp_from_chirotope(chi), net, {}});
      index.emplace(key, id);
    }
    if (prev && *prev != id) {
      const auto e = std::minmax(*prev, id);
      if (seen.insert(e).second) {
        std::string label;
        const std::string& a = mg.nodes[*prev].key;
        for (std::size_t i = 0; i < key.size(); ++i)
          if (a[i] != key[i]) label += (label.empty() ? "" : "+") + basis_quantity(mg.n, i);
        mg.edges.push_back({e.first, e.second, label});
      }
    }
    prev = id;
  }
  return mg;
}

RegimeGraph bifurcation_graph(const RegimeGraph& mg) {
  UnionFind uf(mg.nodes.size());
  for (const auto& e : mg.edges)
    if (mg.nodes[e.a].fp == mg.nodes[e.b].fp) uf.unite(e.a, e.b);

  RegimeGraph bg;
  bg.kind = RegimeGraph::Kind::Bifurcation;
  bg.n = mg.n;
  bg.graph = mg.graph;
  std::map<std::size_t, std::size_t> comp;  // root -> bifurcation node
  for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
    const std::size_t r = uf.find(i);
    auto [it, fresh] = comp.emplace(r, bg.nodes.size());
    if (fresh) bg.nodes.push_back({"", mg.nodes[i].fp, mg.nodes[i].witness, {}});
    bg.nodes[it->second].members.push_back(i);
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : mg.edges) {
    const std::size_t a = comp[uf.find(e.a)], b = comp[uf.find(e.b)];
    if (a == b) continue;
    const auto key = std::minmax(a, b);
    if (!seen.insert(key).second) continue;
    bg.edges.push_back({key.first, key.second, support_change(bg.nodes[key.first].fp, bg.nodes[key.second].fp)});
  }
  for (const auto& u : mg.unknown) bg.unknown.push_back({comp[uf.find(u.node)], u.basis, u.key, u.status});
  return bg;
}

std::string support_change(const SupportFamily& before, const SupportFamily& after) {
  std::vector<Subset> removed, added;
  for (Subset s : before.supports())
    if (!after.contains(s)) removed.push_back(s);
  for (Subset s : after.supports())
    if (!before.contains(s)) added.push_back(s);
  const int n = std::max(before.n(), after.n());
  return SupportFamily(n, removed).label() + "->" + SupportFamily(n, added).label();
}

std::string change_form(const SupportFamily& before, const SupportFamily& after) {
  std::vector<Subset> removed, added;
  for (Subset s : before.supports())
    if (!after.contains(s)) removed.push_back(s);
  for (Subset s : after.supports())
    if (!before.contains(s)) added.push_back(s);
  // Differ in exactly one neuron, so one contains the other.
  auto one_apart = [](Subset a, Subset b) {
    const Subset x = a ^ b;
    return x != 0 && (x & (x - 1)) == 0;
  };
  if (removed.size() == 2 && added.empty() && one_apart(removed[0], removed[1])) return "fold";
  if (added.size() == 2 && removed.empty() && one_apart(added[0], added[1])) return "fold";
  if (removed.size() == 1 && added.size() == 1 && one_apart(removed[0], added[0])) return "persistent";
  return "other";
}

std::string stable_hash(const std::string& key) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tln
