#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tln/exact.hpp"

namespace tln {

/// Bitmask over neurons; bit i is neuron i (0-based). Printed 1-based.
using Subset = std::uint32_t;

constexpr bool contains(Subset s, int i) { return (s >> i) & 1U; }
constexpr Subset with(Subset s, int i) { return s | (Subset{1} << i); }
constexpr Subset without(Subset s, int i) { return s & ~(Subset{1} << i); }
constexpr Subset full_subset(int n) { return n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1; }
int subset_size(Subset s);
std::vector<int> members(Subset s);

/// "123" for n <= 9, "1.10.11" style otherwise; "{}" for the empty set.
std::string subset_name(Subset s, int n);
Subset parse_subset(std::string_view text, int n);

/// Size first, then lexicographic on the sorted member lists.
bool support_less(Subset a, Subset b);

/// A threshold-linear network dx/dt = -x + [W x + b]_+ with exact parameters.
struct Network {
  int n = 0;
  Matrix W;
  std::vector<Rational> b;

  Network() = default;
  Network(Matrix w, std::vector<Rational> inputs);

  const Rational& w(int i, int j) const { return W(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
  Rational& w(int i, int j) { return W(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
  const Rational& input(int i) const { return b[static_cast<std::size_t>(i)]; }
  Rational& input(int i) { return b[static_cast<std::size_t>(i)]; }

  friend bool operator==(const Network&, const Network&) = default;
};

enum class NetworkClass { Competitive, General };

struct Violation {
  enum class Kind { NonzeroDiagonal, NonNegativeWeight, NonPositiveInput };
  Kind kind;
  int i = 0;
  int j = 0;  // unused for inputs
  std::string message;
};

/// Lists every violated class constraint; an empty list means ok.
std::vector<Violation> validate(const Network& net, NetworkClass cls);

/// s^{ij}_j = b_i W_ji + b_j. Positive iff i -> j in the graph of the network.
Rational s_pair(const Network& net, int i, int j);

/// Delta^{ij}_k = b_j W_ik - b_i W_jk.
Rational delta(const Network& net, int i, int j, int k);

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);

  int n() const { return n_; }
  bool has(int from, int to) const { return adj_[index(from, to)] != 0; }
  void set(int from, int to, bool on = true);

  bool bidirected(int a, int b) const { return has(a, b) && has(b, a); }
  bool disconnected(int a, int b) const { return !has(a, b) && !has(b, a); }
  bool is_sink(int v) const;

  /// Edges in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;

  /// Bit (from * n + to) set for each edge; n <= 8.
  std::uint64_t mask() const;
  static Digraph from_mask(int n, std::uint64_t mask);

  /// Relabels node v to perm[v].
  Digraph permuted(std::span<const int> perm) const;

  /// Edge list "1>2,2>1,3>2" (1-based).
  std::string to_string() const;
  static Digraph parse(std::string_view text, int n);

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::size_t index(int from, int to) const;
  int n_ = 0;
  std::vector<std::uint8_t> adj_;
};

/// Graph of the network: i -> j iff s^{ij}_j > 0. Throws DegenerateError when
/// some s^{ij}_j is exactly zero.
Digraph graph_of(const Network& net);

/// Node m separates a from b when m -> a but not m -> b.
bool separates(const Digraph& g, int m, int a, int b);
/// m separates no ordered pair of the other nodes.
bool non_separating(const Digraph& g, int m);

/// A single adjustable entry: W_ij or b_i (0-based internally).
struct Parameter {
  enum class Kind { Weight, Input };
  Kind kind = Kind::Weight;
  int i = 0;
  int j = 0;

  Rational get(const Network& net) const;
  void set(Network& net, const Rational& value) const;
  /// "W31", "b2", "W1,10" (1-based).
  std::string name() const;
  static Parameter parse(std::string_view text, int n);
};

struct ParamPath {
  Network base;
  Parameter target;
  Rational from;
  Rational to;
  int steps = 1000;

  /// Throws std::invalid_argument when from == to, steps < 1, or an
  /// endpoint leaves the competitive class for the parameter's kind.
  void check() const;
  Network at(const Rational& value) const;
};

/// Network file: {"n": 3, "W": [["0","-0.97",...],...], "b": ["0.49",...]}.
Network parse_network_json(std::string_view json_text);
Network read_network(const std::string& path);
std::string network_to_json(const Network& net);

}  // namespace tln
