#include "tln/sampling.hpp"

#include <stdexcept>

namespace tln {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Network blank(int n) {
  return Network(Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n)), std::vector<Rational>(static_cast<std::size_t>(n)));
}

}  // namespace

Network random_competitive(int n, Rng& rng, const SampleBox& box) {
  Network net = blank(n);
  for (int i = 0; i < n; ++i) {
    net.b[static_cast<std::size_t>(i)] = Rational(uniform(rng, box.b_min, box.b_max), box.den);
    for (int j = 0; j < n; ++j)
      if (i != j) net.W(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(uniform(rng, box.w_min, box.w_max), box.den);
  }
  for (auto& v : net.b) v.canonicalize();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) net.W(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).canonicalize();
  return net;
}

std::optional<Network> try_random_with_graph(const Digraph& g, Rng& rng, const SampleBox& box) {
  const int n = g.n();
  std::vector<std::int64_t> b(static_cast<std::size_t>(n));
  for (auto& v : b) v = uniform(rng, box.b_min, box.b_max);
  Network net = blank(n);
  for (int i = 0; i < n; ++i) net.b[static_cast<std::size_t>(i)] = Rational(b[static_cast<std::size_t>(i)], box.den);
  for (auto& v : net.b) v.canonicalize();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // i -> j iff b_i W_ji + b_j > 0, i.e. w * b_i > -den * b_j for W_ji = w / den.
      const std::int64_t t = -static_cast<std::int64_t>(box.den) * b[static_cast<std::size_t>(j)];
      const std::int64_t bi = b[static_cast<std::size_t>(i)];
      std::int64_t lo = box.w_min, hi = box.w_max;
      if (g.has(i, j))
        lo = std::max<std::int64_t>(lo, floor_div(t, bi) + 1);
      else
        hi = std::min<std::int64_t>(hi, ceil_div(t, bi) - 1);
      if (lo > hi) return std::nullopt;
      Rational w(static_cast<long>(std::uniform_int_distribution<std::int64_t>(lo, hi)(rng)), box.den);
      w.canonicalize();
      net.W(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = w;
    }
  return net;
}

Network random_with_graph(const Digraph& g, Rng& rng, const SampleBox& box, int attempts) {
  for (int a = 0; a < attempts; ++a)
    if (auto net = try_random_with_graph(g, rng, box)) return *net;
  throw std::runtime_error("could not sample a network with graph " + g.to_string());
}

Rng derived_rng(std::uint64_t seed, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(task),
                    static_cast<std::uint32_t>(task >> 32), 0x746c6eU};
  return Rng(seq);
}

}  // namespace tln
