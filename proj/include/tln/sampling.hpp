#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "tln/network.hpp"

namespace tln {

using Rng = std::mt19937_64;

/// Entries on a grid of 1/1000: W_ij in (-3, 0), b_i in (0, 1).
struct SampleBox {
  int den = 1000;
  int w_min = -2999;  // numerator range for off-diagonal weights
  int w_max = -1;
  int b_min = 1;
  int b_max = 999;
};

Network random_competitive(int n, Rng& rng, const SampleBox& box = {});

/// Draws b, then each W_ji uniformly among the grid values that give the
/// required edge status for i -> j. Returns nullopt when the drawn b leaves
/// some entry without admissible values (caller redraws).
std::optional<Network> try_random_with_graph(const Digraph& g, Rng& rng, const SampleBox& box = {});
/// Redraws until a network is produced. Throws std::runtime_error after
/// `attempts` failures.
Network random_with_graph(const Digraph& g, Rng& rng, const SampleBox& box = {}, int attempts = 10000);

/// Deterministic per-task stream derived from a user seed and a task id.
Rng derived_rng(std::uint64_t seed, std::uint64_t task);

}  // namespace tln
