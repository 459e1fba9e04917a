#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "tln/exact.hpp"
#include "tln/network.hpp"

namespace tln {

// Ground elements of the homogenized arrangement, in the fixed order
// (e_1, h_1, ..., e_n, h_n, e_inf): e_i = 2i, h_i = 2i + 1, e_inf = 2n.
constexpr int e_elem(int i) { return 2 * i; }
constexpr int h_elem(int i) { return 2 * i + 1; }
constexpr int inf_elem(int n) { return 2 * n; }
constexpr bool is_h(int id, int n) { return id < 2 * n && (id & 1); }
constexpr int neuron_of(int id) { return id / 2; }

/// "e1", "h3", "e_inf".
std::string element_name(int id, int n);
int parse_element(std::string_view text, int n);

/// Index used for s^sigma_inf.
inline constexpr int kInfinity = -1;

/// The (2n+1) x (n+1) matrix of normal vectors of the homogenized arrangement.
class GroundSet {
 public:
  explicit GroundSet(const Network& net);

  int n() const { return n_; }
  std::size_t size() const { return rows_.rows(); }
  std::span<const Rational> vec(int id) const { return rows_.row(static_cast<std::size_t>(id)); }
  const Matrix& matrix() const { return rows_; }

  /// det of the rows listed in order; repeated ids give 0.
  Rational det(std::span<const int> ids) const;
  /// Sign of det(ids). Uses the rows scaled by positive integers when those
  /// fit machine arithmetic; always exact.
  Sign sign(std::span<const int> ids) const;

 private:
  int n_;
  Matrix rows_;
  std::vector<std::int64_t> scaled_;  // empty when entries are too large
};

GroundSet arrangement_matrix(const Network& net);

/// (n+1)-subsets of the ground set as bitmasks, in lexicographic order of
/// their sorted element lists. Shared per n.
class BasisTable {
 public:
  static const BasisTable& get(int n);

  int n() const { return n_; }
  std::size_t size() const { return masks_.size(); }
  std::uint64_t mask(std::size_t idx) const { return masks_[idx]; }
  std::vector<int> elements(std::size_t idx) const;
  /// Rank of a sorted, duplicate-free (n+1)-tuple.
  std::size_t rank(std::span<const int> sorted) const;
  std::size_t rank_mask(std::uint64_t mask) const;
  std::string name(std::size_t idx) const;

 private:
  explicit BasisTable(int n);
  int n_;
  std::size_t ground_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<std::size_t>> binom_;
};

/// Sorts `ids` in place and returns the sign of the sorting permutation, or
/// Sign::Zero if an id repeats.
Sign sort_with_parity(std::vector<int>& ids);

/// Alternating sign map on (n+1)-tuples of ground elements, stored as one
/// sign per basis in canonical ascending order.
class Chirotope {
 public:
  /// Signs of all bases. Eager for n <= 5, memoized per basis above that.
  static Chirotope of(const Network& net);
  static Chirotope from_signs(int n, std::vector<Sign> base_signs);

  int n() const { return n_; }
  std::size_t basis_count() const { return table_->size(); }
  const BasisTable& bases() const { return *table_; }

  Sign base(std::size_t idx) const;
  /// Value on an ordered tuple (alternating extension).
  Sign operator()(std::span<const int> ordered) const;

  bool simplicial() const;
  Chirotope flipped(std::size_t idx) const;

  /// Forces every basis and returns the canonical sign list.
  std::vector<Sign> signs() const;
  /// One char per basis ('+', '-', '0'), canonical order.
  std::string key() const;

  friend bool operator==(const Chirotope& a, const Chirotope& b) { return a.key() == b.key(); }

 private:
  struct Lazy {
    explicit Lazy(GroundSet g) : ground(std::move(g)) {}
    GroundSet ground;
    std::mutex mu;
  };
  Chirotope(int n, std::vector<std::int8_t> signs, std::shared_ptr<Lazy> lazy);

  int n_ = 0;
  const BasisTable* table_ = nullptr;
  // 2 marks a basis not yet evaluated (lazy mode only).
  mutable std::vector<std::int8_t> signs_;
  std::shared_ptr<Lazy> lazy_;
};

inline Chirotope chirotope_of(const Network& net) { return Chirotope::of(net); }
inline bool is_simplicial(const Chirotope& chi) { return chi.simplicial(); }

/// Ordered tuple a^sigma: h_i for i in sigma, e_i otherwise, by ascending i.
std::vector<int> a_sigma(Subset sigma, int n);

/// The ground element appended to a^sigma for s^sigma_i: e_i if
/// i in sigma or i = kInfinity (e_inf), h_i otherwise.
int s_element(Subset sigma, int i, int n);

struct SDeterminant {
  Subset sigma = 0;
  int index = 0;  // neuron (0-based) or kInfinity
  Rational value;
};

SDeterminant s_determinant(const Network& net, Subset sigma, int i);
SDeterminant s_determinant(const GroundSet& ground, Subset sigma, int i);
/// Sign of s^sigma_i read off a chirotope.
Sign s_sign(const Chirotope& chi, Subset sigma, int i);

/// Sign vector of the vertex x^sigma against (E_1, H_1, ..., E_n, H_n).
struct Cocircuit {
  Subset sigma = 0;
  std::vector<Sign> signs;

  Sign at_E(int i) const { return signs[static_cast<std::size_t>(2 * i)]; }
  Sign at_H(int i) const { return signs[static_cast<std::size_t>(2 * i + 1)]; }
  std::string to_string() const;
};

/// Throws DegenerateError if (a^sigma, e_inf) is not a basis.
Cocircuit cocircuit(const Chirotope& chi, Subset sigma);

/// Signed positions of the hyperplanes H_i along the coordinate axes.
struct AxisReport {
  struct Entry {
    std::string description;
    std::string quantity;
    Rational value;
    Sign sign;
  };
  std::vector<Entry> entries;
  std::string to_string() const;
};

AxisReport axis_signs(const Network& net);

}  // namespace tln
