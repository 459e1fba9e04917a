#pragma once

// Generators and independent oracles shared by the test binaries. Nothing
// here calls into the determinant or fixed-point code of the library: the
// oracles use cofactor expansion and Cramer's rule on plain row vectors.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tln/network.hpp"

namespace testsupport {

using tln::Network;
using tln::Rational;
using tln::Subset;
using Rows = std::vector<std::vector<Rational>>;

#ifndef TLN_FIXTURES
#define TLN_FIXTURES "tests/fixtures"
#endif

// Canonical rational literal; mpq_class(n, d) alone keeps common factors.
inline Rational Q(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline std::string fixture(const std::string& name) { return std::string(TLN_FIXTURES) + "/" + name; }

// Hand-rolled generator. Denominators vary so that both the machine-integer
// and the big-integer determinant paths get exercised.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  long denominator() {
    static const long dens[] = {1, 7, 10, 100, 997, 1000, 65521, 1000003};
    return dens[uniform(0, 7)];
  }

  // Competitive: W_ij in (-3, 0) off the diagonal, b in (0, 1].
  Network competitive(int n) {
    const long den = denominator();
    tln::Matrix W(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::vector<Rational> b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        if (i != j) W(i, j) = Rational(-uniform(1, 3 * den - 1), den);
      b[i] = Rational(uniform(1, den), den);
      b[i].canonicalize();
    }
    for (std::size_t i = 0; i < W.rows(); ++i)
      for (std::size_t j = 0; j < W.cols(); ++j) W(i, j).canonicalize();
    return Network(W, b);
  }

  // Arbitrary small integer matrix.
  Rows integer_rows(int k, long bound) {
    Rows m(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(k)));
    for (auto& row : m)
      for (auto& v : row) v = uniform(-bound, bound);
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Laplace expansion along the first row.
inline Rational cofactor_det(const Rows& m) {
  const std::size_t k = m.size();
  if (k == 0) return 1;
  if (k == 1) return m[0][0];
  Rational total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (m[0][c] == 0) continue;
    Rows minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<Rational> row;
      for (std::size_t cc = 0; cc < k; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    const Rational term = m[0][c] * cofactor_det(minor);
    total += (c % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

// Homogenized arrangement vectors: e_i = unit i, h_i = (row i of W with -1 on
// the diagonal, b_i), e_inf = last unit vector. Ids e_i = 2i, h_i = 2i+1,
// e_inf = 2n.
inline Rows ground_rows(const Network& net) {
  const int n = net.n;
  Rows out;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> e(static_cast<std::size_t>(n + 1), 0), h(static_cast<std::size_t>(n + 1), 0);
    e[i] = 1;
    for (int j = 0; j < n; ++j) h[j] = i == j ? Rational(-1) : net.w(i, j);
    h[n] = net.input(i);
    out.push_back(e);
    out.push_back(h);
  }
  std::vector<Rational> inf(static_cast<std::size_t>(n + 1), 0);
  inf[n] = 1;
  out.push_back(inf);
  return out;
}

inline Rational oracle_det(const Network& net, const std::vector<int>& ids) {
  const Rows g = ground_rows(net);
  Rows m;
  for (int id : ids) m.push_back(g[static_cast<std::size_t>(id)]);
  return cofactor_det(m);
}

inline int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Cramer's rule; nullopt when singular.
inline std::optional<std::vector<Rational>> cramer(const Rows& a, const std::vector<Rational>& rhs) {
  const Rational d = cofactor_det(a);
  if (d == 0) return std::nullopt;
  std::vector<Rational> x(rhs.size());
  for (std::size_t c = 0; c < rhs.size(); ++c) {
    Rows ac = a;
    for (std::size_t r = 0; r < rhs.size(); ++r) ac[r][c] = rhs[r];
    x[c] = cofactor_det(ac) / d;
  }
  return x;
}

// Equilibrium of the linear region with support sigma, as a full vector.
inline std::optional<std::vector<Rational>> region_equilibrium(const Network& net, Subset sigma) {
  std::vector<int> idx;
  for (int i = 0; i < net.n; ++i)
    if ((sigma >> i) & 1U) idx.push_back(i);
  Rows a;
  std::vector<Rational> rhs;
  for (int r : idx) {
    std::vector<Rational> row;
    for (int c : idx) row.push_back((r == c ? Rational(1) : Rational(0)) - net.w(r, c));
    a.push_back(row);
    rhs.push_back(net.input(r));
  }
  auto xs = cramer(a, rhs);
  if (!xs) return std::nullopt;
  std::vector<Rational> x(static_cast<std::size_t>(net.n), 0);
  for (std::size_t t = 0; t < idx.size(); ++t) x[idx[t]] = (*xs)[t];
  return x;
}

// FP(W,b) as a set of masks; nullopt when some equilibrium is singular or
// sits on a region wall.
inline std::optional<std::set<Subset>> oracle_fp(const Network& net) {
  std::set<Subset> out;
  for (Subset sigma = 1; sigma < (Subset{1} << net.n); ++sigma) {
    auto x = region_equilibrium(net, sigma);
    if (!x) return std::nullopt;
    bool ok = true;
    for (int i = 0; i < net.n; ++i) {
      Rational drive = net.input(i);
      for (int j = 0; j < net.n; ++j) drive += net.w(i, j) * (*x)[j];
      const bool in = (sigma >> i) & 1U;
      const Rational v = in ? (*x)[i] : drive;
      if (v == 0) return std::nullopt;
      if (in ? v < 0 : v > 0) ok = false;
    }
    if (ok) out.insert(sigma);
  }
  return out;
}

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace testsupport
