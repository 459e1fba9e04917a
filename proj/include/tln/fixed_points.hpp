#pragma once

#include <string>
#include <vector>

#include "tln/chirotope.hpp"
#include "tln/network.hpp"

namespace tln {

/// FP(W,b): supports of admissible fixed points, sorted by size and then
/// lexicographically.
class SupportFamily {
 public:
  SupportFamily() = default;
  SupportFamily(int n, std::vector<Subset> supports);

  int n() const { return n_; }
  const std::vector<Subset>& supports() const { return supports_; }
  bool contains(Subset s) const;
  bool empty() const { return supports_.empty(); }
  std::size_t size() const { return supports_.size(); }

  /// "{12,23,123}".
  std::string label() const;
  /// One support per line.
  std::string lines() const;

  friend bool operator==(const SupportFamily&, const SupportFamily&) = default;
  friend bool operator<(const SupportFamily& a, const SupportFamily& b) { return a.label() < b.label(); }

 private:
  int n_ = 0;
  std::vector<Subset> supports_;
};

SupportFamily parse_support_family(std::string_view label, int n);

/// sigma is a support iff s^sigma_i * s^sigma_j < 0 for every i in sigma and
/// j outside it (for sigma = [n]: all s^sigma_i share one sign). Throws
/// DegenerateError naming the subset when a needed sign is zero.
SupportFamily fp_from_chirotope(const Chirotope& chi);
SupportFamily fp_chirotope(const Network& net);

/// Independent route: solve every restricted linear system exactly and test
/// the point against its own region.
SupportFamily fp_oracle(const Network& net);

struct FixedPoint {
  enum class Status { Admissible, Virtual };
  Subset sigma = 0;
  std::vector<Rational> coords;
  Status status = Status::Virtual;
  /// Violated region conditions, e.g. "x_2 = -1/3 <= 0" or "l*_2 = 233/5000 >= 0".
  std::vector<std::string> failures;
};

/// Exact x^sigma with its admissibility. Throws DegenerateError if the
/// restricted system is singular.
FixedPoint fixed_point_detail(const Network& net, Subset sigma);

/// Nodes with no outgoing edge in graph_of(net).
Subset singleton_rule(const Network& net);

/// l*_j(x) = sum_{k != j} W_jk x_k + b_j.
Rational l_star(const Network& net, int j, const std::vector<Rational>& x);

}  // namespace tln
