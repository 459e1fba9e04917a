#include "tln/fixed_points.hpp"

#include <algorithm>
#include <sstream>

namespace tln {

SupportFamily::SupportFamily(int n, std::vector<Subset> supports) : n_(n), supports_(std::move(supports)) {
  std::sort(supports_.begin(), supports_.end(), support_less);
  supports_.erase(std::unique(supports_.begin(), supports_.end()), supports_.end());
}

bool SupportFamily::contains(Subset s) const { return std::find(supports_.begin(), supports_.end(), s) != supports_.end(); }

std::string SupportFamily::label() const {
  std::string out = "{";
  for (std::size_t i = 0; i < supports_.size(); ++i) {
    if (i) out += ',';
    out += subset_name(supports_[i], n_);
  }
  return out + "}";
}

std::string SupportFamily::lines() const {
  std::string out;
  for (Subset s : supports_) out += subset_name(s, n_) + "\n";
  return out;
}

SupportFamily parse_support_family(std::string_view label, int n) {
  std::string s(label);
  if (!s.empty() && s.front() == '{') s.erase(0, 1);
  if (!s.empty() && s.back() == '}') s.pop_back();
  std::vector<Subset> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_subset(item, n));
  return SupportFamily(n, std::move(out));
}

namespace {

void require_competitive(const Network& net, const char* what) {
  const auto v = validate(net, NetworkClass::Competitive);
  if (!v.empty()) throw std::invalid_argument(std::string(what) + ": network is not competitive (" + v.front().message + ")");
}

std::string s_name(Subset sigma, int i, int n) {
  return "s^{" + subset_name(sigma, n) + "}_" + (i == kInfinity ? std::string("inf") : std::to_string(i + 1));
}

}  // namespace

SupportFamily fp_from_chirotope(const Chirotope& chi) {
  const int n = chi.n();
  std::vector<Subset> out;
  for (Subset sigma = 1; sigma <= full_subset(n); ++sigma) {
    Sign inside = Sign::Zero;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const Sign s = s_sign(chi, sigma, i);
      if (s == Sign::Zero) throw DegenerateError(s_name(sigma, i, n) + " = 0 (subset " + subset_name(sigma, n) + ")");
      const Sign expected = contains(sigma, i) ? s : -s;
      if (inside == Sign::Zero) inside = expected;
      if (expected != inside) ok = false;
    }
    if (ok) out.push_back(sigma);
  }
  return SupportFamily(n, std::move(out));
}

SupportFamily fp_chirotope(const Network& net) {
  require_competitive(net, "fp_chirotope");
  return fp_from_chirotope(Chirotope::of(net));
}

Rational l_star(const Network& net, int j, const std::vector<Rational>& x) {
  Rational v = net.input(j);
  for (int k = 0; k < net.n; ++k)
    if (k != j) v += net.w(j, k) * x[static_cast<std::size_t>(k)];
  return v;
}

FixedPoint fixed_point_detail(const Network& net, Subset sigma) {
  const int n = net.n;
  const auto idx = members(sigma);
  const std::size_t k = idx.size();
  FixedPoint fp{sigma, std::vector<Rational>(static_cast<std::size_t>(n)), FixedPoint::Status::Virtual, {}};

  if (k > 0) {
    // (I - W)_{sigma,sigma} x_sigma = b_sigma, by Cramer's rule.
    Matrix a(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) a(r, c) = (r == c ? Rational(1) : Rational(0)) - net.w(idx[r], idx[c]);
    const Rational d = det(a);
    if (d == 0) throw DegenerateError("restricted system for " + subset_name(sigma, n) + " is singular");
    for (std::size_t c = 0; c < k; ++c) {
      Matrix ac = a;
      for (std::size_t r = 0; r < k; ++r) ac(r, c) = net.input(idx[r]);
      fp.coords[static_cast<std::size_t>(idx[c])] = det(ac) / d;
    }
  }

  for (int i : idx) {
    const Rational& x = fp.coords[static_cast<std::size_t>(i)];
    if (x <= 0) fp.failures.push_back("x_" + std::to_string(i + 1) + " = " + to_exact_string(x) + " <= 0");
  }
  for (int j = 0; j < n; ++j) {
    if (contains(sigma, j)) continue;
    const Rational l = l_star(net, j, fp.coords);
    if (l >= 0) fp.failures.push_back("l*_" + std::to_string(j + 1) + " = " + to_exact_string(l) + " >= 0");
  }
  fp.status = fp.failures.empty() ? FixedPoint::Status::Admissible : FixedPoint::Status::Virtual;
  return fp;
}

SupportFamily fp_oracle(const Network& net) {
  require_competitive(net, "fp_oracle");
  std::vector<Subset> out;
  for (Subset sigma = 1; sigma <= full_subset(net.n); ++sigma) {
    const FixedPoint fp = fixed_point_detail(net, sigma);
    // A coordinate or outside functional sitting exactly at zero puts the
    // point on a region boundary.
    for (int i = 0; i < net.n; ++i) {
      const bool on_wall = contains(sigma, i) ? fp.coords[static_cast<std::size_t>(i)] == 0 : l_star(net, i, fp.coords) == 0;
      if (on_wall) throw DegenerateError("x^" + subset_name(sigma, net.n) + " lies on a region boundary");
    }
    if (fp.status == FixedPoint::Status::Admissible) out.push_back(sigma);
  }
  return SupportFamily(net.n, std::move(out));
}

Subset singleton_rule(const Network& net) {
  const Digraph g = graph_of(net);
  Subset out = 0;
  for (int i = 0; i < net.n; ++i)
    if (g.is_sink(i)) out = with(out, i);
  return out;
}

}  // namespace tln
