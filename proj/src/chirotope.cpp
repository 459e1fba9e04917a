#include "tln/chirotope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace tln {

std::string element_name(int id, int n) {
  if (id == inf_elem(n)) return "e_inf";
  return std::string(is_h(id, n) ? "h" : "e") + std::to_string(neuron_of(id) + 1);
}

int parse_element(std::string_view text, int n) {
  if (text == "e_inf" || text == "einf") return inf_elem(n);
  if (text.size() < 2 || (text[0] != 'e' && text[0] != 'h')) throw ParseError("bad ground element '" + std::string(text) + "'");
  int i = 0;
  try {
    i = std::stoi(std::string(text.substr(1)));
  } catch (const std::exception&) {
    throw ParseError("bad ground element '" + std::string(text) + "'");
  }
  if (i < 1 || i > n) throw ParseError("ground element out of range '" + std::string(text) + "'");
  return text[0] == 'e' ? e_elem(i - 1) : h_elem(i - 1);
}

GroundSet::GroundSet(const Network& net) : n_(net.n), rows_(static_cast<std::size_t>(2 * net.n + 1), static_cast<std::size_t>(net.n + 1)) {
  const auto n = static_cast<std::size_t>(n_);
  for (std::size_t i = 0; i < n; ++i) {
    rows_(2 * i, i) = 1;
    for (std::size_t j = 0; j < n; ++j) rows_(2 * i + 1, j) = i == j ? Rational(-1) : net.W(i, j);
    rows_(2 * i + 1, n) = net.b[i];
  }
  rows_(2 * n, n) = 1;

  // Row i times the lcm of its denominators: same signs, integer entries.
  const std::size_t cols = n + 1;
  std::vector<std::int64_t> scaled(rows_.rows() * cols);
  std::vector<double> norms;
  Integer lcm, v;
  for (std::size_t r = 0; r < rows_.rows(); ++r) {
    lcm = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), rows_(r, c).get_den_mpz_t());
    double norm2 = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      mpz_divexact(v.get_mpz_t(), lcm.get_mpz_t(), rows_(r, c).get_den_mpz_t());
      v *= rows_(r, c).get_num();
      if (mpz_sizeinbase(v.get_mpz_t(), 2) > 40) return;
      scaled[r * cols + c] = v.get_si();
      norm2 += v.get_d() * v.get_d();
    }
    norms.push_back(0.5 * std::log2(std::max(norm2, 1.0)));
  }
  std::sort(norms.rbegin(), norms.rend());
  double worst = 0.0;
  for (std::size_t i = 0; i < cols; ++i) worst += norms[i];
  if (worst < 58.0) scaled_ = std::move(scaled);
}

Sign GroundSet::sign(std::span<const int> ids) const {
  if (scaled_.empty()) return sign_of(det(ids));
  const std::size_t k = ids.size();
  if (k != static_cast<std::size_t>(n_ + 1)) throw DimensionError("need n+1 ground elements");
  std::vector<__int128> a(k * k);
  for (std::size_t r = 0; r < k; ++r) {
    const int id = ids[r];
    if (id < 0 || static_cast<std::size_t>(id) >= size()) throw IndexError("ground element out of range");
    for (std::size_t c = 0; c < k; ++c) a[r * k + c] = scaled_[static_cast<std::size_t>(id) * k + c];
  }
  const __int128 d = bareiss_det_small(a, k);
  return d > 0 ? Sign::Pos : (d < 0 ? Sign::Neg : Sign::Zero);
}

Rational GroundSet::det(std::span<const int> ids) const {
  if (ids.size() != static_cast<std::size_t>(n_ + 1)) throw DimensionError("need n+1 ground elements");
  std::vector<std::span<const Rational>> rows;
  rows.reserve(ids.size());
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= size()) throw IndexError("ground element out of range");
    rows.push_back(vec(id));
  }
  return det_rows(rows);
}

GroundSet arrangement_matrix(const Network& net) { return GroundSet(net); }

BasisTable::BasisTable(int n) : n_(n), ground_(static_cast<std::size_t>(2 * n + 1)) {
  if (n < 1 || 2 * n + 1 > 63) throw UnsupportedError("basis table supports 1 <= n <= 31");
  binom_.assign(ground_ + 1, std::vector<std::size_t>(ground_ + 1, 0));
  for (std::size_t a = 0; a <= ground_; ++a) {
    binom_[a][0] = 1;
    for (std::size_t b = 1; b <= a; ++b) binom_[a][b] = binom_[a - 1][b - 1] + (b <= a - 1 ? binom_[a - 1][b] : 0);
  }
  const auto k = static_cast<std::size_t>(n + 1);
  std::vector<int> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<int>(i);
  while (true) {
    std::uint64_t m = 0;
    for (int id : c) m |= std::uint64_t{1} << id;
    masks_.push_back(m);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == static_cast<int>(ground_ - k + i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

const BasisTable& BasisTable::get(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<BasisTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot.reset(new BasisTable(n));
  return *slot;
}

std::vector<int> BasisTable::elements(std::size_t idx) const {
  std::vector<int> out;
  std::uint64_t m = masks_.at(idx);
  for (int id = 0; m != 0; ++id, m >>= 1)
    if (m & 1U) out.push_back(id);
  return out;
}

std::size_t BasisTable::rank(std::span<const int> sorted) const {
  const std::size_t k = sorted.size();
  std::size_t r = 0;
  int prev = -1;
  for (std::size_t i = 0; i < k; ++i) {
    for (int v = prev + 1; v < sorted[i]; ++v) r += binom_[ground_ - 1 - static_cast<std::size_t>(v)][k - 1 - i];
    prev = sorted[i];
  }
  return r;
}

std::size_t BasisTable::rank_mask(std::uint64_t mask) const {
  std::vector<int> ids;
  for (int id = 0; mask != 0; ++id, mask >>= 1)
    if (mask & 1U) ids.push_back(id);
  if (ids.size() != static_cast<std::size_t>(n_ + 1)) throw DimensionError("basis mask must have n+1 elements");
  return rank(ids);
}

std::string BasisTable::name(std::size_t idx) const {
  std::string out;
  for (int id : elements(idx)) {
    if (!out.empty()) out += ' ';
    out += element_name(id, n_);
  }
  return out;
}

Sign sort_with_parity(std::vector<int>& ids) {
  // Insertion sort, counting transpositions.
  bool odd = false;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    for (std::size_t j = i; j > 0 && ids[j - 1] >= ids[j]; --j) {
      if (ids[j - 1] == ids[j]) return Sign::Zero;
      std::swap(ids[j - 1], ids[j]);
      odd = !odd;
    }
  }
  for (std::size_t i = 1; i < ids.size(); ++i)
    if (ids[i - 1] == ids[i]) return Sign::Zero;
  return odd ? Sign::Neg : Sign::Pos;
}

namespace {
constexpr std::int8_t kUnknown = 2;
constexpr int kEagerLimit = 5;
}  // namespace

Chirotope::Chirotope(int n, std::vector<std::int8_t> signs, std::shared_ptr<Lazy> lazy)
    : n_(n), table_(&BasisTable::get(n)), signs_(std::move(signs)), lazy_(std::move(lazy)) {}

Chirotope Chirotope::of(const Network& net) {
  const BasisTable& table = BasisTable::get(net.n);
  if (net.n > kEagerLimit) {
    auto lazy = std::make_shared<Lazy>(GroundSet(net));
    return Chirotope(net.n, std::vector<std::int8_t>(table.size(), kUnknown), std::move(lazy));
  }
  const GroundSet ground(net);
  std::vector<std::int8_t> signs(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) signs[i] = static_cast<std::int8_t>(ground.sign(table.elements(i)));
  return Chirotope(net.n, std::move(signs), nullptr);
}

Chirotope Chirotope::from_signs(int n, std::vector<Sign> base_signs) {
  const BasisTable& table = BasisTable::get(n);
  if (base_signs.size() != table.size()) throw DimensionError("chirotope: wrong number of base signs");
  std::vector<std::int8_t> s(base_signs.size());
  std::transform(base_signs.begin(), base_signs.end(), s.begin(), [](Sign v) { return static_cast<std::int8_t>(v); });
  return Chirotope(n, std::move(s), nullptr);
}

Sign Chirotope::base(std::size_t idx) const {
  if (!lazy_) return static_cast<Sign>(signs_.at(idx));
  std::lock_guard lock(lazy_->mu);
  std::int8_t& slot = signs_.at(idx);
  if (slot == kUnknown) slot = static_cast<std::int8_t>(lazy_->ground.sign(table_->elements(idx)));
  return static_cast<Sign>(slot);
}

Sign Chirotope::operator()(std::span<const int> ordered) const {
  if (ordered.size() != static_cast<std::size_t>(n_ + 1)) throw DimensionError("chirotope takes n+1 elements");
  std::vector<int> ids(ordered.begin(), ordered.end());
  const Sign parity = sort_with_parity(ids);
  if (parity == Sign::Zero) return Sign::Zero;
  return parity * base(table_->rank(ids));
}

bool Chirotope::simplicial() const {
  for (std::size_t i = 0; i < basis_count(); ++i)
    if (base(i) == Sign::Zero) return false;
  return true;
}

std::vector<Sign> Chirotope::signs() const {
  std::vector<Sign> out(basis_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = base(i);
  return out;
}

Chirotope Chirotope::flipped(std::size_t idx) const {
  auto s = signs();
  s.at(idx) = -s[idx];
  return from_signs(n_, std::move(s));
}

std::string Chirotope::key() const {
  std::string out(basis_count(), '0');
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sign_char(base(i));
  return out;
}

std::vector<int> a_sigma(Subset sigma, int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = contains(sigma, i) ? h_elem(i) : e_elem(i);
  return out;
}

int s_element(Subset sigma, int i, int n) {
  if (i == kInfinity) return inf_elem(n);
  if (i < 0 || i >= n) throw IndexError("s-determinant index out of range");
  return contains(sigma, i) ? e_elem(i) : h_elem(i);
}

SDeterminant s_determinant(const GroundSet& ground, Subset sigma, int i) {
  auto ids = a_sigma(sigma, ground.n());
  ids.push_back(s_element(sigma, i, ground.n()));
  return {sigma, i, ground.det(ids)};
}

SDeterminant s_determinant(const Network& net, Subset sigma, int i) { return s_determinant(GroundSet(net), sigma, i); }

Sign s_sign(const Chirotope& chi, Subset sigma, int i) {
  auto ids = a_sigma(sigma, chi.n());
  ids.push_back(s_element(sigma, i, chi.n()));
  return chi(ids);
}

std::string Cocircuit::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (i) out += ',';
    out += sign_char(signs[i]);
  }
  return out + ")";
}

Cocircuit cocircuit(const Chirotope& chi, Subset sigma) {
  const int n = chi.n();
  auto tuple = a_sigma(sigma, n);
  tuple.push_back(inf_elem(n));
  const Sign at_inf = chi(tuple);
  if (at_inf == Sign::Zero)
    throw DegenerateError("no unique vertex x^" + subset_name(sigma, n) + ": (a^sigma, e_inf) is not a basis");
  Cocircuit c{sigma, std::vector<Sign>(static_cast<std::size_t>(2 * n))};
  for (int i = 0; i < n; ++i) {
    tuple.back() = e_elem(i);
    c.signs[static_cast<std::size_t>(2 * i)] = chi(tuple) * at_inf;
    tuple.back() = h_elem(i);
    c.signs[static_cast<std::size_t>(2 * i + 1)] = chi(tuple) * at_inf;
  }
  return c;
}

std::string AxisReport::to_string() const {
  std::ostringstream os;
  for (const auto& e : entries)
    os << e.description << ": " << sign_char(e.sign) << "  (" << e.quantity << " = " << to_exact_string(e.value) << ")\n";
  return os.str();
}

AxisReport axis_signs(const Network& net) {
  AxisReport rep;
  const auto idx = [](int i) { return std::to_string(i + 1); };
  for (int i = 0; i < net.n; ++i) {
    rep.entries.push_back({"x" + idx(i) + "-axis: H" + idx(i) + " vs E" + idx(i), "b" + idx(i), net.input(i), sign_of(net.input(i))});
    for (int j = 0; j < net.n; ++j) {
      if (j == i) continue;
      const Rational s = s_pair(net, i, j);
      rep.entries.push_back({"x" + idx(i) + "-axis: H" + idx(i) + " vs H" + idx(j),
                             "s^{" + idx(i) + idx(j) + "}_" + idx(j), s, sign_of(s)});
    }
  }
  // H_i on the x_j-axis against H_k.
  for (int j = 0; j < net.n; ++j)
    for (int i = 0; i < net.n; ++i)
      for (int k = 0; k < net.n; ++k) {
        if (i == j || j == k || i == k) continue;
        const Rational d = delta(net, k, i, j);
        rep.entries.push_back({"x" + idx(j) + "-axis: H" + idx(i) + " vs H" + idx(k),
                               "Delta^{" + idx(k) + idx(i) + "}_" + idx(j), d, sign_of(d)});
      }
  return rep;
}

}  // namespace tln
