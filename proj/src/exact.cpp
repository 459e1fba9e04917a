#include "tln/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tln {

char sign_char(Sign s) {
  switch (s) {
    case Sign::Pos: return '+';
    case Sign::Neg: return '-';
    default: return '0';
  }
}

std::ostream& operator<<(std::ostream& os, Sign s) { return os << sign_char(s); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  // Strip surrounding whitespace.
  const auto first = s.find_first_not_of(" \t\r\n");
  const auto last = s.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty number");
  s = s.substr(first, last - first + 1);

  bool negative = false;
  if (s.rfind("\xE2\x88\x92", 0) == 0) {  // U+2212 MINUS SIGN
    negative = true;
    s.erase(0, 3);
  } else if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) throw ParseError("bad number '" + std::string(text) + "'");

  Rational value;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    auto digits = [](const std::string& d) {
      return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!digits(num) || !digits(den)) throw ParseError("bad fraction '" + std::string(text) + "'");
    Integer n(num, 10), d(den, 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(n, d);
    value.canonicalize();
  } else {
    long exponent = 0;
    std::string mantissa = s;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
      mantissa = s.substr(0, e);
      const std::string exp = s.substr(e + 1);
      try {
        std::size_t used = 0;
        exponent = std::stol(exp, &used);
        if (used != exp.size()) throw ParseError("");
      } catch (const std::exception&) {
        throw ParseError("bad exponent in '" + std::string(text) + "'");
      }
      if (std::labs(exponent) > 4000) throw ParseError("exponent out of range in '" + std::string(text) + "'");
    }
    std::string digits;
    long frac_len = 0;
    bool seen_dot = false;
    for (char c : mantissa) {
      if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        if (seen_dot) ++frac_len;
      } else {
        throw ParseError("bad number '" + std::string(text) + "'");
      }
    }
    if (digits.empty()) throw ParseError("bad number '" + std::string(text) + "'");
    Integer n(digits, 10);
    const long shift = exponent - frac_len;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    value = shift >= 0 ? Rational(n * p) : Rational(n, p);
    value.canonicalize();
  }
  if (negative) value = -value;
  return value;
}

std::string to_exact_string(const Rational& q) {
  Integer den = q.get_den();
  int twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
  if (den != 1) return q.get_str();
  const int digits = std::max(twos, fives);
  if (digits == 0) return q.get_num().get_str();
  std::string s = to_decimal(q, digits);
  return s;
}

std::string to_decimal(const Rational& q, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(q) * scale;
  // Round half away from zero.
  Integer num = scaled.get_num() * 2 + scaled.get_den();
  Integer den = scaled.get_den() * 2;
  Integer r = num / den;
  std::string s = r.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) - s.size() + 1, '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sgn(q) < 0 && r != 0) s.insert(0, "-");
  return s;
}

double to_double(const Rational& q) { return q.get_d(); }

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] >= rows_) throw DimensionError("row index out of range");
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(idx[r], c);
  }
  return out;
}

Matrix Matrix::select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  Matrix out(row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r)
    for (std::size_t c = 0; c < col_idx.size(); ++c) {
      if (row_idx[r] >= rows_ || col_idx[c] >= cols_) throw DimensionError("index out of range");
      out(r, c) = (*this)(row_idx[r], col_idx[c]);
    }
  return out;
}

Integer bareiss_det(std::vector<Integer> a, std::size_t k, std::vector<Integer>* trace) {
  if (a.size() != k * k) throw DimensionError("bareiss_det: entry count is not k*k");
  if (k == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  Integer tmp;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (a[p * k + p] == 0) {
      std::size_t r = p + 1;
      while (r < k && a[r * k + p] == 0) ++r;
      if (r == k) return 0;
      for (std::size_t c = 0; c < k; ++c) std::swap(a[p * k + c], a[r * k + c]);
      sign = -sign;
    }
    const Integer& piv = a[p * k + p];
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) {
        tmp = a[i * k + j] * piv - a[i * k + p] * a[p * k + j];
        mpz_divexact(a[i * k + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
        if (trace) trace->push_back(a[i * k + j]);
      }
      a[i * k + p] = 0;
    }
    prev = piv;
  }
  Integer d = a[k * k - 1];
  return sign < 0 ? Integer(-d) : d;
}

using i128 = __int128;

i128 bareiss_det_small(std::vector<i128>& a, std::size_t k) {
  if (k == 0) return 1;
  int sign = 1;
  i128 prev = 1;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (a[p * k + p] == 0) {
      std::size_t r = p + 1;
      while (r < k && a[r * k + p] == 0) ++r;
      if (r == k) return 0;
      for (std::size_t c = 0; c < k; ++c) std::swap(a[p * k + c], a[r * k + c]);
      sign = -sign;
    }
    const i128 piv = a[p * k + p];
    for (std::size_t i = p + 1; i < k; ++i) {
      const i128 lead = a[i * k + p];
      for (std::size_t j = p + 1; j < k; ++j) a[i * k + j] = (a[i * k + j] * piv - lead * a[p * k + j]) / prev;
      a[i * k + p] = 0;
    }
    prev = piv;
  }
  return sign * a[k * k - 1];
}

double log2_hadamard(std::span<const std::int64_t> a, std::size_t k) {
  double total = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    double norm2 = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double d = static_cast<double>(a[r * k + c]);
      norm2 += d * d;
    }
    total += 0.5 * std::log2(std::max(norm2, 1.0));
  }
  return total;
}

namespace {

Integer from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & ~0ULL));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

Rational det_impl(std::span<const std::span<const Rational>> rows) {
  const std::size_t k = rows.size();
  if (k == 0) return 1;
  for (const auto& r : rows)
    if (r.size() != k) throw DimensionError("determinant of a non-square matrix");

  std::vector<Integer> a(k * k);
  Integer denom_product = 1;
  double log2_hadamard = 0.0;
  bool fits = true;
  Integer lcm;
  for (std::size_t r = 0; r < k; ++r) {
    lcm = 1;
    for (const auto& q : rows[r]) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    denom_product *= lcm;
    double norm2 = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const Rational& q = rows[r][c];
      Integer& dst = a[r * k + c];
      mpz_divexact(dst.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
      dst *= q.get_num();
      if (fits) {
        if (mpz_sizeinbase(dst.get_mpz_t(), 2) > 60) {
          fits = false;
        } else {
          const double d = dst.get_d();
          norm2 += d * d;
        }
      }
    }
    if (norm2 == 0.0 && fits) return 0;
    log2_hadamard += 0.5 * std::log2(std::max(norm2, 1.0));
  }
  fits = fits && log2_hadamard < 59.0;

  Integer d;
  if (fits) {
    std::vector<i128> small(k * k);
    for (std::size_t i = 0; i < k * k; ++i) small[i] = a[i].get_si();
    d = from_i128(bareiss_det_small(small, k));
  } else {
    d = bareiss_det(std::move(a), k);
  }
  Rational out(d, denom_product);
  out.canonicalize();
  return out;
}

}  // namespace

Rational det_rows(std::span<const std::span<const Rational>> rows) { return det_impl(rows); }

Rational det(const Matrix& m) {
  if (!m.square()) throw DimensionError("determinant of a non-square matrix");
  std::vector<std::span<const Rational>> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return det_impl(rows);
}

Sign sign_det(const Matrix& m) { return sign_of(det(m)); }

Sign permutation_parity(std::span<const int> perm) {
  const std::size_t k = perm.size();
  std::vector<char> seen(k, 0);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= k || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("permutation_parity: not a permutation of 0..k-1");
    seen[static_cast<std::size_t>(p)] = 1;
  }
  // Parity = (k - number of cycles) mod 2.
  std::fill(seen.begin(), seen.end(), 0);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = 1;
  }
  return (k - cycles) % 2 == 0 ? Sign::Pos : Sign::Neg;
}

}  // namespace tln
